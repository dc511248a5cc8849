#include "wienerwave/quadrature.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "wienerwave/errors.hpp"

namespace ww {

namespace {

GaussRule build_gauss(std::size_t n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(std::size_t n) {
  static std::array<GaussRule, 65> cache;
  static std::array<std::once_flag, 65> flags;
  if (n == 0 || n > 64) throw DomainError("gauss_legendre: order must be in 1..64");
  std::call_once(flags[n], [n] { cache[n] = build_gauss(n); });
  return cache[n];
}

const KronrodRule& gauss_kronrod21() {
  static const KronrodRule rule = [] {
    using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
    const auto& x = GK::abscissa();
    const auto& wk = GK::weights();
    // Boost stores the nonnegative half; odd positions are Gauss nodes.
    KronrodRule r;
    const std::size_t m = x.size();
    for (std::size_t i = m; i-- > 1;) {
      r.nodes.push_back(-x[i]);
      r.kronrod_weights.push_back(wk[i]);
    }
    for (std::size_t i = 0; i < m; ++i) {
      r.nodes.push_back(x[i]);
      r.kronrod_weights.push_back(wk[i]);
    }
    const GaussRule& g = gauss_legendre(10);
    r.gauss_weights.assign(r.nodes.size(), 0.0);
    for (std::size_t i = 0; i < r.nodes.size(); ++i)
      for (std::size_t j = 0; j < g.nodes.size(); ++j)
        if (std::abs(r.nodes[i] - g.nodes[j]) < 1e-12) r.gauss_weights[i] = g.weights[j];
    return r;
  }();
  return rule;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("fit_line: need at least two paired points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0.0) throw DomainError("fit_line: abscissae are all equal");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (f.slope * x[i] + f.intercept);
    ss += e * e;
  }
  f.residual_rms = std::sqrt(ss / n);
  return f;
}

std::vector<double> log_space(double a, double b, std::size_t n) {
  if (!(a > 0.0) || !(b > 0.0) || n == 0) throw DomainError("log_space: endpoints must be positive");
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = a;
    return out;
  }
  const double la = std::log(a), lb = std::log(b);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = std::exp(la + (lb - la) * static_cast<double>(i) / static_cast<double>(n - 1));
  out.front() = a;
  out.back() = b;
  return out;
}

}  // namespace ww
