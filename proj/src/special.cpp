#include "wienerwave/special.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/tools/minima.hpp>

#include "wienerwave/errors.hpp"
#include "wienerwave/quadrature.hpp"

namespace ww {

namespace {

constexpr double pi = std::numbers::pi;

double series(double nu, double m) {
  const long double x = static_cast<long double>(m) / 2.0L;
  const long double x2 = x * x;
  long double term = std::exp(static_cast<long double>(nu) * std::log(x) - std::lgamma(static_cast<long double>(nu) + 1.0L));
  long double sum = term;
  long double biggest = std::fabs(term);
  for (int k = 1; k < 500; ++k) {
    term *= -x2 / (static_cast<long double>(k) * (static_cast<long double>(k) + nu));
    sum += term;
    biggest = std::max(biggest, std::fabs(term));
    if (static_cast<long double>(k) > x && std::fabs(term) < 1e-22L * biggest) break;
  }
  return static_cast<double>(sum);
}

double hankel(double nu, double m) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double prev = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (static_cast<double>(k) * 8.0 * m);
    if (term == 0.0) break;
    if (std::abs(term) > std::abs(prev)) break;
    const double signed_term = ((k / 2) % 2 == 0) ? term : -term;
    if (k % 2 == 1) {
      q += signed_term;
    } else {
      p += signed_term;
    }
    if (std::abs(term) < 1e-17) break;
    prev = term;
  }
  const double chi = m - (nu / 2.0 + 0.25) * pi;
  return std::sqrt(2.0 / (pi * m)) * (p * std::cos(chi) - q * std::sin(chi));
}

double spherical(int l, double m) {
  const double s = std::sin(m);
  const double c = std::cos(m);
  double j0 = s / m;
  if (l == 0) return std::sqrt(2.0 * m / pi) * j0;
  double j1 = s / (m * m) - c / m;
  for (int k = 1; k < l; ++k) {
    const double j2 = (2.0 * k + 1.0) / m * j1 - j0;
    j0 = j1;
    j1 = j2;
  }
  return std::sqrt(2.0 * m / pi) * j1;
}

}  // namespace

BesselOrder::BesselOrder(double nu) : nu_(nu) {
  if (!(nu >= 0.0) || !std::isfinite(nu)) throw DomainError("BesselOrder: nu must be a finite nonnegative real");
  integer_or_half_ = std::floor(2.0 * nu) == 2.0 * nu;
  half_odd_ = integer_or_half_ && std::floor(nu) != nu;
}

double bessel_j(const BesselOrder& order, double m) {
  if (!(m > 0.0) || !std::isfinite(m)) throw DomainError("bessel_j: argument must be positive");
  const double nu = order.nu();
  if (order.is_half_odd()) {
    const int l = static_cast<int>(nu - 0.5);
    if (m >= std::max(1.0, static_cast<double>(l))) return spherical(l, m);
  }
  if (m <= series_crossover) return series(nu, m);
  return hankel(nu, m);
}

double bessel_leading(const BesselOrder& order, double m) {
  if (!(m > 1.0)) throw DomainError("bessel_leading: argument must exceed 1");
  return std::sqrt(2.0 / (pi * m)) * std::cos(m - pi * order.nu() / 2.0 - pi / 4.0);
}

double bessel_remainder(const BesselOrder& order, double m) {
  if (!(m > 1.0)) throw DomainError("bessel_remainder: argument must exceed 1");
  return bessel_j(order, m) - bessel_leading(order, m);
}

RemainderEnvelope remainder_envelope(const BesselOrder& order, double m_min, double m_max, std::size_t count) {
  if (!(m_min > 1.0) || !(m_max > m_min) || count < 2) throw DomainError("remainder_envelope: need 1 < m_min < m_max");
  RemainderEnvelope env;
  const auto anchors = log_space(m_min, m_max, count);
  constexpr int samples = 64;
  auto neg_abs = [&](double m) { return -std::abs(bessel_remainder(order, m)); };
  for (double a : anchors) {
    const double step = pi / samples;
    int best = 0;
    double best_val = 0.0;
    for (int i = 0; i <= samples; ++i) {
      const double v = -neg_abs(a + i * step);
      if (v > best_val) best_val = v, best = i;
    }
    const double lo = a + std::max(0, best - 1) * step;
    const double hi = a + std::min(samples, best + 1) * step;
    const auto [x, fx] = boost::math::tools::brent_find_minima(neg_abs, lo, hi, 40);
    env.m.push_back(-fx > best_val ? x : a + best * step);
    env.peak.push_back(std::max(-fx, best_val));
  }
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < env.m.size(); ++i) {
    lx.push_back(std::log(env.m[i]));
    ly.push_back(std::log(env.peak[i]));
  }
  env.slope = fit_line(lx, ly).slope;
  return env;
}

}  // namespace ww
