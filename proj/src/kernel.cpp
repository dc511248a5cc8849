#include "wienerwave/kernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "wienerwave/errors.hpp"
#include "wienerwave/parallel.hpp"
#include "wienerwave/quadrature.hpp"

namespace ww {

namespace {

constexpr double pi = std::numbers::pi;
constexpr complex I{0.0, 1.0};

// Absolute tolerance on the kernel value for the panel quadrature.
constexpr double kQuadTol = 1e-12;
// |z| W at the start of the asymptotic tail.
constexpr double kTailReach = 40.0;
constexpr std::size_t kPanelBudget = 400000;
constexpr int kMaxDepth = 30;
constexpr int kLevels = 12;

// int_0^{w0} e^{z+ w} - e^{z- w} over 2i times w^a, with z+ - z- = 2ir,
// summed from the power series of the exponentials (|z| w0 <= 1/2).
complex head(complex zp, complex zm, double r, double a, double w0) {
  complex sum{0.0, 0.0};
  // D_j = (z+^j - z-^j) / (2i) built without cancellation.
  std::array<complex, 48> pp{}, pm{};
  pp[0] = pm[0] = 1.0;
  for (int j = 1; j < 48; ++j) {
    pp[j] = pp[j - 1] * zp;
    pm[j] = pm[j - 1] * zm;
  }
  double fact = 1.0;
  double wpow = std::pow(w0, a + 1.0);
  for (int j = 1; j < 48; ++j) {
    fact *= j;
    wpow *= w0;
    complex s{0.0, 0.0};
    for (int k = 0; k < j; ++k) s += pp[k] * pm[j - 1 - k];
    const complex dj = r * s;  // (2ir) * s / (2i)
    const complex term = dj / fact * wpow / (a + j + 1.0);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum) && j > 2) break;
  }
  return sum;
}

// int_W^inf e^{zw} w^a dw for Re z <= 0 and |z| W large.
complex tail(complex z, double a, double W) {
  const complex zw = z * W;
  complex c{1.0, 0.0};
  complex sum = c;
  double prev = 1.0;
  for (int k = 1; k < 200; ++k) {
    c *= -(a - k + 1.0) / zw;
    const double mag = std::abs(c);
    if (mag > prev) break;
    sum += c;
    if (mag < 1e-18) break;
    prev = mag;
  }
  return -std::exp(zw) * std::pow(W, a) / z * sum;
}

struct PanelIntegrator {
  double t, r, a;
  std::span<const double> eps;
  std::vector<complex> acc;
  double tol_density;
  std::size_t panels = 0;

  void integrate(double lo, double hi, int depth) {
    if (++panels > kPanelBudget) throw ConvergenceError("kernel_damped: panel budget exhausted");
    const KronrodRule& gk = gauss_kronrod21();
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    const std::size_t L = eps.size();
    std::array<complex, kLevels + 4> kr{}, gs{};
    for (std::size_t i = 0; i < gk.nodes.size(); ++i) {
      const double w = c + h * gk.nodes[i];
      const complex base = std::pow(w, a) * std::sin(r * w) * std::polar(1.0, t * w);
      for (std::size_t l = 0; l < L; ++l) {
        const complex f = base * std::exp(-eps[l] * w);
        kr[l] += gk.kronrod_weights[i] * f;
        gs[l] += gk.gauss_weights[i] * f;
      }
    }
    double err = 0.0;
    for (std::size_t l = 0; l < L; ++l) err = std::max(err, std::abs(kr[l] - gs[l]) * h);
    if (err > tol_density * (hi - lo) && depth < kMaxDepth) {
      integrate(lo, c, depth + 1);
      integrate(c, hi, depth + 1);
      return;
    }
    for (std::size_t l = 0; l < L; ++l) acc[l] += kr[l] * h;
  }
};

}  // namespace

void validate(const KernelQuery& q) {
  if (q.n < 2) throw DomainError("kernel query: n must be at least 2");
  if (!(q.gamma > 0.0) || !(q.gamma < q.n)) throw DomainError("kernel query: gamma must lie in (0, n)");
  if (!(q.radius > 0.0) || !std::isfinite(q.radius) || !std::isfinite(q.time))
    throw DomainError("kernel query: radius must be positive and time finite");
}

double cone_band_width(double radius) { return 0.05 * std::max(1.0, radius); }

bool in_cone_band(double radius, double time) { return std::abs(radius - std::abs(time)) < cone_band_width(radius); }

std::vector<complex> kernel_damped_levels(const KernelQuery& q, std::span<const double> epsilons) {
  validate(q);
  if (q.n != 3) throw DomainError("kernel_damped: only n = 3 is evaluated");
  if (epsilons.empty() || epsilons.size() > static_cast<std::size_t>(kLevels + 4))
    throw DomainError("kernel_damped: between 1 and 16 damping levels");
  for (double e : epsilons)
    if (!(e > 0.0) || !std::isfinite(e)) throw DomainError("kernel_damped: epsilon must be positive");

  const double r = q.radius, t = q.time, a = 1.0 - q.gamma;
  const double ap = t + r, am = t - r;
  const double eps_min = *std::min_element(epsilons.begin(), epsilons.end());
  const double eps_max = *std::max_element(epsilons.begin(), epsilons.end());
  const double z_small = std::min(std::hypot(eps_min, ap), std::hypot(eps_min, am));
  const double z_large = std::max(std::hypot(eps_max, ap), std::hypot(eps_max, am));

  const double period = 2.0 * pi / std::max(std::abs(t) + r, 1.0);
  const double w0 = std::min(period, 0.5 / z_large);
  const double needed = std::max(kTailReach / z_small, 2.0 * period);
  const double count = std::ceil(needed / period);
  if (count > static_cast<double>(kPanelBudget)) throw ConvergenceError("kernel_damped: cutoff needs too many panels");
  const double W = count * period;

  const double scale = 1.0 / (2.0 * pi * pi * r);
  PanelIntegrator pi_{t, r, a, epsilons, std::vector<complex>(epsilons.size()), kQuadTol / scale / (W - w0)};
  pi_.integrate(w0, period, 0);
  for (double k = 1.0; k < count; k += 1.0) pi_.integrate(k * period, (k + 1.0) * period, 0);

  std::vector<complex> out(epsilons.size());
  for (std::size_t l = 0; l < epsilons.size(); ++l) {
    const complex zp{-epsilons[l], ap};
    const complex zm{-epsilons[l], am};
    const complex h = head(zp, zm, r, a, w0);
    const complex tl = (tail(zp, a, W) - tail(zm, a, W)) / (2.0 * I);
    out[l] = scale * (h + pi_.acc[l] + tl);
  }
  return out;
}

complex kernel_damped(const KernelQuery& q, double epsilon) {
  const double e[1] = {epsilon};
  return kernel_damped_levels(q, e)[0];
}

KernelValue kernel_eval(const KernelQuery& q) {
  validate(q);
  if (q.n != 3) throw DomainError("kernel_eval: only n = 3 is evaluated");
  const double r = q.radius, t = q.time;
  if (in_cone_band(r, t)) {
    if (q.gamma < 2.0) throw ConeBandError("kernel_eval: query inside the cone band");
    if (q.gamma == 2.0) throw ConeBandError("kernel_eval: cone band at gamma = 2");
    return {kernel_closed_form_n3(q.gamma, r, t), 0.0, KernelMethod::closed_form_n3};
  }
  const double rho = std::min(std::abs(t - r), std::abs(t + r));
  std::array<double, kLevels> eps{};
  eps[0] = rho / 4.0;
  for (int j = 1; j < kLevels; ++j) eps[j] = eps[j - 1] / 2.0;
  const auto f = kernel_damped_levels(q, eps);

  // Richardson table in integer powers of eps with ratio 2.
  std::array<std::array<complex, kLevels>, kLevels> T{};
  for (int j = 0; j < kLevels; ++j) {
    T[j][0] = f[j];
    double p = 1.0;
    for (int k = 1; k <= j; ++k) {
      p *= 2.0;
      T[j][k] = T[j][k - 1] + (T[j][k - 1] - T[j - 1][k - 1]) / (p - 1.0);
    }
  }
  int best = -1;
  double best_diff = std::numeric_limits<double>::infinity();
  for (int j = 2; j < kLevels; ++j) {
    const double d = std::abs(T[j][j] - T[j - 1][j - 1]);
    if (d < best_diff) best_diff = d, best = j;
  }
  const complex v = T[best][best];
  if (!(best_diff <= 1e-8 * std::abs(v) || best_diff <= 1e-14))
    throw ConvergenceError("kernel_eval: extrapolation stalled (difference " + std::to_string(best_diff) + ")");
  return {v, best_diff, KernelMethod::damped_extrapolated};
}

complex kernel_closed_form_n3(double gamma, double radius, double time) {
  if (!(gamma > 0.0 && gamma < 3.0) || gamma == 2.0)
    throw DomainError("kernel_closed_form_n3: gamma must lie in (0, 3) and differ from 2");
  if (!(radius >= 0.0) || !std::isfinite(radius) || !std::isfinite(time))
    throw DomainError("kernel_closed_form_n3: radius must be nonnegative");
  const double s = 2.0 - gamma;
  if (radius == 0.0) {
    if (time == 0.0) throw DomainError("kernel_closed_form_n3: origin at t = 0 is singular");
    const double sg = time > 0 ? 1.0 : -1.0;
    return std::tgamma(s + 1.0) * std::polar(std::pow(std::abs(time), -(s + 1.0)), sg * pi * (s + 1.0) / 2.0) /
           (2.0 * pi * pi);
  }
  if (std::abs(time) == radius) throw DomainError("kernel_closed_form_n3: light cone");
  const double scale = std::tgamma(s) / (2.0 * pi * pi * radius) / 2.0;
  const double ap = time + radius, am = time - radius;
  complex bracket;
  if (radius < std::abs(time)) {
    // Same phase on both terms; difference of powers through expm1.
    const double sg = time > 0 ? 1.0 : -1.0;
    const double log_ratio = sg * 2.0 * std::atanh(radius / std::abs(time));  // ln|A+| - ln|A-|
    const double diff = std::pow(std::abs(am), -s) * std::expm1(-s * log_ratio);
    bracket = std::polar(1.0, sg * s * pi / 2.0) * diff;
  } else {
    auto term = [s](double A) {
      const double sg = A > 0 ? 1.0 : -1.0;
      return std::polar(std::pow(std::abs(A), -s), sg * s * pi / 2.0);
    };
    bracket = term(ap) - term(am);
  }
  return scale * bracket / I;
}

double pointwise_bound(const KernelQuery& q) {
  validate(q);
  const double n = q.n, g = q.gamma;
  bool ok = false;
  if (q.n == 2) ok = g > 0.5 && g < 1.0;
  if (q.n == 3) ok = g > 1.0 && g < 2.0;
  if (q.n >= 4) ok = (g > (n - 1) / 2 && g < (n + 1) / 2) || (g > (n + 1) / 2 && g < n - 1);
  if (!ok) throw DomainError("pointwise_bound: gamma outside the range of the estimate");
  const double x = q.radius, t = std::abs(q.time);
  if (x <= t / 2.0) return std::pow(t, -1.0) * std::pow(x, -(n - 1.0 - g));
  if (g < (n + 1) / 2) {
    const double gap = std::abs(x - t);
    if (gap == 0.0) return std::numeric_limits<double>::infinity();
    return std::pow(x, -(n - 1.0) / 2.0) * std::pow(gap, -((n + 1.0) / 2.0 - g));
  }
  return std::pow(x, -(n - g));
}

PointwiseReport verify_pointwise(int n, double gamma, std::span<const std::pair<double, double>> grid) {
  if (n != 3) throw DomainError("verify_pointwise: only n = 3 is evaluated");
  if (grid.empty()) throw DomainError("verify_pointwise: empty grid");
  const auto ratios = parallel_map(grid.size(), [&](std::size_t i) {
    const KernelQuery q{3, gamma, grid[i].first, grid[i].second};
    return std::abs(kernel_eval(q).value) / pointwise_bound(q);
  });
  PointwiseReport rep;
  rep.grid_size = grid.size();
  for (std::size_t i = 0; i < ratios.size(); ++i)
    if (ratios[i] > rep.max_ratio || i == 0) rep.max_ratio = ratios[i], rep.argmax = grid[i];
  return rep;
}

}  // namespace ww
