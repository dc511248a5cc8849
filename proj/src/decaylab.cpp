#include "wienerwave/decaylab.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "wienerwave/errors.hpp"
#include "wienerwave/kernel.hpp"
#include "wienerwave/parallel.hpp"
#include "wienerwave/quadrature.hpp"

namespace ww {

namespace {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void check_time_grid(const std::vector<double>& t) {
  if (t.empty()) throw DomainError("decaylab: empty t grid");
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(t[i] > 0.0) || !std::isfinite(t[i])) throw DomainError("decaylab: t grid must be positive");
    if (i > 0 && !(t[i] > t[i - 1])) throw DomainError("decaylab: t grid must be strictly increasing");
  }
}

DecayFit log_log_fit(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx(x.size()), ly(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(y[i] > 0.0)) throw DomainError("decaylab: cannot fit a non-positive value in log coordinates");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  const LineFit lf = fit_line(lx, ly);
  DecayFit f;
  f.slope = lf.slope;
  f.intercept = lf.intercept;
  f.residual_rms = lf.residual_rms;
  f.fit_range = {x.front(), x.back()};
  f.points = static_cast<int>(x.size());
  return f;
}

// Cubic Lagrange interpolation on the four nearest radii; zero past the
// last sample.
double interpolate_real(const RadialProfile& p, double r) {
  const auto& x = p.radii;
  const std::size_t n = x.size();
  if (r > x.back()) return 0.0;
  if (n < 4) throw DomainError("decaylab: datum needs at least four samples");
  const std::size_t hi = static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), r) - x.begin());
  std::size_t lo = hi >= 2 ? hi - 2 : 0;
  lo = std::min(lo, n - 4);
  double s = 0.0;
  for (std::size_t i = lo; i < lo + 4; ++i) {
    double w = 1.0;
    for (std::size_t j = lo; j < lo + 4; ++j)
      if (j != i) w *= (r - x[j]) / (x[i] - x[j]);
    s += w * p.values[i].real();
  }
  return s;
}

double quotient_one(const Rational& sigma, const ExponentTuple& tuple, const RadialProfile& datum, double lambda,
                    const QuotientBox& box) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("strichartz_quotient: dilation must be positive");
  const RadialProfile f = sample_profile(box.evolution, [&](double r) { return interpolate_real(datum, lambda * r); });
  const double sob = sobolev_norm(f, sigma.to_double());
  if (!(sob > 0.0)) throw DomainError("strichartz_quotient: zero datum");

  std::size_t keep = 0;
  while (keep < f.radii.size() && f.radii[keep] <= box.radius) ++keep;
  if (box.time_samples < 2) throw DomainError("strichartz_quotient: need two time samples");
  const double dt = box.time / static_cast<double>(box.time_samples - 1);

  SampledSignal h;
  h.grid_start = 0.0;
  h.grid_step = dt;
  h.samples.reserve(box.time_samples);
  for (std::size_t m = 0; m < box.time_samples; ++m) {
    RadialProfile u = half_wave(f, dt * static_cast<double>(m));
    u.radii.resize(keep);
    u.values.resize(keep);
    h.samples.push_back(amalgam_norm_radial(u, tuple.r_tilde, tuple.r));
  }
  return amalgam_norm_1d(h, tuple.q_tilde, tuple.q) / sob;
}

void check_quotient_tuple(const Rational& sigma, const ExponentTuple& tuple) {
  ExponentTuple t = tuple;
  t.sigma = sigma;
  if (!thm1_admissible(t) && !corollary_admissible(sigma, t))
    throw AdmissibilityError("strichartz_quotient: tuple is not admissible");
}

}  // namespace

std::string to_string(Estimator e) { return e == Estimator::direct ? "direct" : "surrogate"; }
std::string to_string(DecayRegime r) { return r == DecayRegime::small_t ? "small" : "large"; }

std::vector<double> regime_grid(DecayRegime regime) {
  return regime == DecayRegime::small_t ? log_space(1.0 / 64.0, 0.5, 12) : log_space(4.0, 64.0, 12);
}

RadialProfile kernel_radial_profile(const Rational& gamma, double t, double t_max, const ProfileResolution& res,
                                    KernelSource source) {
  if (!(t > 0.0) || !(t_max >= t)) throw DomainError("kernel_radial_profile: need 0 < t <= t_max");
  if (res.uniform_points < 2 || res.cone_levels < 1 || !(res.far_ratio > 1.0))
    throw DomainError("kernel_radial_profile: bad resolution");
  const double r_max = t_max + res.margin;
  const double d_min = std::ldexp(t, -res.cone_levels);

  std::vector<double> radii;
  for (std::size_t i = 0; i < res.uniform_points; ++i) {
    const double s = r_max * static_cast<double>(i) / static_cast<double>(res.uniform_points - 1);
    if (std::abs(s - t) >= 2.0 * d_min) radii.push_back(s);
  }
  for (int k = 1; k <= res.cone_levels; ++k) {
    radii.push_back(t - std::ldexp(t, -k));
    radii.push_back(t + std::ldexp(t, -k));
  }
  for (double s = r_max * res.far_ratio; s <= res.far_radius; s *= res.far_ratio) radii.push_back(s);
  std::sort(radii.begin(), radii.end());
  std::vector<double> uniq;
  for (double s : radii)
    if (uniq.empty() || s - uniq.back() > 1e-13 * std::max(1.0, s)) uniq.push_back(s);

  const double g = gamma.to_double();
  RadialProfile p;
  p.radii = uniq;
  p.singular_radius = t;
  p.values = parallel_map(uniq.size(), [&](std::size_t i) -> std::complex<double> {
    const double s = uniq[i];
    if (s == 0.0 || source == KernelSource::closed_form || in_cone_band(s, t))
      return kernel_closed_form_n3(g, s, t);
    return kernel_eval(KernelQuery{3, g, s, t}).value;
  });
  return p;
}

double profile_norm(const RadialProfile& profile, const Rational& inner, const Rational& outer, Estimator estimator,
                    const Window& window) {
  if (estimator == Estimator::direct) return amalgam_norm_radial(profile, inner, outer, window);
  return amalgam_surrogate_radial(profile, inner, outer);
}

std::vector<TimeNormTable> kernel_time_profiles(const ExperimentConfig& config,
                                                const std::vector<Estimator>& estimators) {
  validate(config.tuple);
  if (config.tuple.n != 3) throw DomainError("kernel_time_profile: only n = 3 is supported");
  check_time_grid(config.t_grid);
  if (!propfix_admissible(3, config.gamma, config.tuple.r, config.tuple.r_tilde))
    throw AdmissibilityError("kernel_time_profile: (gamma, r, r_tilde) not admissible");
  const Rational inner = config.tuple.r_tilde / Rational(2), outer = config.tuple.r / Rational(2);

  std::vector<TimeNormTable> out(estimators.size());
  const double t_max = config.t_grid.back();
  for (double t : config.t_grid) {
    const RadialProfile p = kernel_radial_profile(config.gamma, t, t_max, config.resolution, config.source);
    for (std::size_t e = 0; e < estimators.size(); ++e)
      out[e].push_back({t, profile_norm(p, inner, outer, estimators[e], config.window)});
  }
  return out;
}

TimeNormTable kernel_time_profile(const ExperimentConfig& config) {
  return kernel_time_profiles(config, {config.estimator}).front();
}

DecayFit fit_decay(const TimeNormTable& table, DecayRegime regime) {
  std::vector<double> x, y;
  for (const auto& row : table) {
    const bool in = regime == DecayRegime::small_t ? row.t <= 1.0 : row.t >= 1.0;
    if (in && row.t > 0.0) {
      x.push_back(row.t);
      y.push_back(row.norm);
    }
  }
  if (x.size() < 8) throw DomainError("fit_decay: fewer than 8 points in the regime");
  return log_log_fit(x, y);
}

std::vector<WindowedRow> windowed_time_norm_profile(const TimeNormTable& h, const Rational& q_tilde,
                                                    const Window& window, int k_min, int k_max) {
  if (h.size() < 2) throw DomainError("windowed_time_norm_profile: table too short");
  for (std::size_t i = 1; i < h.size(); ++i)
    if (!(h[i].t > h[i - 1].t)) throw DomainError("windowed_time_norm_profile: t must increase");
  if (k_min > k_max) throw DomainError("windowed_time_norm_profile: empty k range");
  if (q_tilde.is_infinite()) throw DomainError("windowed_time_norm_profile: q_tilde must be finite");
  const WindowFunction phi(window, 1);
  const double R = phi.radius();
  if (k_min - R < h.front().t || k_max + R > h.back().t)
    throw DomainError("windowed_time_norm_profile: coverage gap");

  const double p = (q_tilde / Rational(2)).to_double();
  auto value_at = [&](double t) {
    const auto it = std::upper_bound(h.begin(), h.end(), t, [](double v, const TimeNormRow& r) { return v < r.t; });
    const std::size_t i = std::clamp<std::size_t>(static_cast<std::size_t>(it - h.begin()), 1, h.size() - 1);
    const TimeNormRow &a = h[i - 1], &b = h[i];
    if (a.norm > 0.0 && b.norm > 0.0) {
      const double u = std::log(t / a.t) / std::log(b.t / a.t);
      return a.norm * std::pow(b.norm / a.norm, u);
    }
    return a.norm + (b.norm - a.norm) * (t - a.t) / (b.t - a.t);
  };

  const GaussRule& g = gauss_legendre(8);
  std::vector<WindowedRow> out;
  for (int k = k_min; k <= k_max; ++k) {
    std::vector<double> cuts{k - R, k + R};
    for (const auto& row : h)
      if (row.t > k - R && row.t < k + R) cuts.push_back(row.t);
    std::sort(cuts.begin(), cuts.end());
    double sum = 0.0;
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      const int pieces = std::max(1, static_cast<int>(std::ceil((cuts[c + 1] - cuts[c]) / (R / 16.0))));
      const double w = (cuts[c + 1] - cuts[c]) / pieces;
      for (int j = 0; j < pieces; ++j) {
        const double mid = cuts[c] + (j + 0.5) * w;
        for (std::size_t q = 0; q < g.nodes.size(); ++q) {
          const double t = mid + 0.5 * w * g.nodes[q];
          sum += 0.5 * w * g.weights[q] * std::pow(std::abs(value_at(t)) * phi(t - k), p);
        }
      }
    }
    out.push_back({k, std::pow(sum, 1.0 / p)});
  }
  return out;
}

DecayFit fit_windowed(const std::vector<WindowedRow>& rows) {
  if (rows.size() < 8) throw DomainError("fit_windowed: fewer than 8 points");
  std::vector<double> x, y;
  for (const auto& r : rows) {
    if (r.k <= 0) throw DomainError("fit_windowed: k must be positive");
    x.push_back(r.k);
    y.push_back(r.value);
  }
  return log_log_fit(x, y);
}

std::vector<QuotientRow> strichartz_quotient(const Rational& sigma, const ExponentTuple& tuple,
                                             const std::vector<RadialProfile>& data_family,
                                             const std::vector<double>& dilations, const QuotientBox& box) {
  check_quotient_tuple(sigma, tuple);
  for (const auto& d : data_family) d.validate();
  std::vector<QuotientRow> out;
  for (std::size_t i = 0; i < data_family.size(); ++i)
    for (double lambda : dilations) out.push_back({i, lambda, quotient_one(sigma, tuple, data_family[i], lambda, box)});
  return out;
}

double quotient_box_drift(const Rational& sigma, const ExponentTuple& tuple, const RadialProfile& datum, double lambda,
                          const QuotientBox& box) {
  check_quotient_tuple(sigma, tuple);
  datum.validate();
  QuotientBox big = box;
  big.time *= 2.0;
  big.radius *= 2.0;
  big.time_samples = 2 * box.time_samples - 1;
  big.evolution.radius *= 2.0;
  big.evolution.modes = 2 * box.evolution.modes + 1;
  const double a = quotient_one(sigma, tuple, datum, lambda, box);
  const double b = quotient_one(sigma, tuple, datum, lambda, big);
  return std::abs(b - a) / a;
}

ExponentPair combined_indices(const ExponentTuple& tuple) {
  if (!tuple.dual) throw DomainError("combined_indices: dual indices missing");
  const Rational ir = tuple.r.reciprocal() + tuple.dual->r1.reciprocal();
  const Rational irt = tuple.r_tilde.reciprocal() + tuple.dual->r1_tilde.reciprocal();
  if (ir == Rational(0) || irt == Rational(0)) throw DomainError("combined_indices: r0 would be infinite");
  return {ir.reciprocal(), irt.reciprocal()};
}

std::pair<DecayFit, DecayFit> retarded_norm_check(int n, const Rational& gamma, const ExponentTuple& combined,
                                                  const ExperimentConfig& base) {
  if (n != 3) throw DomainError("retarded_norm_check: only n = 3 is supported");
  if (!combined.dual || combined.n != n || !thm2_admissible(combined, gamma))
    throw AdmissibilityError("retarded_norm_check: tuple not admissible");
  const ExponentPair r0 = combined_indices(combined);
  ExperimentConfig cfg = base;
  cfg.gamma = gamma;
  cfg.tuple.n = n;
  cfg.tuple.r = Rational(2) * r0.r;
  cfg.tuple.r_tilde = Rational(2) * r0.r_tilde;
  const TimeNormTable table = kernel_time_profile(cfg);
  return {fit_decay(table, DecayRegime::small_t), fit_decay(table, DecayRegime::large_t)};
}

std::string time_profile_csv(const TimeNormTable& table, const ExperimentConfig& config) {
  std::ostringstream os;
  os << "t,norm,estimator,gamma,r,r_tilde\n";
  const std::string tail = "," + to_string(config.estimator) + "," + config.gamma.to_string() + "," +
                           config.tuple.r.to_string() + "," + config.tuple.r_tilde.to_string() + "\n";
  for (const auto& row : table) os << format_double(row.t) << ',' << format_double(row.norm) << tail;
  return os.str();
}

}  // namespace ww
