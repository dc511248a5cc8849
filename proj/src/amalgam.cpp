#include "wienerwave/amalgam.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "wienerwave/errors.hpp"
#include "wienerwave/parallel.hpp"
#include "wienerwave/quadrature.hpp"

namespace ww {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();

double exponent(const Rational& p, const char* what) {
  if (!(p > Rational(0))) throw DomainError(std::string(what) + ": exponent must be positive");
  return p.to_double();
}

double sphere_area(int dim) {
  switch (dim) {
    case 1: return 2.0;
    case 2: return 2.0 * pi;
    case 3: return 4.0 * pi;
    default: throw DomainError("window: dimension must be 1, 2 or 3");
  }
}

// Phi(d) = int_0^d |phi(u)|^p u du on [0, R], cubic Hermite between nodes
// with the exact derivative |phi(d)|^p d.
class ShellTable {
 public:
  ShellTable(const WindowFunction& phi, double p) : phi_(phi), p_(p), h_(phi.radius() / kCells) {
    values_.resize(kCells + 1);
    const GaussRule& g = gauss_legendre(8);
    values_[0] = 0.0;
    for (int i = 0; i < kCells; ++i) {
      const double a = i * h_, c = a + 0.5 * h_;
      double s = 0.0;
      for (std::size_t k = 0; k < g.nodes.size(); ++k) {
        const double u = c + 0.5 * h_ * g.nodes[k];
        s += g.weights[k] * deriv(u);
      }
      values_[i + 1] = values_[i] + 0.5 * h_ * s;
    }
  }

  [[nodiscard]] double operator()(double d) const {
    if (d <= 0.0) return 0.0;
    if (d >= phi_.radius()) return values_.back();
    const double x = d / h_;
    const int i = std::min(static_cast<int>(x), kCells - 1);
    const double u = x - i;
    const double a = i * h_, b = a + h_;
    const double h00 = (1 + 2 * u) * (1 - u) * (1 - u), h10 = u * (1 - u) * (1 - u);
    const double h01 = u * u * (3 - 2 * u), h11 = u * u * (u - 1);
    return h00 * values_[i] + h10 * h_ * deriv(a) + h01 * values_[i + 1] + h11 * h_ * deriv(b);
  }

 private:
  static constexpr int kCells = 1024;
  [[nodiscard]] double deriv(double u) const { return std::pow(phi_(u), p_) * u; }

  const WindowFunction& phi_;
  double p_;
  double h_;
  std::vector<double> values_;
};

// Piecewise interpolant of |f| with optional power-law structure around a
// singular radius.
class RadialMagnitude {
 public:
  explicit RadialMagnitude(const RadialProfile& prof) : r_(prof.radii) {
    prof.validate();
    m_.resize(r_.size());
    for (std::size_t i = 0; i < r_.size(); ++i) m_[i] = std::abs(prof.values[i]);
    if (prof.singular_radius) {
      star_ = *prof.singular_radius;
      const auto it = std::upper_bound(r_.begin(), r_.end(), star_);
      if (it != r_.begin() && it != r_.end() && *(it - 1) < star_) {
        sing_cell_ = static_cast<std::ptrdiff_t>(it - r_.begin()) - 1;
        const auto i = static_cast<std::size_t>(sing_cell_);
        b_left_ = (i >= 1) ? local_power(i, i - 1) : 0.0;
        b_right_ = (i + 2 < r_.size()) ? local_power(i + 1, i + 2) : 0.0;
      }
      has_star_ = true;
    }
  }

  [[nodiscard]] double r_max() const { return r_.back(); }
  [[nodiscard]] double r_min() const { return r_.front(); }
  [[nodiscard]] const std::vector<double>& radii() const { return r_; }
  [[nodiscard]] const std::vector<double>& magnitudes() const { return m_; }

  /// int_lo^hi |f(s)|^p g(s) ds, with pieces no longer than max_piece.
  template <class G>
  [[nodiscard]] double integrate(double p, double lo, double hi, double max_piece, G&& g) const {
    lo = std::max(lo, r_.front());
    hi = std::min(hi, r_.back());
    if (!(hi > lo)) return 0.0;
    const int marks = std::max(1, static_cast<int>(std::ceil((hi - lo) / max_piece - 1e-9)));
    const double step = (hi - lo) / marks;
    std::size_t cell = cell_of(lo);
    double x = lo;
    int next_mark = 1;
    double total = 0.0;
    while (x < hi) {
      while (cell + 1 < r_.size() - 1 && r_[cell + 1] <= x) ++cell;
      double x1 = std::min(hi, r_[cell + 1]);
      while (next_mark <= marks && lo + next_mark * step <= x) ++next_mark;
      if (next_mark < marks) x1 = std::min(x1, lo + next_mark * step);
      if (static_cast<std::ptrdiff_t>(cell) == sing_cell_ && x < star_ && star_ < x1) x1 = star_;
      if (!(x1 > x)) x1 = std::nextafter(x, inf);
      total += piece(cell, p, x, x1, max_piece, g);
      x = x1;
    }
    return total;
  }

  /// max over samples in [lo, hi] of |f(s)| weight(s); endpoints interpolated.
  template <class G>
  [[nodiscard]] double sup(double lo, double hi, G&& weight) const {
    lo = std::max(lo, r_.front());
    hi = std::min(hi, r_.back());
    if (!(hi >= lo)) return 0.0;
    double best = std::max(value(lo) * weight(lo), value(hi) * weight(hi));
    for (std::size_t i = cell_of(lo); i < r_.size() && r_[i] <= hi; ++i)
      if (r_[i] >= lo) best = std::max(best, m_[i] * weight(r_[i]));
    return best;
  }

  [[nodiscard]] double value(double s) const {
    if (s < r_.front() || s > r_.back()) return 0.0;
    const std::size_t i = cell_of(s);
    if (static_cast<std::ptrdiff_t>(i) == sing_cell_) {
      const bool left = s < star_;
      const double d = std::abs(s - star_);
      const double d1 = left ? star_ - r_[i] : r_[i + 1] - star_;
      const double m1 = left ? m_[i] : m_[i + 1];
      if (d == 0.0) return inf;
      return m1 * std::pow(d / d1, left ? b_left_ : b_right_);
    }
    return interp(i, s);
  }

 private:
  [[nodiscard]] std::size_t cell_of(double s) const {
    const auto it = std::upper_bound(r_.begin(), r_.end(), s);
    std::size_t i = it == r_.begin() ? 0 : static_cast<std::size_t>(it - r_.begin()) - 1;
    return std::min(i, r_.size() - 2);
  }

  [[nodiscard]] double local_power(std::size_t inner, std::size_t outer) const {
    const double d1 = std::abs(r_[inner] - star_), d2 = std::abs(r_[outer] - star_);
    if (!(m_[inner] > 0.0) || !(m_[outer] > 0.0) || d1 == d2) return 0.0;
    return std::log(m_[outer] / m_[inner]) / std::log(d2 / d1);
  }

  [[nodiscard]] bool power_cell(std::size_t i) const {
    if (!has_star_) return false;
    const double a = r_[i] - star_, b = r_[i + 1] - star_;
    return a * b > 0.0 && m_[i] > 0.0 && m_[i + 1] > 0.0;
  }

  [[nodiscard]] double interp(std::size_t i, double s) const {
    if (power_cell(i)) {
      const double da = std::abs(r_[i] - star_), db = std::abs(r_[i + 1] - star_);
      const double b = std::log(m_[i + 1] / m_[i]) / std::log(db / da);
      return m_[i] * std::pow(std::abs(s - star_) / da, b);
    }
    const double w = (s - r_[i]) / (r_[i + 1] - r_[i]);
    return m_[i] + w * (m_[i + 1] - m_[i]);
  }

  template <class G>
  [[nodiscard]] double piece(std::size_t cell, double p, double x0, double x1, double max_piece, G& g) const {
    if (static_cast<std::ptrdiff_t>(cell) == sing_cell_) {
      // Analytic closure of the gap around the singular radius.
      const bool left = x1 <= star_;
      const double b = (left ? b_left_ : b_right_) * p;
      const double d1 = left ? star_ - r_[cell] : r_[cell + 1] - star_;
      const double m1 = left ? m_[cell] : m_[cell + 1];
      const double da = std::abs((left ? x1 : x0) - star_);
      const double db = std::abs((left ? x0 : x1) - star_);
      if (da == 0.0 && b <= -1.0) return inf;
      const double antider = (std::pow(db, b + 1.0) - std::pow(da, b + 1.0)) / (b + 1.0);
      return std::pow(m1, p) * std::pow(d1, -b) * antider * g(0.5 * (x0 + x1));
    }
    const bool fine = power_cell(cell) || (x1 - x0) >= 0.25 * max_piece;
    const GaussRule& rule = gauss_legendre(fine ? 4 : 2);
    const double c = 0.5 * (x0 + x1), h = 0.5 * (x1 - x0);
    double s = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const double x = c + h * rule.nodes[k];
      const double v = interp(cell, x);
      if (v > 0.0) s += rule.weights[k] * std::pow(v, p) * g(x);
    }
    return s * h;
  }

  std::vector<double> r_;
  std::vector<double> m_;
  bool has_star_ = false;
  double star_ = 0.0;
  std::ptrdiff_t sing_cell_ = -1;
  double b_left_ = 0.0;
  double b_right_ = 0.0;
};

// Shell integrand s^2 w(s, rho) of the windowed norm: the fraction of the
// sphere of radius s inside the window ball, weighted by |phi|^p.
struct ShellWeight {
  const ShellTable& table;
  const WindowFunction& phi;
  double rho;
  double p;

  double operator()(double s) const {
    if (rho < 1e-9 * phi.radius()) return 4.0 * pi * s * s * std::pow(phi(s), p);
    const double R = phi.radius();
    const double hi = std::min(s + rho, R);
    const double lo = std::abs(s - rho);
    if (lo >= hi) return 0.0;
    return std::max(0.0, 2.0 * pi * s / rho * (table(hi) - table(lo)));
  }
};

double windowed_power(const RadialMagnitude& mag, const ShellTable* table, const WindowFunction& phi, double rho,
                      double p) {
  const double R = phi.radius();
  if (std::isinf(p)) {
    return mag.sup(std::max(0.0, rho - R), rho + R, [&](double s) { return phi(std::abs(s - rho)); });
  }
  const ShellWeight w{*table, phi, rho, p};
  return std::max(0.0, mag.integrate(p, std::max(0.0, rho - R), rho + R, R / 8.0, w));
}

// Quadrature nodes in the translation variable rho >= 0: pieces of length
// spacing while the profile is finely sampled, then the profile cells.
struct RhoRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

RhoRule rho_rule(const RadialMagnitude& mag, double spacing, double rho_max, double split) {
  std::vector<double> breaks{0.0};
  const auto& r = mag.radii();
  std::size_t i = 0;
  double x = 0.0;
  while (x < rho_max) {
    while (i + 1 < r.size() && r[i + 1] <= x) ++i;
    const bool wide = i + 1 < r.size() && (r[i + 1] - r[i]) > spacing;
    double next = wide && r[i] >= x - 1e-12 ? r[i + 1] : x + spacing;
    // Land on the end of a wide cell so the next one is taken whole.
    if (wide) next = std::min(next, r[i + 1]);
    if (x < split && next > split) next = split;
    next = std::min(next, rho_max);
    breaks.push_back(next);
    x = next;
  }
  RhoRule rule;
  const GaussRule& g = gauss_legendre(4);
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double c = 0.5 * (breaks[k] + breaks[k + 1]), h = 0.5 * (breaks[k + 1] - breaks[k]);
    for (std::size_t j = 0; j < g.nodes.size(); ++j) {
      rule.nodes.push_back(c + h * g.nodes[j]);
      rule.weights.push_back(h * g.weights[j]);
    }
  }
  return rule;
}

}  // namespace

WindowFunction::WindowFunction(const Window& window, int dimension)
    : profile_(window.profile), radius_(window.support_radius) {
  if (!(radius_ > 0.0) || !std::isfinite(radius_)) throw DomainError("window: support radius must be positive");
  if (!window.l2_normalized) return;
  const double area = sphere_area(dimension);
  const GaussRule& g = gauss_legendre(32);
  constexpr int pieces = 16;
  double total = 0.0;
  for (int i = 0; i < pieces; ++i) {
    const double a = radius_ * i / pieces, h = radius_ / pieces;
    for (std::size_t k = 0; k < g.nodes.size(); ++k) {
      const double s = a + 0.5 * h * (1.0 + g.nodes[k]);
      const double v = shape(s / radius_);
      total += 0.5 * h * g.weights[k] * v * v * std::pow(s, dimension - 1);
    }
  }
  constant_ = 1.0 / std::sqrt(area * total);
}

double WindowFunction::shape(double x) const {
  switch (profile_) {
    case WindowProfile::smooth_bump: return x < 1.0 ? std::exp(-1.0 / (1.0 - x * x)) : 0.0;
    case WindowProfile::cosine_taper: {
      const double c = std::cos(pi * x / 2.0);
      return x < 1.0 ? c * c : 0.0;
    }
    case WindowProfile::indicator: return x <= 1.0 ? 1.0 : 0.0;
  }
  return 0.0;
}

double WindowFunction::operator()(double d) const { return constant_ * shape(std::abs(d) / radius_); }

void RadialProfile::validate() const {
  if (dimension != 3) throw DomainError("radial profile: dimension must be 3");
  if (radii.size() < 2 || radii.size() != values.size())
    throw DomainError("radial profile: need at least two samples and matching sizes");
  if (radii.front() < 0.0) throw DomainError("radial profile: radii must be nonnegative");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!std::isfinite(radii[i]) || !std::isfinite(values[i].real()) || !std::isfinite(values[i].imag()))
      throw DomainError("radial profile: non-finite sample");
    if (i > 0 && !(radii[i] > radii[i - 1])) throw DomainError("radial profile: radii must increase strictly");
  }
}

double weak_lorentz_norm(const SampledSignal& signal, const Rational& q) {
  const double qd = exponent(q, "weak_lorentz_norm");
  if (!(signal.grid_step > 0.0)) throw DomainError("weak_lorentz_norm: grid step must be positive");
  std::vector<double> v = signal.samples;
  for (double x : v)
    if (!(x >= 0.0)) throw DomainError("weak_lorentz_norm: samples must be nonnegative");
  std::sort(v.begin(), v.end(), std::greater<>());
  double best = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double level = std::isinf(qd) ? 1.0 : std::pow(static_cast<double>(k + 1) * signal.grid_step, 1.0 / qd);
    best = std::max(best, v[k] * level);
  }
  return best;
}

double lebesgue_norm(const SampledSignal& signal, const Rational& q) {
  const double qd = exponent(q, "lebesgue_norm");
  if (std::isinf(qd)) {
    double m = 0.0;
    for (double x : signal.samples) m = std::max(m, std::abs(x));
    return m;
  }
  std::vector<double> terms(signal.samples.size());
  for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = std::pow(std::abs(signal.samples[i]), qd);
  return std::pow(pairwise_sum(terms.data(), terms.size()) * signal.grid_step, 1.0 / qd);
}

double amalgam_norm_1d(const SampledSignal& signal, const Rational& inner_p, const Rational& outer_q,
                       const Window& window, bool outer_weak) {
  if (signal.samples.empty()) throw DomainError("amalgam_norm_1d: empty signal");
  if (!(signal.grid_step > 0.0)) throw DomainError("amalgam_norm_1d: grid step must be positive");
  const double p = exponent(inner_p, "amalgam_norm_1d");
  exponent(outer_q, "amalgam_norm_1d");
  const WindowFunction phi(window, 1);
  const double R = phi.radius();
  const double h = signal.grid_step;
  const double x0 = signal.grid_start;
  const double x1 = x0 + h * static_cast<double>(signal.samples.size() - 1);
  const auto k_lo = static_cast<long>(std::floor((x0 - R) / R));
  const auto k_hi = static_cast<long>(std::ceil((x1 + R) / R));
  SampledSignal g;
  g.grid_start = static_cast<double>(k_lo) * R;
  g.grid_step = R;
  const long n = static_cast<long>(signal.samples.size());
  for (long k = k_lo; k <= k_hi; ++k) {
    const double c = static_cast<double>(k) * R;
    const long i_lo = std::max(0L, static_cast<long>(std::floor((c - R - x0) / h)));
    const long i_hi = std::min(n - 1, static_cast<long>(std::ceil((c + R - x0) / h)));
    double acc = 0.0;
    for (long i = i_lo; i <= i_hi; ++i) {
      const double v = std::abs(signal.samples[static_cast<std::size_t>(i)]) * phi(x0 + static_cast<double>(i) * h - c);
      acc = std::isinf(p) ? std::max(acc, v) : acc + std::pow(v, p);
    }
    g.samples.push_back(std::isinf(p) ? acc : std::pow(acc * h, 1.0 / p));
  }
  return outer_weak ? weak_lorentz_norm(g, outer_q) : lebesgue_norm(g, outer_q);
}

double windowed_lp_radial(const RadialProfile& profile, double center_distance, const Rational& p,
                          const Window& window) {
  const double pd = exponent(p, "windowed_lp_radial");
  if (!(center_distance >= 0.0)) throw DomainError("windowed_lp_radial: center distance must be nonnegative");
  const RadialMagnitude mag(profile);
  const WindowFunction phi(window, 3);
  if (std::isinf(pd)) return windowed_power(mag, nullptr, phi, center_distance, pd);
  const ShellTable table(phi, pd);
  return std::pow(windowed_power(mag, &table, phi, center_distance, pd), 1.0 / pd);
}

double amalgam_norm_radial(const RadialProfile& profile, const Rational& inner_p, const Rational& outer_q,
                           const Window& window) {
  const double p = exponent(inner_p, "amalgam_norm_radial");
  const double q = exponent(outer_q, "amalgam_norm_radial");
  const RadialMagnitude mag(profile);
  const WindowFunction phi(window, 3);
  const double R = phi.radius();
  std::optional<ShellTable> table;
  if (!std::isinf(p)) table.emplace(phi, p);
  const RhoRule rule = rho_rule(mag, R / 4.0, mag.r_max() + R, -1.0);
  const auto g = parallel_map(rule.nodes.size(), [&](std::size_t i) {
    const double v = windowed_power(mag, table ? &*table : nullptr, phi, rule.nodes[i], p);
    return std::isinf(p) ? v : std::pow(v, 1.0 / p);
  });
  if (std::isinf(q)) return *std::max_element(g.begin(), g.end());
  std::vector<double> terms(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    terms[i] = rule.weights[i] * 4.0 * pi * rule.nodes[i] * rule.nodes[i] * std::pow(g[i], q);
  return std::pow(pairwise_sum(terms.data(), terms.size()), 1.0 / q);
}

double annulus_mass(const RadialProfile& profile, double rho, const Rational& p) {
  const double pd = exponent(p, "annulus_mass");
  if (std::isinf(pd)) throw DomainError("annulus_mass: p must be finite");
  if (!(rho >= 0.0)) throw DomainError("annulus_mass: rho must be nonnegative");
  const RadialMagnitude mag(profile);
  return mag.integrate(pd, std::max(0.0, rho - 1.0), rho + 1.0, 1.0 / 8.0,
                       [](double s) { return 4.0 * pi * s * s; });
}

double amalgam_surrogate_radial(const RadialProfile& profile, const Rational& inner_p, const Rational& outer_q) {
  const double p = exponent(inner_p, "amalgam_surrogate_radial");
  const double q = exponent(outer_q, "amalgam_surrogate_radial");
  if (std::isinf(p) || std::isinf(q)) throw DomainError("amalgam_surrogate_radial: exponents must be finite");
  const double ratio = q / p;
  const RadialMagnitude mag(profile);
  const RhoRule rule = rho_rule(mag, 0.25, mag.r_max() + 1.0, 1.0);
  const auto terms = parallel_map(rule.nodes.size(), [&](std::size_t i) {
    const double rho = rule.nodes[i];
    double I = mag.integrate(p, std::max(0.0, rho - 1.0), rho + 1.0, 1.0 / 8.0,
                             [](double s) { return 4.0 * pi * s * s; });
    if (rho > 1.0) I /= rho * rho;
    return rule.weights[i] * 4.0 * pi * rho * rho * std::pow(I, ratio);
  });
  return std::pow(pairwise_sum(terms.data(), terms.size()), 1.0 / q);
}

double mixed_amalgam_norm_1d(const SampledField& field, const Rational& q_tilde, const Rational& q,
                             const Rational& r_tilde, const Rational& r, const Window& window) {
  if (field.nt == 0 || field.nx == 0 || field.values.size() != field.nt * field.nx)
    throw DomainError("mixed_amalgam_norm_1d: malformed field");
  SampledSignal h;
  h.grid_start = field.t_start;
  h.grid_step = field.t_step;
  h.samples.resize(field.nt);
  for (std::size_t it = 0; it < field.nt; ++it) {
    SampledSignal row;
    row.grid_start = field.x_start;
    row.grid_step = field.x_step;
    row.samples.assign(field.values.begin() + static_cast<std::ptrdiff_t>(it * field.nx),
                       field.values.begin() + static_cast<std::ptrdiff_t>((it + 1) * field.nx));
    h.samples[it] = amalgam_norm_1d(row, r_tilde, r, window);
  }
  return amalgam_norm_1d(h, q_tilde, q, window);
}

double holder_pairing_ratio(const SampledField& F, const SampledField& G, const ExponentTuple& tuple,
                            const Window& window) {
  if (F.nt != G.nt || F.nx != G.nx || F.t_start != G.t_start || F.t_step != G.t_step || F.x_start != G.x_start ||
      F.x_step != G.x_step || F.values.size() != G.values.size())
    throw DomainError("holder_pairing_ratio: mismatched grids");
  std::vector<double> prod(F.values.size());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = F.values[i] * G.values[i];
  const double pairing = std::abs(pairwise_sum(prod.data(), prod.size())) * F.t_step * F.x_step;
  if (pairing == 0.0) return 0.0;
  const double nf = mixed_amalgam_norm_1d(F, tuple.q_tilde, tuple.q, tuple.r_tilde, tuple.r, window);
  const double ng = mixed_amalgam_norm_1d(G, conjugate(tuple.q_tilde), conjugate(tuple.q), conjugate(tuple.r_tilde),
                                          conjugate(tuple.r), window);
  return pairing / (nf * ng);
}

}  // namespace ww
