#include "wienerwave/nlw.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "wienerwave/errors.hpp"
#include "wienerwave/parallel.hpp"

namespace ww {

namespace {

constexpr double pi = std::numbers::pi;
using cplx = std::complex<double>;

struct RealBuffer {
  explicit RealBuffer(std::size_t n) : data(fftw_alloc_real(n)) {
    if (!data) throw std::bad_alloc();
  }
  ~RealBuffer() { fftw_free(data); }
  RealBuffer(const RealBuffer&) = delete;
  RealBuffer& operator=(const RealBuffer&) = delete;
  double* data;
};

// RODFT00 plans keyed by length. Planning is not thread safe in FFTW,
// execution on fresh buffers is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [n, p] : plans_) fftw_destroy_plan(p);
  }

  fftw_plan get(std::size_t n) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    RealBuffer in(n), out(n);
    fftw_plan p = fftw_plan_r2r_1d(static_cast<int>(n), in.data, out.data, FFTW_RODFT00, FFTW_ESTIMATE);
    if (!p) throw std::runtime_error("fftw: planning failed");
    plans_.emplace(n, p);
    return p;
  }

 private:
  std::mutex mutex_;
  std::map<std::size_t, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

// y_k = 2 sum_j x_j sin(pi (j+1)(k+1)/(n+1)), scaled by `scale`.
std::vector<double> dst1(const std::vector<double>& x, double scale) {
  const std::size_t n = x.size();
  fftw_plan p = plan_cache().get(n);
  RealBuffer in(n), out(n);
  std::copy(x.begin(), x.end(), in.data);
  fftw_execute_r2r(p, in.data, out.data);
  std::vector<double> y(out.data, out.data + n);
  for (double& v : y) v *= scale;
  return y;
}

// Sine coefficients c_k with v_j = sum_k c_k sin(omega_k r_j), v = r u.
struct Spectrum {
  std::vector<double> re;
  std::vector<double> im;
};

Spectrum to_spectrum(const RadialProfile& prof) {
  const std::size_t n = prof.radii.size();
  std::vector<double> vr(n), vi(n);
  for (std::size_t j = 0; j < n; ++j) {
    vr[j] = prof.radii[j] * prof.values[j].real();
    vi[j] = prof.radii[j] * prof.values[j].imag();
  }
  const double s = 1.0 / static_cast<double>(n + 1);
  return {dst1(vr, s), dst1(vi, s)};
}

RadialProfile from_spectrum(const RadialGrid& grid, const Spectrum& c) {
  RadialProfile out;
  out.radii = grid.radii();
  const std::vector<double> vr = dst1(c.re, 0.5), vi = dst1(c.im, 0.5);
  out.values.resize(vr.size());
  for (std::size_t j = 0; j < vr.size(); ++j) out.values[j] = cplx(vr[j], vi[j]) / out.radii[j];
  return out;
}

// Real-only variant used inside the Duhamel loop.
std::vector<double> real_spectrum(const std::vector<double>& radii, const std::vector<double>& u) {
  std::vector<double> v(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) v[j] = radii[j] * u[j];
  return dst1(v, 1.0 / static_cast<double>(u.size() + 1));
}

RadialProfile real_profile(const RadialGrid& grid, const std::vector<double>& c) {
  RadialProfile out;
  out.radii = grid.radii();
  const std::vector<double> v = dst1(c, 0.5);
  out.values.resize(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) out.values[j] = v[j] / out.radii[j];
  return out;
}

void require_same_grid(const RadialProfile& a, const RadialProfile& b, const char* what) {
  if (a.radii.size() != b.radii.size()) throw DomainError(std::string(what) + ": grids differ");
  for (std::size_t j = 0; j < a.radii.size(); ++j)
    if (a.radii[j] != b.radii[j]) throw DomainError(std::string(what) + ": grids differ");
}

void require_real(const RadialProfile& p, const char* what) {
  for (const cplx& v : p.values)
    if (v.imag() != 0.0) throw DomainError(std::string(what) + ": field must be real-valued");
}

// E1 = int_0^1 e^{i theta x} dx, E2 = int_0^1 x e^{i theta x} dx.
std::pair<cplx, cplx> filon_moments(double theta) {
  const cplx I(0.0, 1.0);
  if (std::abs(theta) < 0.25) {
    cplx e1 = 0.0, e2 = 0.0, term = 1.0;  // (i theta)^n / n!
    for (int n = 0; n < 14; ++n) {
      e1 += term / static_cast<double>(n + 1);
      e2 += term / static_cast<double>(n + 2);
      term *= I * theta / static_cast<double>(n + 1);
    }
    return {e1, e2};
  }
  const cplx e = std::exp(I * theta);
  return {(e - 1.0) / (I * theta), e / (I * theta) + (e - 1.0) / (theta * theta)};
}

double spectral_energy(const std::vector<double>& c) {
  double s = 0.0;
  for (double v : c) s += v * v;
  return s;
}

}  // namespace

std::vector<double> RadialGrid::radii() const {
  if (!(radius > 0.0) || modes == 0) throw DomainError("RadialGrid: radius and modes must be positive");
  std::vector<double> r(modes);
  const double h = step();
  for (std::size_t j = 0; j < modes; ++j) r[j] = static_cast<double>(j + 1) * h;
  return r;
}

double RadialGrid::frequency(std::size_t k) const { return static_cast<double>(k + 1) * pi / radius; }

RadialProfile sample_profile(const RadialGrid& grid, const std::function<double(double)>& fn) {
  RadialProfile out;
  out.radii = grid.radii();
  out.values.resize(out.radii.size());
  for (std::size_t j = 0; j < out.radii.size(); ++j) out.values[j] = fn(out.radii[j]);
  return out;
}

RadialGrid grid_of(const RadialProfile& profile) {
  profile.validate();
  if (profile.dimension != 3) throw DomainError("nlw: profiles must be three-dimensional");
  const std::size_t m = profile.radii.size();
  if (m < 2) throw DomainError("nlw: grid needs at least two points");
  const double h = profile.radii[0];
  if (!(h > 0.0)) throw DomainError("nlw: grid must start at r = h > 0");
  for (std::size_t j = 0; j < m; ++j) {
    const double expect = static_cast<double>(j + 1) * h;
    if (std::abs(profile.radii[j] - expect) > 1e-9 * expect) throw DomainError("nlw: radii are not a sine grid");
  }
  return RadialGrid{h * static_cast<double>(m + 1), m};
}

double edge_mass_fraction(const RadialProfile& profile) {
  const RadialGrid grid = grid_of(profile);
  const double cut = 0.95 * grid.radius;
  double total = 0.0, edge = 0.0;
  for (std::size_t j = 0; j < profile.radii.size(); ++j) {
    const double r = profile.radii[j];
    const double m = std::norm(profile.values[j]) * r * r;
    total += m;
    if (r > cut) edge += m;
  }
  return total > 0.0 ? edge / total : 0.0;
}

RadialProfile half_wave(const RadialProfile& profile, double t) {
  const RadialGrid grid = grid_of(profile);
  if (!std::isfinite(t)) throw DomainError("half_wave: time must be finite");
  double peak = 0.0, edge = 0.0;
  for (std::size_t j = 0; j < profile.radii.size(); ++j) {
    const double a = std::abs(profile.values[j]) * profile.radii[j];
    peak = std::max(peak, a);
    if (profile.radii[j] > 0.95 * grid.radius) edge = std::max(edge, a);
  }
  if (edge > 1e-8 * peak) throw DomainError("half_wave: datum has not decayed at the grid edge");

  Spectrum c = to_spectrum(profile);
  for (std::size_t k = 0; k < grid.modes; ++k) {
    const cplx z = cplx(c.re[k], c.im[k]) * std::polar(1.0, t * grid.frequency(k));
    c.re[k] = z.real();
    c.im[k] = z.imag();
  }
  RadialProfile out = from_spectrum(grid, c);
  if (edge_mass_fraction(out) > kEdgeMassLimit) throw AliasingError("half_wave: mass reached the grid edge");
  return out;
}

double sobolev_norm(const RadialProfile& profile, double s) {
  if (!(std::abs(s) < 1.5)) throw DomainError("sobolev_norm: need |s| < 3/2");
  const RadialGrid grid = grid_of(profile);
  const Spectrum c = to_spectrum(profile);
  std::vector<double> terms(grid.modes);
  for (std::size_t k = 0; k < grid.modes; ++k)
    terms[k] = std::pow(grid.frequency(k), 2.0 * s) * (c.re[k] * c.re[k] + c.im[k] * c.im[k]);
  return std::sqrt(4.0 * pi * 0.5 * grid.radius * pairwise_sum(terms.data(), terms.size()));
}

void Nonlinearity::validate() const {
  if (k.is_infinite() || !(k > Rational(1))) throw DomainError("Nonlinearity: k must be a finite rational > 1");
  if (sign != 1 && sign != -1) throw DomainError("Nonlinearity: sign must be +1 or -1");
  if (form == NonlinearityForm::power && k.denominator() != 1)
    throw DomainError("Nonlinearity: u^k needs an integer k");
}

double Nonlinearity::operator()(double u) const {
  const double kd = k.to_double();
  if (form == NonlinearityForm::power) return sign * std::pow(u, static_cast<int>(k.numerator()));
  return sign * std::pow(std::abs(u), kd - 1.0) * u;
}

std::vector<double> slice_times(std::size_t count, double T) {
  if (count < 2) throw DomainError("slice_times: need at least two slices");
  std::vector<double> t(count);
  for (std::size_t i = 0; i < count; ++i) t[i] = T * static_cast<double>(i) / static_cast<double>(count - 1);
  return t;
}

DuhamelResult duhamel_evaluate(const RadialState& state0, const std::vector<RadialProfile>& u_guess,
                               const Nonlinearity& F, double T) {
  F.validate();
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("duhamel: T must be positive");
  const std::size_t ns = u_guess.size();
  if (ns < 3 || (ns - 1) % 2 != 0) throw DomainError("duhamel: need an even number of intervals, at least two");
  const RadialGrid grid = grid_of(state0.u);
  require_same_grid(state0.u, state0.ut, "duhamel");
  require_real(state0.u, "duhamel");
  require_real(state0.ut, "duhamel");
  for (const auto& g : u_guess) {
    require_same_grid(state0.u, g, "duhamel");
    require_real(g, "duhamel");
  }

  const std::size_t M = grid.modes;
  const std::vector<double>& radii = state0.u.radii;
  auto real_part = [](const RadialProfile& p) {
    std::vector<double> v(p.values.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = p.values[j].real();
    return v;
  };
  const std::vector<double> fh = real_spectrum(radii, real_part(state0.u));
  const std::vector<double> gh = real_spectrum(radii, real_part(state0.ut));

  const std::vector<std::vector<double>> Fh = parallel_map(ns, [&](std::size_t i) {
    std::vector<double> w(M);
    for (std::size_t j = 0; j < M; ++j) w[j] = F(u_guess[i].values[j].real());
    return real_spectrum(radii, w);
  });

  const double dt = T / static_cast<double>(ns - 1);
  // S[i][k] = int_0^{t_i} e^{i omega s} F_k(s) ds, piecewise linear F.
  std::vector<std::vector<cplx>> S(ns, std::vector<cplx>(M));
  std::vector<cplx> coarse(M);  // same with step 2 dt up to T
  for (std::size_t k = 0; k < M; ++k) {
    const double w = grid.frequency(k);
    const auto [e1, e2] = filon_moments(w * dt);
    const auto [c1, c2] = filon_moments(2.0 * w * dt);
    cplx acc = 0.0, acc2 = 0.0;
    for (std::size_t i = 0; i + 1 < ns; ++i) {
      const double f0 = Fh[i][k], f1 = Fh[i + 1][k];
      acc += std::polar(dt, w * dt * static_cast<double>(i)) * (f0 * e1 + (f1 - f0) * e2);
      S[i + 1][k] = acc;
      if (i % 2 == 0) {
        const double g2 = Fh[i + 2][k];
        acc2 += std::polar(2.0 * dt, w * dt * static_cast<double>(i)) * (f0 * c1 + (g2 - f0) * c2);
      }
    }
    coarse[k] = acc2;
  }

  DuhamelResult out;
  {
    std::vector<double> fine_end(M), diff(M);
    for (std::size_t k = 0; k < M; ++k) {
      const double w = grid.frequency(k);
      const cplx ph = std::polar(1.0, w * T);
      fine_end[k] = (ph.imag() * S[ns - 1][k].real() - ph.real() * S[ns - 1][k].imag()) / w;
      const double c = (ph.imag() * coarse[k].real() - ph.real() * coarse[k].imag()) / w;
      diff[k] = fine_end[k] - c;
    }
    const double e = spectral_energy(fine_end);
    out.halving_error = e > 0.0 ? std::sqrt(spectral_energy(diff) / e) : 0.0;
  }
  if (out.halving_error > 1e-2) throw ConvergenceError("duhamel: time slices too coarse for the forcing");

  const auto slices = parallel_map(ns, [&](std::size_t i) {
    const double t = dt * static_cast<double>(i);
    std::vector<double> cu(M), cv(M);
    for (std::size_t k = 0; k < M; ++k) {
      const double w = grid.frequency(k);
      const double c = std::cos(w * t), s = std::sin(w * t);
      const double A = S[i][k].real(), B = S[i][k].imag();
      cu[k] = c * fh[k] + s / w * gh[k] + (s * A - c * B) / w;
      cv[k] = -w * s * fh[k] + c * gh[k] + (c * A + s * B);
    }
    return std::pair{real_profile(grid, cu), real_profile(grid, cv)};
  });
  out.u.reserve(ns);
  out.ut.reserve(ns);
  for (const auto& [u, v] : slices) {
    out.u.push_back(u);
    out.ut.push_back(v);
  }
  return out;
}

std::vector<RadialProfile> duhamel_apply(const RadialState& state0, const std::vector<RadialProfile>& u_guess,
                                         const Nonlinearity& F, double T) {
  return duhamel_evaluate(state0, u_guess, F, T).u;
}

double mixed_norm(const std::vector<RadialProfile>& slices, const std::vector<double>& times,
                  const ExponentTuple& tuple, const Window& window) {
  if (slices.size() != times.size() || slices.size() < 2) throw DomainError("mixed_norm: slice/time mismatch");
  const double dt = times[1] - times[0];
  for (std::size_t i = 1; i < times.size(); ++i)
    if (std::abs(times[i] - times[i - 1] - dt) > 1e-12 * std::max(1.0, std::abs(times[i])))
      throw DomainError("mixed_norm: times must be uniform");
  SampledSignal h;
  h.grid_start = times.front();
  h.grid_step = dt;
  h.samples.reserve(slices.size());
  for (const auto& s : slices) h.samples.push_back(amalgam_norm_radial(s, tuple.r_tilde, tuple.r, window));
  return amalgam_norm_1d(h, tuple.q_tilde, tuple.q, window);
}

FixedPointResult fixed_point_solve(const RadialProfile& f, const RadialProfile& g, const Nonlinearity& F,
                                   const ExponentTuple& tuple, double C, const FixedPointOptions& options) {
  F.validate();
  if (!nlw_admissible(tuple, F.k)) throw AdmissibilityError("fixed_point_solve: tuple not admissible for this k");
  if (options.slices < 2 || options.slices % 2 != 0) throw DomainError("fixed_point_solve: slices must be even");
  const RadialGrid grid = grid_of(f);
  require_same_grid(f, g, "fixed_point_solve");

  FixedPointResult res;
  res.sigma = implied_sigma(tuple);
  res.dual = nlw_dual_indices(tuple, F.k);
  const double s = res.sigma.to_double();
  res.data_norm = sobolev_norm(f, s) + sobolev_norm(g, s - 1.0);
  if (res.data_norm > 0.0) {
    res.plan = life_span(C, res.data_norm, F.k, res.dual.q0_tilde);
  } else {
    if (!(C > 0.0)) throw DomainError("fixed_point_solve: C must be positive");
    res.plan = ContractionPlan{F.k, res.dual.q0_tilde, 0.0, 0.99, C};
  }
  res.times = slice_times(options.slices + 1, res.plan.T);

  RadialProfile zero;
  zero.radii = grid.radii();
  zero.values.assign(grid.modes, 0.0);
  std::vector<RadialProfile> u(options.slices + 1, zero);
  const RadialState state0{f, g, 0.0};

  double reference = 0.0;
  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    DuhamelResult next = duhamel_evaluate(state0, u, F, res.plan.T);
    std::vector<RadialProfile> diff = next.u;
    for (std::size_t i = 0; i < diff.size(); ++i)
      for (std::size_t j = 0; j < grid.modes; ++j) diff[i].values[j] -= u[i].values[j];
    const double d = mixed_norm(diff, res.times, tuple, options.window);
    if (!res.differences.empty() && res.differences.back() > 0.0)
      res.contraction_ratios.push_back(d / res.differences.back());
    res.differences.push_back(d);
    if (it == 0) reference = d;
    u = std::move(next.u);
    res.velocity = std::move(next.ut);
    res.iterations = it + 1;
    if (!res.contraction_ratios.empty() && res.contraction_ratios.back() > 1.0)
      throw ContractionError("fixed_point_solve: Picard map is not contracting");
    if (d <= options.tolerance * reference) break;
  }
  res.solution = std::move(u);
  return res;
}

PersistenceReport persistence_check(const FixedPointResult& result, double sigma) {
  PersistenceReport rep;
  for (std::size_t i = 0; i < result.solution.size(); ++i) {
    rep.sup_Hsigma = std::max(rep.sup_Hsigma, sobolev_norm(result.solution[i], sigma));
    if (i < result.velocity.size())
      rep.sup_Hsigma_minus_1 = std::max(rep.sup_Hsigma_minus_1, sobolev_norm(result.velocity[i], sigma - 1.0));
  }
  if (result.data_norm > 0.0) rep.data_norm_ratio = std::max(rep.sup_Hsigma, rep.sup_Hsigma_minus_1) / result.data_norm;
  return rep;
}

}  // namespace ww
