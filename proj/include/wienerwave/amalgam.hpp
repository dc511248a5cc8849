#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "wienerwave/rational.hpp"
#include "wienerwave/regions.hpp"

namespace ww {

enum class WindowProfile { smooth_bump, cosine_taper, indicator };

/// Radial window supported in the ball of radius support_radius.
///
/// smooth_bump is exp(-1/(1-|x/R|^2)), cosine_taper is cos^2(pi|x|/(2R)),
/// indicator is the characteristic function of the ball.
struct Window {
  double support_radius = 1.0;
  WindowProfile profile = WindowProfile::smooth_bump;
  bool l2_normalized = true;
};

/// Evaluates a window in a fixed dimension, with its L2 normalization
/// constant precomputed.
class WindowFunction {
 public:
  WindowFunction(const Window& window, int dimension);

  /// Window value at distance d >= 0 from its center.
  [[nodiscard]] double operator()(double d) const;
  [[nodiscard]] double radius() const { return radius_; }
  [[nodiscard]] double constant() const { return constant_; }

 private:
  [[nodiscard]] double shape(double x) const;

  WindowProfile profile_;
  double radius_;
  double constant_ = 1.0;
};

/// Uniformly sampled real signal; only magnitudes enter the norms.
struct SampledSignal {
  std::vector<double> samples;
  double grid_start = 0.0;
  double grid_step = 1.0;
};

/// Radial function on [0, radii.back()], zero beyond (no extrapolation).
///
/// When singular_radius is set, |f| is interpolated as a power of the
/// distance to it, and the gap between the two samples enclosing it is
/// closed analytically from the local power fitted on each side.
struct RadialProfile {
  int dimension = 3;
  std::vector<double> radii;
  std::vector<std::complex<double>> values;
  std::optional<double> singular_radius;

  /// Throws DomainError on unsorted radii, size mismatch or non-finite values.
  void validate() const;
};

/// Discrete L^{q,inf} norm: sup_k v_(k) (k step)^{1/q} over decreasing
/// rearranged samples. q = inf gives the maximum.
[[nodiscard]] double weak_lorentz_norm(const SampledSignal& signal, const Rational& q);

/// Strong discrete L^q norm (sum |v|^q step)^{1/q}.
[[nodiscard]] double lebesgue_norm(const SampledSignal& signal, const Rational& q);

/// W(p, q) norm on the real line with window translates on the lattice
/// spacing support_radius.
[[nodiscard]] double amalgam_norm_1d(const SampledSignal& signal, const Rational& inner_p, const Rational& outer_q,
                                     const Window& window = {}, bool outer_weak = false);

/// ||f tau_y phi||_{L^p(R^3)} for |y| = center_distance.
[[nodiscard]] double windowed_lp_radial(const RadialProfile& profile, double center_distance, const Rational& p,
                                        const Window& window = {});

/// W(p, q) norm of a radial function on R^3.
[[nodiscard]] double amalgam_norm_radial(const RadialProfile& profile, const Rational& inner_p, const Rational& outer_q,
                                         const Window& window = {});

/// Integral of |f|^p over the shell max(0, rho-1) <= |x| <= rho+1.
[[nodiscard]] double annulus_mass(const RadialProfile& profile, double rho, const Rational& p);

/// (A + B)^{1/outer_q} with A, B the annulus-mass integrals over |y| <= 1
/// and |y| >= 1, the latter carrying the |y|^{-2} multiplicity factor.
[[nodiscard]] double amalgam_surrogate_radial(const RadialProfile& profile, const Rational& inner_p,
                                              const Rational& outer_q);

/// Real field on a uniform (t, x) grid, row-major in t.
struct SampledField {
  std::size_t nt = 0;
  std::size_t nx = 0;
  double t_start = 0.0;
  double t_step = 1.0;
  double x_start = 0.0;
  double x_step = 1.0;
  std::vector<double> values;

  [[nodiscard]] double at(std::size_t it, std::size_t ix) const { return values[it * nx + ix]; }
};

/// ||F||_{W(q_tilde, q)_t W(r_tilde, r)_x} with one space dimension.
[[nodiscard]] double mixed_amalgam_norm_1d(const SampledField& field, const Rational& q_tilde, const Rational& q,
                                           const Rational& r_tilde, const Rational& r, const Window& window = {});

/// |<F, G>| over the product of the mixed norms of F (tuple exponents) and
/// G (conjugate exponents). Throws DomainError on mismatched grids.
[[nodiscard]] double holder_pairing_ratio(const SampledField& F, const SampledField& G, const ExponentTuple& tuple,
                                          const Window& window = {});

}  // namespace ww
