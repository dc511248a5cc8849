#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "wienerwave/amalgam.hpp"
#include "wienerwave/rational.hpp"
#include "wienerwave/regions.hpp"

namespace ww {

/// Interior points r_j = j L/(M+1), j = 1..M, of the Dirichlet sine grid
/// for v = r u on [0, L].
struct RadialGrid {
  double radius = 32.0;
  std::size_t modes = 4096;

  [[nodiscard]] double step() const { return radius / static_cast<double>(modes + 1); }
  [[nodiscard]] std::vector<double> radii() const;
  /// Frequency of sine mode index k = 0..M-1, (k+1) pi / L.
  [[nodiscard]] double frequency(std::size_t k) const;
};

/// Samples fn on the grid.
[[nodiscard]] RadialProfile sample_profile(const RadialGrid& grid, const std::function<double(double)>& fn);

/// Recovers the sine grid a profile lives on; throws DomainError if the
/// radii are not of the form j L/(M+1).
[[nodiscard]] RadialGrid grid_of(const RadialProfile& profile);

/// Fraction of the L2 mass of v = r u in the outer 5% of the grid.
[[nodiscard]] double edge_mass_fraction(const RadialProfile& profile);

/// Largest edge_mass_fraction tolerated after an evolution.
inline constexpr double kEdgeMassLimit = 1e-4;

/// e^{it sqrt(-Delta)} f for radial f. Throws AliasingError if the result
/// carries more than kEdgeMassLimit of its mass at the grid edge.
[[nodiscard]] RadialProfile half_wave(const RadialProfile& profile, double t);

/// Homogeneous Sobolev norm, |s| < 3/2; s = 0 is the L2(R^3) norm.
[[nodiscard]] double sobolev_norm(const RadialProfile& profile, double s);

struct RadialState {
  RadialProfile u;
  RadialProfile ut;
  double time = 0.0;
};

enum class NonlinearityForm { power, signed_power };

/// F_k(u) = sign * u^k (integer k) or sign * |u|^{k-1} u.
struct Nonlinearity {
  Rational k{3};
  NonlinearityForm form = NonlinearityForm::signed_power;
  int sign = 1;

  /// Throws DomainError for k <= 1, |sign| != 1 or non-integer k with the
  /// power form.
  void validate() const;
  [[nodiscard]] double operator()(double u) const;
};

/// Displacement and velocity of Phi(u) on the slice times of u_guess.
struct DuhamelResult {
  std::vector<RadialProfile> u;
  std::vector<RadialProfile> ut;
  /// Relative change of the Duhamel term at the final time when every
  /// other slice is dropped.
  double halving_error = 0.0;
};

/// Time slices t_i = i T / (u_guess.size() - 1).
[[nodiscard]] std::vector<double> slice_times(std::size_t count, double T);

/// Phi(u) = cos(t|D|) f + sin(t|D|)/|D| g + int_0^t sin((t-s)|D|)/|D| F(u(s)) ds
/// with F(u(s)) linear in s between slices, integrated exactly per mode.
/// Throws ConvergenceError if the halving estimate exceeds 1e-2.
[[nodiscard]] DuhamelResult duhamel_evaluate(const RadialState& state0, const std::vector<RadialProfile>& u_guess,
                                             const Nonlinearity& F, double T);

/// Displacement part of duhamel_evaluate.
[[nodiscard]] std::vector<RadialProfile> duhamel_apply(const RadialState& state0,
                                                       const std::vector<RadialProfile>& u_guess,
                                                       const Nonlinearity& F, double T);

/// ||u||_{W(q_tilde, q)_t W(r_tilde, r)_x} over the slice times.
[[nodiscard]] double mixed_norm(const std::vector<RadialProfile>& slices, const std::vector<double>& times,
                                const ExponentTuple& tuple, const Window& window = {});

struct FixedPointOptions {
  std::size_t slices = 64;
  std::size_t max_iterations = 50;
  double tolerance = 1e-8;
  Window window{};
};

struct FixedPointResult {
  std::vector<RadialProfile> solution;
  std::vector<RadialProfile> velocity;
  std::vector<double> times;
  std::size_t iterations = 0;
  std::vector<double> differences;
  std::vector<double> contraction_ratios;
  ContractionPlan plan;
  NonlinearDual dual;
  Rational sigma;
  double data_norm = 0.0;
};

/// Picard iteration u <- Phi(u) from u = 0 on [0, plan.T].
///
/// Throws AdmissibilityError if nlw_admissible fails and ContractionError
/// if a recorded ratio exceeds 1.
[[nodiscard]] FixedPointResult fixed_point_solve(const RadialProfile& f, const RadialProfile& g,
                                                 const Nonlinearity& F, const ExponentTuple& tuple, double C,
                                                 const FixedPointOptions& options = {});

struct PersistenceReport {
  double sup_Hsigma = 0.0;
  double sup_Hsigma_minus_1 = 0.0;
  double data_norm_ratio = 0.0;
};

/// Sup over slices of ||u||_{H^sigma} and ||u_t||_{H^{sigma-1}}; the ratio
/// divides the larger one by ||f||_{H^sigma} + ||g||_{H^{sigma-1}}.
[[nodiscard]] PersistenceReport persistence_check(const FixedPointResult& result, double sigma);

}  // namespace ww
