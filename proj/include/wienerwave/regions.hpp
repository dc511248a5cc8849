#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wienerwave/rational.hpp"

namespace ww {

/// Indices of the second (dual) estimate in retarded and inhomogeneous bounds.
struct DualIndices {
  Rational q1;
  Rational q1_tilde;
  Rational r1;
  Rational r1_tilde;
};

/// Lebesgue and regularity exponents of a space-time estimate.
///
/// Every Lebesgue exponent lies in [1, inf]; sigma and gamma are finite.
struct ExponentTuple {
  int n = 3;
  Rational sigma;
  Rational gamma;
  Rational q = Rational::infinity();
  Rational q_tilde = Rational::infinity();
  Rational r = Rational(2);
  Rational r_tilde = Rational(2);
  std::optional<DualIndices> dual;
};

struct CaseExponents {
  Rational alpha;
  Rational lambda;
  Rational beta;
  Rational kappa;
};

struct DecayExponents {
  Rational omega_small;  ///< exponent of |t| for |t| <= 1
  Rational omega_large;  ///< exponent of |t| for |t| >= 1
};

/// Ball radius M and life span T for the Picard iteration.
struct ContractionPlan {
  Rational k;
  Rational q0_tilde;
  double M = 0.0;
  double T = 0.0;
  double C = 1.0;
};

/// Throws DomainError unless every exponent of the tuple lies in [1, inf]
/// and n >= 2.
void validate(const ExponentTuple& tuple);

/// Hoelder conjugate p' with 1/p + 1/p' = 1 (p >= 1).
[[nodiscard]] Rational conjugate(const Rational& p);

[[nodiscard]] bool is_wave_admissible(int n, const Rational& q, const Rational& r, const Rational& sigma);

/// Conditions of the homogeneous amalgam Strichartz estimate (n >= 3).
[[nodiscard]] bool thm1_admissible(const ExponentTuple& tuple);

/// Conditions of the retarded estimate; tuple.dual must be present.
[[nodiscard]] bool thm2_admissible(const ExponentTuple& tuple, const Rational& gamma);

/// Kernel time-decay conditions on (r, r_tilde).
///
/// The upper bounds on r_tilde are compared in reciprocal form, so a bound
/// 2n/(n-gamma-1) with negative denominator imposes no constraint.
[[nodiscard]] bool propfix_admissible(int n, const Rational& gamma, const Rational& r, const Rational& r_tilde);

/// Throws AdmissibilityError when propfix_admissible fails.
[[nodiscard]] DecayExponents decay_exponents(int n, const Rational& gamma, const Rational& r, const Rational& r_tilde);

/// r_tilde must be finite.
[[nodiscard]] CaseExponents case_exponents(int n, const Rational& gamma, const Rational& r, const Rational& r_tilde);

/// Largest power for local well-posedness at regularity sigma (0 <= sigma < n/2).
[[nodiscard]] Rational k_max(int n, const Rational& sigma);

/// n = 3 low-regularity estimates: homogeneous conditions without a dual,
/// inhomogeneous conditions on the summed indices otherwise.
[[nodiscard]] bool corollary_admissible(const Rational& sigma, const ExponentTuple& tuple);

/// Solution-space conditions for the n = 3 power nonlinearity of degree k,
/// including k < k_max at the implied regularity.
[[nodiscard]] bool nlw_admissible(const ExponentTuple& tuple, const Rational& k);

/// sigma = 3/2 - 1/q - 3/r fixed by scaling for the n = 3 solution space.
[[nodiscard]] Rational implied_sigma(const ExponentTuple& tuple);

/// Dual tuple at regularity 1 - sigma and the time exponent q0_tilde of the
/// nonlinear estimate, each free index placed at the midpoint of its
/// feasible interval. Throws AdmissibilityError if an interval is empty.
struct NonlinearDual {
  Rational sigma1;
  DualIndices dual;
  Rational q0_tilde;
};
[[nodiscard]] NonlinearDual nlw_dual_indices(const ExponentTuple& tuple, const Rational& k);

[[nodiscard]] ContractionPlan life_span(double C, double data_norm, const Rational& k, const Rational& q0_tilde);

/// One point of a sampled (1/r, 1/r_tilde) admissibility region.
struct RegionSample {
  Rational inv_r;
  Rational inv_r_tilde;
  bool admissible = false;
};

/// propfix_admissible on the grid {i/denominator : 0 <= i <= denominator/2}^2.
[[nodiscard]] std::vector<RegionSample> sample_propfix_region(int n, const Rational& gamma, int denominator);

/// The propfix region is the triangle b < 1/r_tilde <= 1/r < a in the
/// (1/r, 1/r_tilde) plane; returns its exact centroid as (r, r_tilde).
/// Throws AdmissibilityError when the triangle is empty.
struct ExponentPair {
  Rational r;
  Rational r_tilde;
};
[[nodiscard]] ExponentPair propfix_centroid(int n, const Rational& gamma);

/// (sigma, k_max(n, sigma)) for sigma = i/denominator in [0, n/2).
[[nodiscard]] std::vector<std::pair<Rational, Rational>> sample_k_max_curve(int n, int denominator);

[[nodiscard]] std::string region_csv(const std::vector<RegionSample>& samples);

}  // namespace ww
