#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "wienerwave/amalgam.hpp"
#include "wienerwave/nlw.hpp"
#include "wienerwave/rational.hpp"
#include "wienerwave/regions.hpp"

namespace ww {

enum class Estimator { direct, surrogate };
enum class DecayRegime { small_t, large_t };
enum class KernelSource { quadrature, closed_form };

[[nodiscard]] std::string to_string(Estimator e);
[[nodiscard]] std::string to_string(DecayRegime r);

/// Least-squares fit of log(norm) against log(t).
struct DecayFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
  std::pair<double, double> fit_range{0.0, 0.0};
  int points = 0;
};

/// Radius grid of a kernel profile at time t: uniform points on
/// [0, t_max + margin], offsets t +- t 2^{-k} for k = 1..cone_levels, and a
/// geometric far field out to far_radius.
struct ProfileResolution {
  std::size_t uniform_points = 4096;
  double margin = 8.0;
  int cone_levels = 40;
  double far_radius = 1e8;
  double far_ratio = 1.04;
};

struct ExperimentConfig {
  ExponentTuple tuple;  ///< n, r and r_tilde are used
  Rational gamma;
  std::vector<double> t_grid;
  Estimator estimator = Estimator::direct;
  ProfileResolution resolution;
  KernelSource source = KernelSource::quadrature;
  Window window;
};

struct TimeNormRow {
  double t = 0.0;
  double norm = 0.0;
};
using TimeNormTable = std::vector<TimeNormRow>;

/// 12 log-spaced times: [1/64, 1/2] or [4, 64].
[[nodiscard]] std::vector<double> regime_grid(DecayRegime regime);

/// Radial profile of the n = 3 kernel at time t > 0 on [0, far_radius].
///
/// Quadrature is used off the cone band; band samples and r = 0 come from
/// the closed form. singular_radius is set to t.
[[nodiscard]] RadialProfile kernel_radial_profile(const Rational& gamma, double t, double t_max,
                                                  const ProfileResolution& resolution,
                                                  KernelSource source = KernelSource::quadrature);

/// Amalgam norm of a profile with the chosen estimator.
[[nodiscard]] double profile_norm(const RadialProfile& profile, const Rational& inner, const Rational& outer,
                                  Estimator estimator, const Window& window = {});

/// ||K_gamma(., t)||_{W(r_tilde/2, r/2)} for each t of the grid.
///
/// Throws AdmissibilityError unless propfix_admissible holds.
[[nodiscard]] TimeNormTable kernel_time_profile(const ExperimentConfig& config);

/// Same profiles measured with several estimators; one table per estimator.
[[nodiscard]] std::vector<TimeNormTable> kernel_time_profiles(const ExperimentConfig& config,
                                                              const std::vector<Estimator>& estimators);

/// Fit over the rows with t <= 1 (small_t) or t >= 1 (large_t). Throws
/// DomainError with fewer than 8 such rows or a non-positive norm.
[[nodiscard]] DecayFit fit_decay(const TimeNormTable& table, DecayRegime regime);

struct WindowedRow {
  int k = 0;
  double value = 0.0;
};

/// ||h tau_k phi||_{L^{q_tilde/2}} for integers k in [k_min, k_max], with h
/// interpolated log-linearly between table rows.
///
/// The table must cover [k_min - R, k_max + R], R the window radius; a gap
/// throws DomainError.
[[nodiscard]] std::vector<WindowedRow> windowed_time_norm_profile(const TimeNormTable& h_table,
                                                                  const Rational& q_tilde, const Window& window,
                                                                  int k_min, int k_max);

/// Fit of log(value) against log(k).
[[nodiscard]] DecayFit fit_windowed(const std::vector<WindowedRow>& rows);

/// Space-time box of a quotient experiment. The evolution grid extends past
/// the measured box so outgoing mass is not reflected back into it.
struct QuotientBox {
  double time = 16.0;
  double radius = 32.0;
  std::size_t time_samples = 257;
  RadialGrid evolution{64.0, 8193};
};

struct QuotientRow {
  std::size_t family = 0;
  double lambda = 1.0;
  double quotient = 0.0;
};

/// ||e^{it|D|} f_lambda||_{W(q_tilde, q)_t W(r_tilde, r)_x} / ||f_lambda||_{H^sigma}
/// over the box, with f_lambda(r) = f(lambda r).
///
/// Throws AdmissibilityError unless thm1_admissible or corollary_admissible
/// holds, DomainError on a zero datum.
[[nodiscard]] std::vector<QuotientRow> strichartz_quotient(const Rational& sigma, const ExponentTuple& tuple,
                                                           const std::vector<RadialProfile>& data_family,
                                                           const std::vector<double>& dilations,
                                                           const QuotientBox& box = {});

/// Relative change of one quotient when time and radius of the box, and
/// the evolution grid, are doubled.
[[nodiscard]] double quotient_box_drift(const Rational& sigma, const ExponentTuple& tuple, const RadialProfile& datum,
                                        double lambda, const QuotientBox& box = {});

/// r0 and r0_tilde with 1/r0 = 1/r + 1/r1 and 1/r0_tilde = 1/r_tilde + 1/r1_tilde.
[[nodiscard]] ExponentPair combined_indices(const ExponentTuple& tuple);

/// Runs kernel_time_profile with exponents (2 r0, 2 r0_tilde) and fits both
/// regimes; base supplies the t grid and resolution.
///
/// Throws AdmissibilityError before any computation unless thm2_admissible holds.
[[nodiscard]] std::pair<DecayFit, DecayFit> retarded_norm_check(int n, const Rational& gamma,
                                                                const ExponentTuple& combined,
                                                                const ExperimentConfig& base);

/// CSV with header t,norm,estimator,gamma,r,r_tilde.
[[nodiscard]] std::string time_profile_csv(const TimeNormTable& table, const ExperimentConfig& config);

}  // namespace ww
