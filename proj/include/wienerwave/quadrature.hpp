#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ww {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached n-point Gauss-Legendre rule (n in 1..64).
[[nodiscard]] const GaussRule& gauss_legendre(std::size_t n);

/// 21-point Kronrod extension of the 10-point Gauss rule on [-1, 1].
/// Nodes are listed symmetrically; gauss_weights is zero at Kronrod-only nodes.
struct KronrodRule {
  std::vector<double> nodes;
  std::vector<double> kronrod_weights;
  std::vector<double> gauss_weights;
};

[[nodiscard]] const KronrodRule& gauss_kronrod21();

/// Least-squares line y = slope*x + intercept.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
};

[[nodiscard]] LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// n log-spaced points from a to b inclusive (a, b > 0).
[[nodiscard]] std::vector<double> log_space(double a, double b, std::size_t n);

}  // namespace ww
