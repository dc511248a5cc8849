#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace ww {

using complex = std::complex<double>;

/// Point (|x|, t) at which the kernel of |D|^{-gamma} e^{it|D|} is evaluated.
struct KernelQuery {
  int n = 3;
  double gamma = 1.5;
  double radius = 1.0;
  double time = 0.0;
};

enum class KernelMethod { damped_extrapolated, split_asymptotic, closed_form_n3 };

struct KernelValue {
  complex value;
  double abs_error_estimate = 0.0;
  KernelMethod method = KernelMethod::damped_extrapolated;
};

/// Throws DomainError unless n >= 2, 0 < gamma < n and radius > 0.
void validate(const KernelQuery& q);

/// Queries with |r - |t|| below this are not evaluated by quadrature.
[[nodiscard]] double cone_band_width(double radius);
[[nodiscard]] bool in_cone_band(double radius, double time);

/// (1/(2 pi^2 r)) int_0^inf e^{-eps w} e^{itw} w^{1-gamma} sin(rw) dw for n = 3.
///
/// Panels follow the oscillation period 2pi/max(|t|+r, 1) and are refined
/// adaptively with a 21-point Gauss-Kronrod pair; beyond a cutoff W the
/// integral of e^{zw} w^{1-gamma} is summed from its asymptotic series in
/// 1/(zW). Throws ConvergenceError when the panel budget is exhausted.
[[nodiscard]] complex kernel_damped(const KernelQuery& q, double epsilon);

/// kernel_damped for several damping levels sharing one set of nodes.
[[nodiscard]] std::vector<complex> kernel_damped_levels(const KernelQuery& q, std::span<const double> epsilons);

/// Abel limit eps -> 0 by Richardson extrapolation over eps_j = eps_0 2^{-j}.
///
/// Throws ConeBandError inside the cone band when gamma < 2, and
/// ConvergenceError if successive extrapolants do not settle.
[[nodiscard]] KernelValue kernel_eval(const KernelQuery& q);

/// Closed form of the Abel-regularized n = 3 kernel, valid for gamma in
/// (0, 3) except gamma = 2, |t| != r. r = 0 is accepted as the limit at
/// the origin.
[[nodiscard]] complex kernel_closed_form_n3(double gamma, double radius, double time);

/// Right-hand side of the pointwise kernel estimate with unit constant.
[[nodiscard]] double pointwise_bound(const KernelQuery& q);

struct PointwiseReport {
  double max_ratio = 0.0;
  std::pair<double, double> argmax{0.0, 0.0};
  std::size_t grid_size = 0;
};

/// max over grid of |kernel_eval| / pointwise_bound; ties resolve to the
/// earliest grid point so the report does not depend on the thread count.
[[nodiscard]] PointwiseReport verify_pointwise(int n, double gamma, std::span<const std::pair<double, double>> grid);

}  // namespace ww
