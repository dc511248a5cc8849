#pragma once

#include <functional>

#include "wienerwave/amalgam.hpp"

namespace ww::testing {

/// Finite-difference reference for u_tt = Delta u + F(u), radial in R^3.
///
/// Works on v = r u over the sine grid of f with v = 0 at both ends,
/// fourth-order differences in r and leapfrog steps of dt <= courant * h.
struct LeapfrogResult {
  RadialProfile u;
  RadialProfile ut;
};

[[nodiscard]] LeapfrogResult leapfrog(const RadialProfile& f, const RadialProfile& g,
                                      const std::function<double(double)>& F, double T, double courant = 0.25);

/// sqrt(int |a - b|^2 dx) / sqrt(int |b|^2 dx) on a shared grid.
[[nodiscard]] double relative_l2(const RadialProfile& a, const RadialProfile& b);

}  // namespace ww::testing
