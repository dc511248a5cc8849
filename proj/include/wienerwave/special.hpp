#pragma once

#include <cstddef>
#include <vector>

namespace ww {

/// Real order nu >= 0 of a Bessel function of the first kind.
class BesselOrder {
 public:
  /// Throws DomainError for negative or non-finite nu.
  explicit BesselOrder(double nu);

  [[nodiscard]] double nu() const { return nu_; }
  /// True when 2*nu is an integer.
  [[nodiscard]] bool half_integer_flag() const { return integer_or_half_; }
  /// True when nu - 1/2 is a nonnegative integer.
  [[nodiscard]] bool is_half_odd() const { return half_odd_; }

 private:
  double nu_;
  bool integer_or_half_;
  bool half_odd_;
};

/// J_nu(m) for m > 0.
///
/// Orders nu = l + 1/2 use the spherical Bessel closed form when m >= 1
/// and the power series below. Other orders use the power series (in
/// extended precision) for m <= series_crossover and the Hankel
/// asymptotic expansion beyond.
[[nodiscard]] double bessel_j(const BesselOrder& order, double m);

/// Leading asymptotic term sqrt(2/(pi m)) cos(m - pi nu/2 - pi/4), m > 1.
[[nodiscard]] double bessel_leading(const BesselOrder& order, double m);

/// bessel_j - bessel_leading, m > 1.
[[nodiscard]] double bessel_remainder(const BesselOrder& order, double m);

/// Argument at which bessel_j switches from series to asymptotic expansion.
inline constexpr double series_crossover = 20.0;

/// Local maxima of |R_nu| used to read off the remainder decay rate.
struct RemainderEnvelope {
  std::vector<double> m;     ///< location of each sampled peak
  std::vector<double> peak;  ///< |R_nu| at that location
  double slope = 0.0;        ///< log-log least-squares slope of peak against m
};

/// For count log-spaced anchors a in [m_min, m_max], takes the maximum of
/// |R_nu| over [a, a + pi] (one half period of the oscillation) and fits
/// log(peak) against log(location).
[[nodiscard]] RemainderEnvelope remainder_envelope(const BesselOrder& order, double m_min, double m_max,
                                                   std::size_t count);

}  // namespace ww
