#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace ww {

/// Exact rational number extended by a single point at +infinity.
///
/// Values are kept in lowest terms with a positive denominator. Infinity
/// is the Lebesgue exponent endpoint: its reciprocal is 0 and 1/0 is
/// infinity. Operations without a meaningful value (inf - inf, 0 * inf,
/// anything negative times inf) throw DomainError; int64 overflow throws
/// DomainError as well.
class ExtendedRational {
 public:
  constexpr ExtendedRational() = default;
  ExtendedRational(std::int64_t value);  // NOLINT(google-explicit-constructor)
  ExtendedRational(std::int64_t numerator, std::int64_t denominator);

  [[nodiscard]] static ExtendedRational infinity();
  /// Accepts "p", "p/q", "-p/q", "inf" and "∞".
  [[nodiscard]] static ExtendedRational parse(std::string_view text);

  [[nodiscard]] std::int64_t numerator() const { return num_; }
  [[nodiscard]] std::int64_t denominator() const { return den_; }
  [[nodiscard]] bool is_infinite() const { return infinite_; }
  [[nodiscard]] bool is_finite() const { return !infinite_; }
  [[nodiscard]] bool is_zero() const { return !infinite_ && num_ == 0; }
  [[nodiscard]] int sign() const;

  [[nodiscard]] ExtendedRational reciprocal() const;
  [[nodiscard]] double to_double() const;
  /// "p/q", "p" for integers, "inf" for infinity. Round-trips through parse.
  [[nodiscard]] std::string to_string() const;

  friend ExtendedRational operator+(const ExtendedRational& a, const ExtendedRational& b);
  friend ExtendedRational operator-(const ExtendedRational& a, const ExtendedRational& b);
  friend ExtendedRational operator*(const ExtendedRational& a, const ExtendedRational& b);
  friend ExtendedRational operator/(const ExtendedRational& a, const ExtendedRational& b);
  ExtendedRational operator-() const;

  ExtendedRational& operator+=(const ExtendedRational& o) { return *this = *this + o; }
  ExtendedRational& operator-=(const ExtendedRational& o) { return *this = *this - o; }
  ExtendedRational& operator*=(const ExtendedRational& o) { return *this = *this * o; }
  ExtendedRational& operator/=(const ExtendedRational& o) { return *this = *this / o; }

  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b) = default;
  friend std::strong_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b);

 private:
  static ExtendedRational from_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  bool infinite_ = false;
};

using Rational = ExtendedRational;

[[nodiscard]] ExtendedRational min(const ExtendedRational& a, const ExtendedRational& b);
[[nodiscard]] ExtendedRational max(const ExtendedRational& a, const ExtendedRational& b);

std::ostream& operator<<(std::ostream& os, const ExtendedRational& x);

}  // namespace ww
