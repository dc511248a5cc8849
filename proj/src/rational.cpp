#include "wienerwave/rational.hpp"

#include <charconv>
#include <limits>
#include <numeric>
#include <ostream>

#include "wienerwave/errors.hpp"

namespace ww {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw DomainError("cannot parse rational component '" + std::string(s) + "'");
  return v;
}

}  // namespace

ExtendedRational::ExtendedRational(std::int64_t value) : num_(value) {}

ExtendedRational::ExtendedRational(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) throw DomainError("rational with zero denominator");
  *this = from_wide(numerator, denominator);
}

ExtendedRational ExtendedRational::from_wide(__int128 num, __int128 den) {
  if (den < 0) num = -num, den = -den;
  const __int128 g = gcd128(num, den);
  if (g > 1) num /= g, den /= g;
  constexpr auto lo = std::numeric_limits<std::int64_t>::min();
  constexpr auto hi = std::numeric_limits<std::int64_t>::max();
  if (num < lo || num > hi || den > hi) throw DomainError("rational overflow");
  ExtendedRational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

ExtendedRational ExtendedRational::infinity() {
  ExtendedRational r;
  r.infinite_ = true;
  r.num_ = 1;
  r.den_ = 0;
  return r;
}

ExtendedRational ExtendedRational::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text == "inf" || text == "Inf" || text == "infinity" || text == "∞" || text == "+inf") return infinity();
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return ExtendedRational(parse_int(text));
  return ExtendedRational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

int ExtendedRational::sign() const {
  if (infinite_) return 1;
  return (num_ > 0) - (num_ < 0);
}

ExtendedRational ExtendedRational::reciprocal() const {
  if (infinite_) return ExtendedRational(0);
  if (num_ == 0) return infinity();
  return from_wide(den_, num_);
}

double ExtendedRational::to_double() const {
  if (infinite_) return std::numeric_limits<double>::infinity();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string ExtendedRational::to_string() const {
  if (infinite_) return "inf";
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

ExtendedRational ExtendedRational::operator-() const {
  if (infinite_) throw DomainError("negative infinity is not representable");
  return from_wide(-static_cast<__int128>(num_), den_);
}

ExtendedRational operator+(const ExtendedRational& a, const ExtendedRational& b) {
  if (a.infinite_ || b.infinite_) return ExtendedRational::infinity();
  return ExtendedRational::from_wide(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                                     static_cast<__int128>(a.den_) * b.den_);
}

ExtendedRational operator-(const ExtendedRational& a, const ExtendedRational& b) {
  if (b.infinite_) throw DomainError("subtraction of infinity");
  if (a.infinite_) return a;
  return ExtendedRational::from_wide(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                                     static_cast<__int128>(a.den_) * b.den_);
}

ExtendedRational operator*(const ExtendedRational& a, const ExtendedRational& b) {
  if (a.infinite_ || b.infinite_) {
    const ExtendedRational& other = a.infinite_ ? b : a;
    if (other.sign() <= 0) throw DomainError("product of infinity with a nonpositive value");
    return ExtendedRational::infinity();
  }
  return ExtendedRational::from_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
}

ExtendedRational operator/(const ExtendedRational& a, const ExtendedRational& b) {
  if (b.is_zero()) {
    if (a.sign() <= 0) throw DomainError("division by zero");
    return ExtendedRational::infinity();
  }
  return a * b.reciprocal();
}

std::strong_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b) {
  if (a.infinite_ || b.infinite_) return static_cast<int>(a.infinite_) <=> static_cast<int>(b.infinite_);
  const __int128 l = static_cast<__int128>(a.num_) * b.den_;
  const __int128 r = static_cast<__int128>(b.num_) * a.den_;
  return l <=> r;
}

ExtendedRational min(const ExtendedRational& a, const ExtendedRational& b) { return b < a ? b : a; }
ExtendedRational max(const ExtendedRational& a, const ExtendedRational& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const ExtendedRational& x) { return os << x.to_string(); }

}  // namespace ww
