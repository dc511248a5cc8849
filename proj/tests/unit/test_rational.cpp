#include <doctest.h>

#include <sstream>

#include "wienerwave/errors.hpp"
#include "wienerwave/rational.hpp"

using namespace ww;

TEST_CASE("canonical form and parsing") {
  CHECK(Rational(6, -8) == Rational(-3, 4));
  CHECK(Rational::parse("24/5") == Rational(24, 5));
  CHECK(Rational::parse("-7") == Rational(-7));
  CHECK(Rational::parse("inf").is_infinite());
  CHECK(Rational::parse("∞").is_infinite());
  CHECK_THROWS_AS((void)Rational::parse("1/0x"), DomainError);
  CHECK_THROWS_AS((void)Rational::parse(""), DomainError);
  CHECK_THROWS_AS(Rational(1, 0), DomainError);
}

TEST_CASE("to_string round-trips") {
  for (const char* s : {"0", "3", "-17/30", "61/21", "inf"}) CHECK(Rational::parse(s).to_string() == s);
  std::ostringstream os;
  os << Rational(9, 2);
  CHECK(os.str() == "9/2");
}

TEST_CASE("arithmetic is exact") {
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(3, 2) - Rational(1, 8) - Rational(9, 10) == Rational(19, 40));
  CHECK(Rational(4, 5) * Rational(5, 4) == Rational(1));
  CHECK(Rational(1) / Rational(3, 7) == Rational(7, 3));
  CHECK(-Rational(2, 3) == Rational(-2, 3));
}

TEST_CASE("infinity rules") {
  const Rational inf = Rational::infinity();
  CHECK(inf.reciprocal() == Rational(0));
  CHECK(Rational(0).reciprocal().is_infinite());
  CHECK((inf + Rational(5)).is_infinite());
  CHECK((inf * Rational(2)).is_infinite());
  CHECK(Rational(5) / inf == Rational(0));
  CHECK(Rational(1000000) < inf);
  CHECK_THROWS_AS((void)(inf - inf), DomainError);
  CHECK_THROWS_AS((void)(inf * Rational(0)), DomainError);
  CHECK_THROWS_AS((void)(inf * Rational(-1)), DomainError);
}

TEST_CASE("ordering and min/max") {
  CHECK(Rational(30, 7) < Rational(9, 2));
  CHECK(Rational(24, 5) < Rational(5));
  CHECK(min(Rational(1, 4), Rational(1, 5)) == Rational(1, 5));
  CHECK(max(Rational(1, 4), Rational::infinity()).is_infinite());
  CHECK(Rational(-1, 3).sign() == -1);
}

TEST_CASE("overflow is reported") {
  const Rational big(std::int64_t{1} << 62);
  CHECK_THROWS_AS((void)(big * big), DomainError);
}
