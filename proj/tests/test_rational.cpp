#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unordered_set>

#include "expandlab/error.hpp"
#include "expandlab/rational.hpp"
#include "generators.hpp"

using expandlab::Error;
using expandlab::ErrorKind;
using expandlab::Rational;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::IoError;
}

}  // namespace

TEST_CASE("normalize reduces and canonicalizes sign") {
  CHECK(Rational::normalize(2, 4).to_string() == "1/2");
  CHECK(Rational::normalize(3, -6).to_string() == "-1/2");
  auto zero = Rational::normalize(0, 7);
  CHECK(zero.to_string() == "0");
  CHECK(zero.denominator() == 1);
  CHECK(zero == Rational());
  CHECK(kind_of([] { Rational::normalize(1, 0); }) == ErrorKind::ZeroDenominator);
}

TEST_CASE("parse_scalar") {
  CHECK(Rational::parse("3/4") == Rational::normalize(3, 4));
  CHECK(Rational::parse("-2") == Rational(-2));
  CHECK(Rational::parse("0.25") == Rational::normalize(1, 4));
  CHECK(Rational::parse("-.5") == Rational::normalize(-1, 2));
  CHECK(Rational::parse("+7") == Rational(7));
  CHECK(Rational::parse("6/4") == Rational::normalize(3, 2));
  CHECK(Rational::parse("0.1") == Rational::normalize(1, 10));
  CHECK(Rational::parse("123456789012345678901234567890").to_string() ==
        "123456789012345678901234567890");

  CHECK(kind_of([] { Rational::parse("3/0"); }) == ErrorKind::ZeroDenominator);
  for (const char* bad : {"", "-", "1/", "/2", "1.2.3", "abc", "1 /2", "1e5", "3/-4", "."}) {
    CAPTURE(bad);
    CHECK(kind_of([&] { Rational::parse(bad); }) == ErrorKind::ParseError);
  }
}

TEST_CASE("arithmetic at the int64 boundary promotes and demotes exactly") {
  const Rational max(INT64_MAX);
  const Rational min(INT64_MIN);
  Rational over = max + Rational(1);
  CHECK_FALSE(over.is_small());
  CHECK(over.to_string() == "9223372036854775808");
  CHECK((over - Rational(1)).is_small());
  CHECK(over - Rational(1) == max);
  CHECK((-min).to_string() == "9223372036854775808");
  CHECK(-(-min) == min);
  Rational sq = max * max;
  CHECK((sq / max) == max);
  CHECK((sq / max).is_small());
  CHECK(Rational::normalize(1, INT64_MAX) + Rational::normalize(1, INT64_MAX - 1) > Rational());
  CHECK(kind_of([] { return Rational(1) / Rational(0); }) == ErrorKind::ZeroDenominator);
}

TEST_CASE("ordering matches cross multiplication") {
  CHECK(Rational::normalize(1, 3) < Rational::normalize(1, 2));
  CHECK(Rational::normalize(-1, 2) < Rational::normalize(-1, 3));
  CHECK(Rational::parse("100000000000000000000") > Rational(INT64_MAX));
  CHECK(Rational::parse("-100000000000000000000") < Rational(INT64_MIN));
}

TEST_CASE("field axioms hold exactly on random rationals") {
  expandlab::testing::Gen gen(11);
  for (int trial = 0; trial < 2000; ++trial) {
    Rational a = gen.wide_rational();
    Rational b = gen.wide_rational();
    Rational c = gen.wide_rational();
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK(a - a == Rational());
    if (!a.is_zero()) CHECK(a * (Rational(1) / a) == Rational(1));
  }
}

TEST_CASE("print then parse is the identity on canonical forms") {
  expandlab::testing::Gen gen(12);
  for (int trial = 0; trial < 2000; ++trial) {
    Rational a = gen.wide_rational();
    Rational back = Rational::parse(a.to_string());
    CHECK(back == a);
    CHECK(back.to_string() == a.to_string());
  }
}

TEST_CASE("equal values hash equally regardless of construction path") {
  expandlab::testing::Gen gen(13);
  for (int trial = 0; trial < 500; ++trial) {
    Rational a = gen.wide_rational();
    Rational via_sum = (a + Rational(5)) - Rational(5);
    Rational via_scale = (a * Rational(7)) / Rational(7);
    Rational via_text = Rational::parse(a.to_string());
    Rational via_mpz = Rational::normalize(a.numerator() * 3, a.denominator() * 3);
    for (const Rational& other : {via_sum, via_scale, via_text, via_mpz}) {
      CHECK(other == a);
      CHECK(std::hash<Rational>{}(other) == std::hash<Rational>{}(a));
    }
  }
  std::unordered_set<Rational> seen{Rational::normalize(2, 4), Rational::parse("0.5")};
  CHECK(seen.size() == 1);
}

TEST_CASE("floor and pow") {
  CHECK(Rational::normalize(7, 2).floor() == 3);
  CHECK(Rational::normalize(-7, 2).floor() == -4);
  CHECK(pow(Rational::normalize(2, 3), 3) == Rational::normalize(8, 27));
  CHECK(pow(Rational(2), 100).to_string() == "1267650600228229401496703205376");
}
