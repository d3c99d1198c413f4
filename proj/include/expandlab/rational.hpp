#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace expandlab {

/// Exact rational number in canonical form: gcd(|num|, den) = 1, den >= 1,
/// zero is 0/1.
///
/// Values whose numerator and denominator both fit in int64 are stored
/// inline and operated on with 128-bit intermediates; anything larger is
/// promoted to a heap-held GMP rational. The promotion is canonical as well
/// (a big value is never representable inline), so representation equality
/// is value equality and hashing is well defined.
class Rational {
 public:
  Rational() noexcept : num_(0), den_(1) {}
  Rational(std::int64_t value) noexcept : num_(value), den_(1) {}  // NOLINT(implicit)
  Rational(int value) noexcept : num_(value), den_(1) {}          // NOLINT(implicit)

  Rational(const Rational& other);
  Rational(Rational&& other) noexcept;
  Rational& operator=(const Rational& other);
  Rational& operator=(Rational&& other) noexcept;
  ~Rational();

  /// Reduces num/den to canonical form. Throws ZeroDenominator if den == 0.
  static Rational normalize(std::int64_t num, std::int64_t den);
  static Rational normalize(const mpz_class& num, const mpz_class& den);
  static Rational from_mpq(const mpq_class& value);

  /// Accepts an integer ("-2"), a fraction ("3/4", "3/-4" is rejected) or a
  /// finite decimal ("0.25", "-.5"). Decimals are converted exactly.
  static Rational parse(std::string_view text);

  std::string to_string() const;
  mpz_class numerator() const;
  mpz_class denominator() const;
  mpq_class to_mpq() const;
  double to_double() const;

  int sign() const noexcept;
  bool is_zero() const noexcept { return is_small() && num_ == 0; }
  bool is_integer() const noexcept;
  bool is_small() const noexcept { return den_ != 0; }

  /// Floor as an arbitrary-precision integer.
  mpz_class floor() const;

  std::size_t hash() const noexcept;

  Rational operator-() const;
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  /// Throws ZeroDenominator when b is zero.
  friend Rational operator/(const Rational& a, const Rational& b);

  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b) noexcept;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept;

 private:
  struct BigTag {};
  Rational(BigTag, mpq_class* big) noexcept : big_(big), den_(0) {}

  static Rational from_i128(__int128 num, __int128 den);

  union {
    std::int64_t num_;
    mpq_class* big_;
  };
  std::int64_t den_;  // 0 marks the big representation
};

Rational pow(const Rational& base, unsigned exponent);
Rational abs(const Rational& value);

std::ostream& operator<<(std::ostream& os, const Rational& value);

}  // namespace expandlab

template <>
struct std::hash<expandlab::Rational> {
  std::size_t operator()(const expandlab::Rational& r) const noexcept { return r.hash(); }
};
