#include "expandlab/rational.hpp"

#include <limits>
#include <numeric>
#include <ostream>
#include <utility>

#include "expandlab/error.hpp"

namespace expandlab {
namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr i128 kI64Min = std::numeric_limits<std::int64_t>::min();
constexpr i128 kI64Max = std::numeric_limits<std::int64_t>::max();

bool fits_i64(i128 v) { return v >= kI64Min && v <= kI64Max; }

u128 uabs(i128 v) { return v < 0 ? u128(0) - u128(v) : u128(v); }

u128 gcd_u128(u128 a, u128 b) {
  while (b != 0) {
    if ((a >> 64) == 0 && (b >> 64) == 0) {
      return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
    }
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

mpz_class mpz_from_i128(i128 v) {
  u128 mag = uabs(v);
  std::uint64_t words[2] = {static_cast<std::uint64_t>(mag), static_cast<std::uint64_t>(mag >> 64)};
  mpz_class out;
  mpz_import(out.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, words);
  if (v < 0) out = -out;
  return out;
}

mpz_class mpz_from_i64(std::int64_t v) { return mpz_from_i128(v); }

bool mpz_fits_i64(const mpz_class& z) {
  static_assert(sizeof(long) == 8, "expects LP64");
  return mpz_fits_slong_p(z.get_mpz_t()) != 0;
}

std::size_t mix(std::size_t h, std::uint64_t v) {
  v ^= v >> 33;
  v *= 0xff51afd7ed558ccdULL;
  v ^= v >> 33;
  v *= 0xc4ceb9fe1a85ec53ULL;
  v ^= v >> 33;
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Rational::Rational(const Rational& other) : den_(other.den_) {
  if (other.is_small()) {
    num_ = other.num_;
  } else {
    big_ = new mpq_class(*other.big_);
  }
}

Rational::Rational(Rational&& other) noexcept : den_(other.den_) {
  if (other.is_small()) {
    num_ = other.num_;
  } else {
    big_ = other.big_;
    other.num_ = 0;
    other.den_ = 1;
  }
}

Rational& Rational::operator=(const Rational& other) {
  if (this == &other) return *this;
  Rational copy(other);
  return *this = std::move(copy);
}

Rational& Rational::operator=(Rational&& other) noexcept {
  if (this == &other) return *this;
  if (!is_small()) delete big_;
  den_ = other.den_;
  if (other.is_small()) {
    num_ = other.num_;
  } else {
    big_ = other.big_;
    other.num_ = 0;
    other.den_ = 1;
  }
  return *this;
}

Rational::~Rational() {
  if (!is_small()) delete big_;
}

Rational Rational::from_i128(i128 num, i128 den) {
  if (den == 0) throw Error(ErrorKind::ZeroDenominator, "denominator is zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) return Rational();
  u128 g = gcd_u128(uabs(num), u128(den));
  if (g > 1) {
    num /= i128(g);
    den /= i128(g);
  }
  if (fits_i64(num) && fits_i64(den)) {
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }
  mpq_class q(mpz_from_i128(num), mpz_from_i128(den));
  return Rational(BigTag{}, new mpq_class(std::move(q)));
}

Rational Rational::normalize(std::int64_t num, std::int64_t den) { return from_i128(num, den); }

Rational Rational::normalize(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw Error(ErrorKind::ZeroDenominator, "denominator is zero");
  mpq_class q(num, den);
  q.canonicalize();
  return from_mpq(q);
}

Rational Rational::from_mpq(const mpq_class& value) {
  if (mpz_fits_i64(value.get_num()) && mpz_fits_i64(value.get_den())) {
    Rational r;
    r.num_ = value.get_num().get_si();
    r.den_ = value.get_den().get_si();
    return r;
  }
  return Rational(BigTag{}, new mpq_class(value));
}

Rational Rational::parse(std::string_view text) {
  auto fail = [&](std::size_t pos, const std::string& what) -> Rational {
    throw ParseError(pos, {}, "malformed scalar '" + std::string(text) + "': " + what);
  };
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  std::size_t int_start = i;
  while (i < text.size() && is_digit(text[i])) ++i;
  std::string int_digits(text.substr(int_start, i - int_start));

  mpz_class num;
  mpz_class den = 1;
  if (i < text.size() && text[i] == '/') {
    if (int_digits.empty()) return fail(i, "missing numerator");
    ++i;
    std::size_t den_start = i;
    while (i < text.size() && is_digit(text[i])) ++i;
    if (i == den_start) return fail(i, "missing denominator digits");
    num = mpz_class(int_digits, 10);
    den = mpz_class(std::string(text.substr(den_start, i - den_start)), 10);
  } else if (i < text.size() && text[i] == '.') {
    ++i;
    std::size_t frac_start = i;
    while (i < text.size() && is_digit(text[i])) ++i;
    std::string frac_digits(text.substr(frac_start, i - frac_start));
    if (int_digits.empty() && frac_digits.empty()) return fail(i, "no digits");
    std::string all = (int_digits.empty() ? "0" : int_digits) + frac_digits;
    num = mpz_class(all, 10);
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_digits.size());
  } else {
    if (int_digits.empty()) return fail(i, "expected digits");
    num = mpz_class(int_digits, 10);
  }
  if (i != text.size()) return fail(i, "trailing characters");
  if (den == 0) throw Error(ErrorKind::ZeroDenominator, "scalar '" + std::string(text) + "'");
  if (negative) num = -num;
  return normalize(num, den);
}

std::string Rational::to_string() const {
  if (!is_small()) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

mpz_class Rational::numerator() const { return is_small() ? mpz_from_i64(num_) : big_->get_num(); }

mpz_class Rational::denominator() const { return is_small() ? mpz_from_i64(den_) : big_->get_den(); }

mpq_class Rational::to_mpq() const {
  if (!is_small()) return *big_;
  return mpq_class(mpz_from_i64(num_), mpz_from_i64(den_));
}

double Rational::to_double() const {
  if (!is_small()) return big_->get_d();
  return static_cast<double>(static_cast<long double>(num_) / static_cast<long double>(den_));
}

int Rational::sign() const noexcept {
  if (!is_small()) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

bool Rational::is_integer() const noexcept { return is_small() && den_ == 1; }

mpz_class Rational::floor() const {
  mpz_class out;
  if (is_small()) {
    mpz_fdiv_q(out.get_mpz_t(), mpz_from_i64(num_).get_mpz_t(), mpz_from_i64(den_).get_mpz_t());
  } else {
    mpz_fdiv_q(out.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
  }
  return out;
}

std::size_t Rational::hash() const noexcept {
  if (is_small()) {
    return mix(mix(0, static_cast<std::uint64_t>(num_)), static_cast<std::uint64_t>(den_));
  }
  std::size_t h = 0x51ed270b27a5c3e9ULL;
  const mpz_srcptr parts[2] = {big_->get_num_mpz_t(), big_->get_den_mpz_t()};
  for (mpz_srcptr z : parts) {
    h = mix(h, static_cast<std::uint64_t>(mpz_sgn(z)));
    std::size_t limbs = mpz_size(z);
    for (std::size_t k = 0; k < limbs; ++k) h = mix(h, mpz_getlimbn(z, static_cast<mp_size_t>(k)));
  }
  return h;
}

Rational Rational::operator-() const {
  if (is_small()) return from_i128(-i128(num_), den_);
  return from_mpq(-*big_);
}

Rational operator+(const Rational& a, const Rational& b) {
  if (a.is_small() && b.is_small()) {
    if (a.den_ == b.den_) return Rational::from_i128(i128(a.num_) + b.num_, a.den_);
    return Rational::from_i128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  return Rational::from_mpq(a.to_mpq() + b.to_mpq());
}

Rational operator-(const Rational& a, const Rational& b) {
  if (a.is_small() && b.is_small()) {
    if (a.den_ == b.den_) return Rational::from_i128(i128(a.num_) - b.num_, a.den_);
    return Rational::from_i128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  return Rational::from_mpq(a.to_mpq() - b.to_mpq());
}

Rational operator*(const Rational& a, const Rational& b) {
  if (a.is_small() && b.is_small()) {
    if (a.den_ == 1 && b.den_ == 1) return Rational::from_i128(i128(a.num_) * b.num_, 1);
    return Rational::from_i128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  return Rational::from_mpq(a.to_mpq() * b.to_mpq());
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw Error(ErrorKind::ZeroDenominator, "division by zero");
  if (a.is_small() && b.is_small()) {
    return Rational::from_i128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  return Rational::from_mpq(a.to_mpq() / b.to_mpq());
}

bool operator==(const Rational& a, const Rational& b) noexcept {
  if (a.is_small() != b.is_small()) return false;
  if (a.is_small()) return a.num_ == b.num_ && a.den_ == b.den_;
  return *a.big_ == *b.big_;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
  if (a.is_small() && b.is_small()) {
    i128 lhs = i128(a.num_) * b.den_;
    i128 rhs = i128(b.num_) * a.den_;
    return lhs <=> rhs;
  }
  int c = cmp(a.to_mpq(), b.to_mpq());
  return c <=> 0;
}

Rational pow(const Rational& base, unsigned exponent) {
  Rational result(1);
  Rational factor = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= factor;
    exponent >>= 1U;
    if (exponent > 0) factor *= factor;
  }
  return result;
}

Rational abs(const Rational& value) { return value.sign() < 0 ? -value : value; }

std::ostream& operator<<(std::ostream& os, const Rational& value) { return os << value.to_string(); }

}  // namespace expandlab
