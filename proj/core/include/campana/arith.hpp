#pragma once

// Exact integer/rational arithmetic: factorization, valuations, CRT and
// quadratic residue symbols. Every other module builds on these.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace campana {

using BigInt = mpz_class;

class Place;

/// Reduced fraction num/den with den >= 1. Zero is 0/1.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long value) : num_(value), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(BigInt value) : num_(std::move(value)), den_(1) {}  // NOLINT
  Rational(BigInt num, BigInt den);

  /// Accepts "p/q" or a bare integer, with an optional leading sign.
  static Rational parse(std::string_view text);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return sgn(num_); }

  Rational inverse() const;
  Rational abs() const;
  Rational pow(long exponent) const;

  /// "p/q", or "p" when the denominator is 1.
  std::string to_string() const;
  /// Always "p/q", used by the report/interchange formats.
  std::string to_fraction_string() const;

  friend Rational operator+(const Rational& x, const Rational& y);
  friend Rational operator-(const Rational& x, const Rational& y);
  friend Rational operator*(const Rational& x, const Rational& y);
  friend Rational operator/(const Rational& x, const Rational& y);
  friend Rational operator-(const Rational& x);

  Rational& operator+=(const Rational& y) { return *this = *this + y; }
  Rational& operator-=(const Rational& y) { return *this = *this - y; }
  Rational& operator*=(const Rational& y) { return *this = *this * y; }
  Rational& operator/=(const Rational& y) { return *this = *this / y; }

  friend bool operator==(const Rational& x, const Rational& y) {
    return x.num_ == y.num_ && x.den_ == y.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& x, const Rational& y);

 private:
  BigInt num_;
  BigInt den_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Ordering helper so BigInt can key ordered containers without relying on
/// expression-template comparison.
struct BigIntLess {
  bool operator()(const BigInt& x, const BigInt& y) const { return cmp(x, y) < 0; }
};

struct Factorization {
  int sign = 1;
  std::map<BigInt, long, BigIntLess> factors;

  /// sign * prod p^e, reconstructed exactly.
  Rational product() const;
};

/// Probable-prime test. Deterministic below 3.3e24 (first twelve prime
/// bases), strong-probable-prime with extra fixed bases above that.
bool is_prime(const BigInt& n);

/// Prime factorization of an integer n >= 1 (trial division to 10^6, then
/// Pollard-Brent rho).
std::map<BigInt, unsigned, BigIntLess> factor_integer(const BigInt& n);

/// Throws std::invalid_argument for n == 0.
Factorization factorize(const Rational& n);

/// Primes dividing the numerator or the denominator, ascending.
std::vector<BigInt> prime_support(const Rational& r);

/// Exponent of p in r. Throws std::invalid_argument for r == 0 or p < 2.
long valuation(const Rational& r, const BigInt& p);

/// Integer with a +infinity sentinel; used for valuations of zero.
class ExtInt {
 public:
  constexpr ExtInt(long value) : value_(value), infinite_(false) {}  // NOLINT
  static constexpr ExtInt infinity() { return ExtInt(0, true); }

  constexpr bool is_infinite() const { return infinite_; }
  /// Throws std::logic_error on the infinite sentinel.
  long value() const;

  friend constexpr bool operator==(ExtInt x, ExtInt y) {
    return x.infinite_ == y.infinite_ && (x.infinite_ || x.value_ == y.value_);
  }
  friend constexpr std::strong_ordering operator<=>(ExtInt x, ExtInt y) {
    if (x.infinite_ || y.infinite_) return x.infinite_ <=> y.infinite_;
    return x.value_ <=> y.value_;
  }

 private:
  constexpr ExtInt(long value, bool infinite) : value_(value), infinite_(infinite) {}
  long value_;
  bool infinite_;
};

/// valuation() extended with v_p(0) = +infinity.
ExtInt valuation_ext(const Rational& r, const BigInt& p);

struct Congruence {
  BigInt modulus;
  BigInt residue;
};

/// Least nonnegative x with x = residue (mod modulus) for every entry.
/// Moduli must be positive and pairwise coprime; otherwise
/// std::invalid_argument. An empty system yields 0.
BigInt crt(std::span<const Congruence> system);

/// Legendre symbol (a/p) for an odd prime p; std::invalid_argument otherwise.
int legendre(const BigInt& a, const BigInt& p);

/// Splits r = p^v * u with u a p-adic unit and returns v. The unit is
/// returned as the integer num'*den' (same square class as num'/den').
long split_unit(const Rational& r, const BigInt& p, BigInt& unit);

/// Whether a is a square in the completion Q_v. Requires a != 0.
bool is_square_local(const Rational& a, const Place& v);

/// Exact square root of a rational square; false if a is not a square in Q.
bool rational_sqrt(const Rational& a, Rational& root);

/// Least common multiple of the denominators of values (1 for an empty span).
BigInt common_denominator(std::span<const Rational> values);

}  // namespace campana
