#pragma once

// Places of Q, local Hilbert symbols and the place sets built from them.

#include <campana/arith.hpp>

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace campana {

/// A finite prime p or the unique real place of Q.
class Place {
 public:
  static Place infinity() { return Place(); }
  /// Throws std::invalid_argument unless p is prime.
  static Place prime(const BigInt& p);
  static Place prime(long p) { return prime(BigInt(p)); }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  /// The prime of a finite place; std::logic_error for the real place.
  const BigInt& p() const;

  /// "inf" or the decimal prime.
  std::string to_string() const;
  /// Parses "inf" or a prime.
  static Place parse(std::string_view text);

  friend bool operator==(const Place& x, const Place& y) {
    return x.infinite_ == y.infinite_ && (x.infinite_ || x.p_ == y.p_);
  }
  /// The real place sorts first, then primes ascending.
  friend std::strong_ordering operator<=>(const Place& x, const Place& y);

 private:
  Place() = default;
  bool infinite_ = true;
  BigInt p_;
};

std::ostream& operator<<(std::ostream& os, const Place& v);

/// Sorted, duplicate-free set of places.
class PlaceSet {
 public:
  PlaceSet() = default;
  PlaceSet(std::initializer_list<Place> places);
  static PlaceSet from_primes(const std::vector<BigInt>& primes);
  static PlaceSet from_primes(std::initializer_list<long> primes);

  void insert(const Place& v);
  bool contains(const Place& v) const;
  bool contains_prime(const BigInt& p) const;
  std::size_t size() const { return places_.size(); }
  bool empty() const { return places_.empty(); }

  auto begin() const { return places_.begin(); }
  auto end() const { return places_.end(); }
  const std::vector<Place>& places() const { return places_; }

  /// Primes of the finite places, ascending.
  std::vector<BigInt> primes() const;

  PlaceSet intersect(const PlaceSet& other) const;
  PlaceSet unite(const PlaceSet& other) const;

  /// "{inf, 2, 3}".
  std::string to_string() const;

  friend bool operator==(const PlaceSet&, const PlaceSet&) = default;

 private:
  std::vector<Place> places_;
};

std::ostream& operator<<(std::ostream& os, const PlaceSet& s);

/// (a,b)_v in {+1,-1}, by the classical closed-form local formulas.
/// Throws std::invalid_argument if a or b is zero.
int hilbert(const Rational& a, const Rational& b, const Place& v);

/// Smallest precision accepted by hilbert_oracle for (a, b) at p.
unsigned min_oracle_precision(const Rational& a, const Rational& b, const BigInt& p);
/// p-adic digits used when no precision is given: 2*max|v| + 3.
unsigned default_oracle_precision(const Rational& a, const Rational& b, const BigInt& p);

/// Brute-force local solvability of z^2 = a x^2 + b y^2 over Q_p. Searches
/// primitive triples modulo p^k (k <= precision) digit by digit and accepts a
/// residue solution once Hensel's lemma certifies that it lifts.
int hilbert_oracle(const Rational& a, const Rational& b, const BigInt& p,
                   unsigned precision);
int hilbert_oracle(const Rational& a, const Rational& b, const BigInt& p);

/// Real solvability by sign inspection of the form a x^2 + b y^2.
int hilbert_oracle_real(const Rational& a, const Rational& b);

/// Finite primes where v_p(lambda) is odd. Throws for lambda == 0.
PlaceSet odd_support(const Rational& lambda);

/// {inf, 2} together with the primes of a and b. The symbol (a,b)_v is +1
/// at every place outside this set.
PlaceSet scan_places(const Rational& a, const Rational& b);

/// {v : (a,b)_v = -1}.
PlaceSet delta(const Rational& a, const Rational& b);

/// delta(a,b) restricted to odd_support(a) + odd_support(b).
PlaceSet delta_upper(const Rational& a, const Rational& b);

/// delta_upper(a,b) intersected with delta_upper(c,d).
PlaceSet omega(const Rational& a, const Rational& b, const Rational& c, const Rational& d);

/// Product of (a,b)_v over scan_places(a,b) equals +1.
bool reciprocity_check(const Rational& a, const Rational& b);

/// Some b with (a,b)_v = -1, for a non-square a at v. Throws
/// std::invalid_argument if a is a square in Q_v and SearchExhausted if no
/// candidate within `cap` works.
Rational find_local_counterexample(const Rational& a, const Place& v,
                                   std::size_t cap = 10000);

}  // namespace campana
