#pragma once

// Constructing (a, b, c, d) whose omega set is a prescribed finite set of
// primes.

#include <campana/arith.hpp>
#include <campana/places.hpp>

#include <chrono>
#include <cstddef>
#include <optional>
#include <vector>

namespace campana {

struct SearchOptions {
  /// Upper bound on the number of candidates examined by find_b.
  std::size_t max_steps = 100000;
  /// Auxiliary primes q' in find_b range over odd primes up to this bound.
  unsigned long aux_prime_bound = 1000;
  /// Searches throw SearchCancelled once this time point has passed.
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct ConstructionReport {
  Rational a, b, c, d;
  PlaceSet target;
  PlaceSet achieved;
  std::size_t search_steps = 0;
  std::vector<BigInt> auxiliary_primes;
};

/// prod over p in S of y_p = crt(p mod p^2, 1 mod prod of the other primes).
/// v_p of the result is 1 for every p in S.
BigInt uniformizer_product(const std::vector<BigInt>& S);

/// A generator of (Z/q)^*, smallest first.
BigInt primitive_root(const BigInt& q);

/// b with (a,b)_v = -1 exactly for v in S. Requires |S| even and a a
/// non-square at every p in S. `steps` (if given) is incremented by the
/// number of candidates examined.
Rational find_b(const Rational& a, const PlaceSet& S, const SearchOptions& options = {},
                std::size_t* steps = nullptr);

struct EvenConstruction {
  Rational a, b;
};

struct OddConstruction {
  Rational a, b;
  BigInt q;
};

/// Delta(a,b) = Delta^(a,b) = S for |S| even; (1,1) for the empty set.
EvenConstruction construct_even(const PlaceSet& S, const SearchOptions& options = {},
                                std::size_t* steps = nullptr);

/// Delta(a,b) = S + {q} and Delta(a,b) meets the odd support of a in S, for
/// |S| odd. q is the smallest odd prime outside S and `excluded`.
OddConstruction construct_odd(const PlaceSet& S, const std::vector<BigInt>& excluded = {},
                              const SearchOptions& options = {}, std::size_t* steps = nullptr);

/// (a,b,c,d) with omega(a,b,c,d) = S. `achieved` is recomputed from scratch.
ConstructionReport construct_omega(const PlaceSet& S, const SearchOptions& options = {});

}  // namespace campana
