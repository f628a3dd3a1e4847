#include <campana/parametrize.hpp>

#include <campana/errors.hpp>

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace campana;

namespace {

Rational q(long n, long d = 1) { return Rational(BigInt(n), BigInt(d)); }

oracle::HilbertBrute& brute() {
  static oracle::HilbertBrute b;
  return b;
}

// Delta^{a,b} recomputed with the test-side symbols: the residue search for
// small primes and the mod-p lifting argument above that.
PlaceSet delta_upper_reference(const Rational& a, const Rational& b) {
  PlaceSet out;
  for (const Rational* x : {&a, &b}) {
    for (const auto& p : prime_support(*x)) {
      if (oracle::valuation(*x, p) % 2 == 0) continue;
      int s = p <= 47 ? brute().symbol(a, b, p.get_si()) : oracle::hilbert_odd_prime(a, b, p);
      if (s == -1) out.insert(Place::prime(p));
    }
  }
  return out;
}

std::vector<PlaceSet> subsets_of(const std::vector<long>& base) {
  std::vector<PlaceSet> out;
  for (unsigned mask = 0; mask < (1u << base.size()); ++mask) {
    PlaceSet s;
    for (unsigned i = 0; i < base.size(); ++i) {
      if (mask >> i & 1) s.insert(Place::prime(base[i]));
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST(Uniformizer, Examples) {
  BigInt a = uniformizer_product({3, 5});
  EXPECT_EQ(a, 1155);
  EXPECT_EQ(oracle::valuation(Rational(a), 3), 1);
  EXPECT_EQ(oracle::valuation(Rational(a), 5), 1);
  EXPECT_EQ(uniformizer_product({3}), 3);
  std::mt19937_64 rng(31);
  const std::vector<long> pool = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 97};
  for (int i = 0; i < 200; ++i) {
    std::vector<BigInt> S;
    for (long p : pool) {
      if (rng() % 3 == 0) S.push_back(p);
    }
    if (S.empty()) continue;
    BigInt u = uniformizer_product(S);
    for (const auto& p : S) ASSERT_EQ(oracle::valuation(Rational(u), p.get_si()), 1);
  }
}

TEST(PrimitiveRoot, Orders) {
  EXPECT_EQ(primitive_root(5), 2);
  for (long p : {3, 7, 11, 13, 23, 97, 101}) {
    long g = primitive_root(p).get_si();
    long x = 1;
    for (long k = 1; k < p - 1; ++k) {
      x = x * g % p;
      ASSERT_NE(x, 1) << g << " mod " << p;
    }
  }
}

TEST(FindB, Examples) {
  EXPECT_EQ(find_b(q(7), PlaceSet{}), q(1));
  Rational a = q(1155);
  Rational b = find_b(a, PlaceSet::from_primes({3, 5}));
  EXPECT_EQ(delta(a, b), PlaceSet::from_primes({3, 5}));
  Rational a2 = q(14);
  Rational b2 = find_b(a2, PlaceSet::from_primes({2, 7}));
  EXPECT_EQ(delta(a2, b2), PlaceSet::from_primes({2, 7}));
  EXPECT_EQ(brute().symbol(a2, b2, 2), -1);
  EXPECT_EQ(brute().symbol(a2, b2, 7), -1);
}

TEST(FindB, CapsAndDeadline) {
  SearchOptions tiny;
  tiny.max_steps = 1;
  EXPECT_THROW(find_b(q(1155), PlaceSet::from_primes({3, 5}), tiny), SearchExhausted);
  SearchOptions late;
  late.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
  EXPECT_THROW(find_b(q(1155), PlaceSet::from_primes({3, 5}), late), SearchCancelled);
}

TEST(ConstructEven, Examples) {
  EvenConstruction e = construct_even(PlaceSet{});
  EXPECT_EQ(e.a, q(1));
  EXPECT_EQ(e.b, q(1));
  EvenConstruction f = construct_even(PlaceSet::from_primes({3, 5}));
  EXPECT_EQ(f.a, q(1155));
  EXPECT_EQ(delta_upper(f.a, f.b), PlaceSet::from_primes({3, 5}));
  EXPECT_EQ(delta_upper_reference(f.a, f.b), PlaceSet::from_primes({3, 5}));
  EXPECT_THROW(construct_even(PlaceSet::from_primes({3})), std::invalid_argument);
}

TEST(ConstructEven, RandomEvenSets) {
  std::mt19937_64 rng(32);
  const std::vector<long> pool = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
  for (int i = 0; i < 20; ++i) {
    PlaceSet S;
    std::size_t k = 2 * (rng() % 3);
    while (S.size() < k) S.insert(Place::prime(pool[rng() % pool.size()]));
    EvenConstruction e = construct_even(S);
    ASSERT_EQ(delta(e.a, e.b), S);
    ASSERT_EQ(delta_upper(e.a, e.b), S);
    for (const auto& v : delta(e.a, e.b)) ASSERT_TRUE(odd_support(e.a).contains(v));
  }
}

TEST(ConstructOdd, Examples) {
  OddConstruction o = construct_odd(PlaceSet::from_primes({3}));
  EXPECT_EQ(o.q, 5);
  EXPECT_EQ(oracle::valuation(o.a, 3), 1);
  EXPECT_EQ(oracle::valuation(o.a, 5), 2);
  EXPECT_FALSE(is_square_local(o.a, Place::prime(5)));
  EXPECT_EQ(delta(o.a, o.b), PlaceSet::from_primes({3, 5}));
  EXPECT_EQ(delta(o.a, o.b).intersect(odd_support(o.a)), PlaceSet::from_primes({3}));

  OddConstruction o5 = construct_odd(PlaceSet::from_primes({5}));
  EXPECT_EQ(o5.q, 3);
  EXPECT_EQ(delta(o5.a, o5.b), PlaceSet::from_primes({3, 5}));
  EXPECT_EQ(delta(o5.a, o5.b).intersect(odd_support(o5.a)), PlaceSet::from_primes({5}));

  OddConstruction skip = construct_odd(PlaceSet::from_primes({3}), {BigInt(5)});
  EXPECT_EQ(skip.q, 7);
}

TEST(ConstructOmega, Examples) {
  ConstructionReport empty = construct_omega(PlaceSet{});
  EXPECT_EQ(empty.a, q(1));
  EXPECT_EQ(empty.d, q(1));
  EXPECT_TRUE(empty.achieved.empty());

  ConstructionReport r = construct_omega(PlaceSet::from_primes({3, 5}));
  EXPECT_EQ(r.achieved, PlaceSet::from_primes({3, 5}));

  ConstructionReport odd = construct_omega(PlaceSet::from_primes({2, 3, 5}));
  EXPECT_EQ(odd.achieved, PlaceSet::from_primes({2, 3, 5}));
  ASSERT_EQ(odd.auxiliary_primes.size(), 2u);
  EXPECT_NE(odd.auxiliary_primes[0], odd.auxiliary_primes[1]);
}

TEST(ConstructOmega, SubsetsRoundTrip) {
  for (const auto& S : subsets_of({2, 3, 5, 7})) {
    ConstructionReport r = construct_omega(S);
    ASSERT_EQ(r.achieved, S);
    PlaceSet independent = delta_upper_reference(r.a, r.b).intersect(delta_upper_reference(r.c, r.d));
    ASSERT_EQ(independent, S) << S;
    ASSERT_LT(r.search_steps, SearchOptions{}.max_steps);
  }
}
