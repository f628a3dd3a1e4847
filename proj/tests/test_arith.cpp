#include <campana/arith.hpp>
#include <campana/places.hpp>

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace campana;

namespace {

Rational q(long n, long d = 1) { return Rational(BigInt(n), BigInt(d)); }

Rational random_rational(std::mt19937_64& rng, long bound) {
  long n = 0;
  while (n == 0) n = long(rng() % (2 * bound + 1)) - bound;
  long d = long(rng() % bound) + 1;
  return q(n, d);
}

}  // namespace

TEST(Rational, CanonicalForm) {
  Rational r = q(6, -4);
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 2);
  EXPECT_EQ(q(0, 7).den(), 1);
  EXPECT_EQ(Rational::parse("-10/4"), q(-5, 2));
  EXPECT_EQ(Rational::parse("12"), q(12));
  EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
  EXPECT_THROW(Rational(BigInt(1), BigInt(0)), std::invalid_argument);
  EXPECT_EQ(q(7, 3).to_string(), "7/3");
  EXPECT_EQ(q(4).to_fraction_string(), "4/1");
}

TEST(Rational, Arithmetic) {
  EXPECT_EQ(q(1, 2) + q(1, 3), q(5, 6));
  EXPECT_EQ(q(1, 2) - q(1, 3), q(1, 6));
  EXPECT_EQ(q(2, 3) * q(9, 4), q(3, 2));
  EXPECT_EQ(q(2, 3) / q(4, 9), q(3, 2));
  EXPECT_EQ(q(-2, 3).inverse(), q(-3, 2));
  EXPECT_EQ(q(2, 3).pow(-2), q(9, 4));
  EXPECT_LT(q(-1, 2), q(1, 3));
  EXPECT_THROW(q(0).inverse(), std::domain_error);
}

TEST(Factorize, Examples) {
  Factorization f = factorize(q(1155));
  EXPECT_EQ(f.sign, 1);
  std::map<BigInt, long, BigIntLess> expect{{3, 1}, {5, 1}, {7, 1}, {11, 1}};
  EXPECT_EQ(f.factors, expect);

  Factorization one = factorize(q(1));
  EXPECT_EQ(one.sign, 1);
  EXPECT_TRUE(one.factors.empty());

  Factorization g = factorize(q(-8, 9));
  EXPECT_EQ(g.sign, -1);
  std::map<BigInt, long, BigIntLess> expect_g{{2, 3}, {3, -2}};
  EXPECT_EQ(g.factors, expect_g);

  EXPECT_THROW(factorize(q(0)), std::invalid_argument);
}

TEST(Factorize, RoundTripAgainstTrialDivision) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 10000; ++i) {
    long n = long(rng() % 2000000) + 1, d = long(rng() % 2000000) + 1;
    Rational r = q(rng() % 2 ? n : -n, d);
    Factorization f = factorize(r);
    ASSERT_EQ(f.product(), r);
    for (const auto& [p, e] : f.factors) {
      ASSERT_TRUE(oracle::small_is_prime(p.get_si()));
      ASSERT_EQ(e, oracle::valuation(r, p.get_si()));
    }
  }
}

TEST(Factorize, LargeSemiprimes) {
  // Two primes above the trial-division range.
  BigInt p("1000000007"), r("998244353");
  auto f = factor_integer(p * r);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f.at(p), 1u);
  EXPECT_EQ(f.at(r), 1u);
  BigInt big("170141183460469231731687303715884105727");  // 2^127 - 1
  EXPECT_TRUE(is_prime(big));
  EXPECT_FALSE(is_prime(big * 3));
  auto g = factor_integer(BigInt("18446744073709551617"));  // 2^64 + 1
  std::map<BigInt, unsigned, BigIntLess> expect{{BigInt("274177"), 1}, {BigInt("67280421310721"), 1}};
  EXPECT_EQ(g, expect);
}

TEST(Valuation, Examples) {
  EXPECT_EQ(valuation(q(1, 8), BigInt(2)), -3);
  EXPECT_EQ(valuation(q(1155), BigInt(5)), 1);
  EXPECT_EQ(valuation(q(7, 3), BigInt(5)), 0);
  EXPECT_THROW(valuation(q(0), BigInt(5)), std::invalid_argument);
  EXPECT_TRUE(valuation_ext(q(0), BigInt(5)).is_infinite());
  EXPECT_EQ(valuation_ext(q(50), BigInt(5)), ExtInt(2));
  EXPECT_LT(ExtInt(1000), ExtInt::infinity());
}

TEST(Valuation, Additive) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 5000; ++i) {
    Rational r = random_rational(rng, 5000), s = random_rational(rng, 5000);
    for (long p : {2, 3, 5, 7, 97}) {
      ASSERT_EQ(valuation(r * s, BigInt(p)), valuation(r, BigInt(p)) + valuation(s, BigInt(p)));
      ASSERT_EQ(valuation(r, BigInt(p)), oracle::valuation(r, p));
    }
  }
}

TEST(Crt, Examples) {
  std::vector<Congruence> a{{9, 3}, {5, 1}};
  // Expected value from a scan of 0..44.
  EXPECT_EQ(oracle::crt_scan({{9, 3}, {5, 1}}), 21);
  EXPECT_EQ(crt(a), 21);
  std::vector<Congruence> b{{7, 0}};
  EXPECT_EQ(crt(b), 0);
  std::vector<Congruence> c{{4, 1}, {9, 1}};
  EXPECT_EQ(crt(c), 1);
  std::vector<Congruence> bad{{6, 1}, {4, 3}};
  EXPECT_THROW(crt(bad), std::invalid_argument);
}

TEST(Crt, MatchesScan) {
  std::mt19937_64 rng(13);
  const std::vector<long> moduli = {3, 4, 5, 7, 11, 13, 9, 25};
  for (int i = 0; i < 500; ++i) {
    std::vector<std::pair<long, long>> sys;
    std::vector<Congruence> cs;
    for (long m : moduli) {
      if (rng() % 2) continue;
      bool coprime = true;
      for (auto& [mm, r] : sys) coprime = coprime && std::gcd(mm, m) == 1;
      if (!coprime) continue;
      long r = long(rng() % 50) - 25;
      sys.push_back({m, r});
      cs.push_back({BigInt(m), BigInt(r)});
    }
    if (sys.empty()) continue;
    ASSERT_EQ(crt(cs), oracle::crt_scan(sys));
  }
}

TEST(Legendre, Examples) {
  EXPECT_EQ(legendre(BigInt(2), BigInt(5)), -1);
  EXPECT_EQ(legendre(BigInt(4), BigInt(7)), 1);
  EXPECT_EQ(legendre(BigInt(10), BigInt(5)), 0);
  EXPECT_THROW(legendre(BigInt(3), BigInt(2)), std::invalid_argument);
  EXPECT_THROW(legendre(BigInt(3), BigInt(9)), std::invalid_argument);
}

TEST(Legendre, EulerCriterionAndMultiplicativity) {
  for (long p : {3, 5, 7, 11, 13, 47, 101, 997}) {
    for (long a = -60; a <= 60; ++a) {
      ASSERT_EQ(legendre(BigInt(a), BigInt(p)), oracle::euler_legendre(a, p)) << a << " mod " << p;
      for (long b : {2L, -1L, 3L, 17L}) {
        ASSERT_EQ(legendre(BigInt(a * b), BigInt(p)), legendre(BigInt(a), BigInt(p)) * legendre(BigInt(b), BigInt(p)));
      }
    }
  }
}

TEST(SquareLocal, Examples) {
  EXPECT_TRUE(is_square_local(q(2), Place::prime(7)));
  EXPECT_FALSE(is_square_local(q(-1), Place::infinity()));
  EXPECT_TRUE(is_square_local(q(17), Place::prime(2)));
  EXPECT_FALSE(is_square_local(q(5), Place::prime(2)));
  EXPECT_FALSE(is_square_local(q(2), Place::prime(2)));
  EXPECT_TRUE(is_square_local(q(1, 4), Place::prime(3)));
}

TEST(SquareLocal, AgreesWithSquareSearch) {
  // At 2: a unit is a 2-adic square iff it is a square mod 2^7 (Hensel
  // needs mod 8); check the criterion against a table of squares mod 128.
  std::vector<char> sq(128, 0);
  for (long z = 0; z < 128; ++z) sq[z * z % 128] = 1;
  for (long u = 1; u < 400; u += 2) EXPECT_EQ(is_square_local(q(u), Place::prime(2)), bool(sq[u % 128])) << u;
  for (long p : {3, 5, 7, 11}) {
    for (long u = 1; u < 200; ++u) {
      if (u % p == 0) continue;
      EXPECT_EQ(is_square_local(q(u), Place::prime(p)), oracle::euler_legendre(u, p) == 1);
      EXPECT_FALSE(is_square_local(q(u * p), Place::prime(p)));
    }
  }
}

TEST(SquareLocal, SquaresAreSquaresEverywhere) {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 2000; ++i) {
    Rational a = random_rational(rng, 1000);
    for (long p : {2, 3, 5, 7, 11, 13}) ASSERT_TRUE(is_square_local(a * a, Place::prime(p)));
    ASSERT_TRUE(is_square_local(a * a, Place::infinity()));
  }
}

TEST(RationalSqrt, Basic) {
  Rational r;
  EXPECT_TRUE(rational_sqrt(q(9, 4), r));
  EXPECT_EQ(r, q(3, 2));
  EXPECT_FALSE(rational_sqrt(q(2), r));
  EXPECT_FALSE(rational_sqrt(q(-4), r));
  EXPECT_TRUE(rational_sqrt(q(0), r));
  EXPECT_EQ(r, q(0));
}

TEST(CommonDenominator, Basic) {
  std::vector<Rational> v{q(1, 4), q(5, 6), q(3)};
  EXPECT_EQ(common_denominator(v), 12);
  EXPECT_EQ(common_denominator(std::vector<Rational>{}), 1);
}
