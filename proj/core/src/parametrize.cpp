#include <campana/parametrize.hpp>

#include <campana/errors.hpp>

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace campana {

namespace {

void check_deadline(const SearchOptions& options) {
  if (options.deadline && std::chrono::steady_clock::now() > *options.deadline) {
    throw SearchCancelled("construction search passed its deadline");
  }
}

BigInt product_except(const std::vector<BigInt>& S, std::size_t skip) {
  BigInt out = 1;
  for (std::size_t i = 0; i < S.size(); ++i) {
    if (i != skip) out *= S[i];
  }
  return out;
}

void check_distinct_primes(const std::vector<BigInt>& S) {
  for (std::size_t i = 0; i < S.size(); ++i) {
    if (!is_prime(S[i])) throw std::invalid_argument(S[i].get_str() + " is not prime");
    for (std::size_t j = 0; j < i; ++j) {
      if (S[i] == S[j]) throw std::invalid_argument("repeated prime " + S[i].get_str());
    }
  }
}

std::vector<BigInt> uniformizers(const std::vector<BigInt>& S) {
  std::vector<BigInt> ys;
  for (std::size_t i = 0; i < S.size(); ++i) {
    std::vector<Congruence> system{{BigInt(S[i] * S[i]), S[i]}, {product_except(S, i), 1}};
    ys.push_back(crt(system));
  }
  return ys;
}

// Solves M x = rhs over F_2 (rows as bit masks over at most 64 columns).
// Returns a particular solution and a basis of the kernel, or nothing.
struct F2Solution {
  std::uint64_t particular = 0;
  std::vector<std::uint64_t> kernel;
};

std::optional<F2Solution> solve_f2(std::vector<std::uint64_t> rows, std::vector<int> rhs, int ncols) {
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (int col = 0; col < ncols && r < rows.size(); ++col) {
    std::size_t pivot = r;
    while (pivot < rows.size() && !((rows[pivot] >> col) & 1)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[r]);
    std::swap(rhs[pivot], rhs[r]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != r && ((rows[i] >> col) & 1)) {
        rows[i] ^= rows[r];
        rhs[i] ^= rhs[r];
      }
    }
    pivot_col.push_back(col);
    ++r;
  }
  for (std::size_t i = r; i < rows.size(); ++i) {
    if (rhs[i]) return std::nullopt;
  }
  F2Solution sol;
  std::uint64_t pivots = 0;
  for (std::size_t i = 0; i < r; ++i) {
    pivots |= std::uint64_t(1) << pivot_col[i];
    if (rhs[i]) sol.particular |= std::uint64_t(1) << pivot_col[i];
  }
  for (int col = 0; col < ncols; ++col) {
    if ((pivots >> col) & 1) continue;
    std::uint64_t v = std::uint64_t(1) << col;
    for (std::size_t i = 0; i < r; ++i) {
      if ((rows[i] >> col) & 1) v |= std::uint64_t(1) << pivot_col[i];
    }
    sol.kernel.push_back(v);
  }
  return sol;
}

}  // namespace

BigInt uniformizer_product(const std::vector<BigInt>& S) {
  if (S.empty()) throw std::invalid_argument("uniformizer_product: empty set of primes");
  check_distinct_primes(S);
  BigInt a = 1;
  for (const auto& y : uniformizers(S)) a *= y;
  return a;
}

BigInt primitive_root(const BigInt& q) {
  if (!is_prime(q)) throw std::invalid_argument("primitive_root: " + q.get_str() + " is not prime");
  if (q == 2) return 1;
  BigInt order = q - 1;
  std::vector<BigInt> divisors;
  for (const auto& [r, e] : factor_integer(order)) divisors.push_back(order / r);
  for (BigInt g = 2; g < q; ++g) {
    bool generates = true;
    for (const auto& d : divisors) {
      BigInt x;
      mpz_powm(x.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t(), q.get_mpz_t());
      if (x == 1) {
        generates = false;
        break;
      }
    }
    if (generates) return g;
  }
  throw std::logic_error("primitive_root: no generator found");
}

Rational find_b(const Rational& a, const PlaceSet& S, const SearchOptions& options, std::size_t* steps) {
  if (a.is_zero()) throw std::invalid_argument("find_b: a must be nonzero");
  if (S.size() % 2 != 0) throw std::invalid_argument("find_b: S must have even cardinality");
  for (const auto& v : S) {
    if (v.is_infinite()) throw std::invalid_argument("find_b: S must contain finite primes only");
    if (is_square_local(a, v)) {
      throw std::invalid_argument("find_b: a is a square at " + v.to_string());
    }
  }
  if (S.empty()) return Rational(1);

  // Generators of the candidate group: -1, 2 and the primes of S and of a.
  std::vector<Rational> gens{Rational(-1), Rational(2)};
  PlaceSet base_places{Place::infinity(), Place::prime(2)};
  for (const auto& p : S.unite(PlaceSet::from_primes(prime_support(a))).primes()) {
    base_places.insert(Place::prime(p));
    if (p != 2) gens.push_back(Rational(p));
  }
  if (gens.size() > 63) throw std::invalid_argument("find_b: too many primes in S and supp(a)");

  std::size_t used = 0;
  auto bump = [&] {
    if (++used > options.max_steps) {
      if (steps) *steps += used;
      throw SearchExhausted("find_b: step cap of " + std::to_string(options.max_steps) + " reached");
    }
  };

  // Symbols of a against each generator at the base places are reused for
  // every auxiliary prime.
  std::vector<std::vector<int>> base_symbols;
  for (const auto& v : base_places) {
    std::vector<int> row;
    for (const auto& g : gens) row.push_back(hilbert(a, g, v) == -1);
    base_symbols.push_back(row);
  }

  std::vector<BigInt> aux{1};
  for (unsigned long q = 3; q <= options.aux_prime_bound; q += 2) {
    if (is_prime(BigInt(q)) && !base_places.contains(Place::prime(long(q)))) aux.push_back(BigInt(q));
  }

  for (const auto& qp : aux) {
    check_deadline(options);
    bump();
    PlaceSet places = base_places;
    if (qp != 1) places.insert(Place::prime(qp));
    std::vector<std::uint64_t> rows;
    std::vector<int> rhs;
    std::size_t bi = 0;
    for (const auto& v : places) {
      std::uint64_t row = 0;
      if (qp != 1 && v.is_finite() && v.p() == qp) {
        for (std::size_t g = 0; g < gens.size(); ++g) {
          if (hilbert(a, gens[g], v) == -1) row |= std::uint64_t(1) << g;
        }
      } else {
        for (std::size_t g = 0; g < gens.size(); ++g) {
          if (base_symbols[bi][g]) row |= std::uint64_t(1) << g;
        }
        ++bi;
      }
      int target = S.contains(v) ? 1 : 0;
      int from_aux = (qp != 1 && hilbert(a, Rational(qp), v) == -1) ? 1 : 0;
      rows.push_back(row);
      rhs.push_back(target ^ from_aux);
    }
    auto sol = solve_f2(rows, rhs, int(gens.size()));
    if (!sol) continue;

    auto build = [&](std::uint64_t mask) {
      Rational b(qp);
      for (std::size_t g = 0; g < gens.size(); ++g) {
        if ((mask >> g) & 1) b *= gens[g];
      }
      return b;
    };
    std::uint64_t best = sol->particular;
    if (sol->kernel.size() <= 12) {
      Rational best_b = build(best);
      for (std::uint64_t combo = 1; combo < (std::uint64_t(1) << sol->kernel.size()); ++combo) {
        bump();
        std::uint64_t mask = sol->particular;
        for (std::size_t k = 0; k < sol->kernel.size(); ++k) {
          if ((combo >> k) & 1) mask ^= sol->kernel[k];
        }
        Rational b = build(mask);
        auto height = [](const Rational& x) { return x.abs(); };
        if (height(b) < height(best_b) || (height(b) == height(best_b) && b.sign() > best_b.sign())) {
          best = mask;
          best_b = b;
        }
      }
    }
    Rational b = build(best);
    bump();
    if (delta(a, b) == S) {
      if (steps) *steps += used;
      return b;
    }
  }
  if (steps) *steps += used;
  throw SearchExhausted("find_b: no candidate supported on S, supp(a) and one auxiliary prime <= " +
                        std::to_string(options.aux_prime_bound));
}

EvenConstruction construct_even(const PlaceSet& S, const SearchOptions& options, std::size_t* steps) {
  if (S.size() % 2 != 0) throw std::invalid_argument("construct_even: |S| must be even");
  if (S.empty()) return {Rational(1), Rational(1)};
  Rational a(uniformizer_product(S.primes()));
  Rational b = find_b(a, S, options, steps);
  return {a, b};
}

OddConstruction construct_odd(const PlaceSet& S, const std::vector<BigInt>& excluded,
                              const SearchOptions& options, std::size_t* steps) {
  if (S.size() % 2 != 1) throw std::invalid_argument("construct_odd: |S| must be odd");
  BigInt q = 3;
  while (!is_prime(q) || S.contains_prime(q) ||
         std::find(excluded.begin(), excluded.end(), q) != excluded.end()) {
    q += 2;
  }
  std::vector<BigInt> primes = S.primes();
  primes.push_back(q);
  check_distinct_primes(primes);
  std::vector<BigInt> ys = uniformizers(primes);
  const BigInt& y_q = ys.back();
  BigInt rest = 1;  // a0 / y_q
  for (std::size_t i = 0; i + 1 < ys.size(); ++i) rest *= ys[i];
  BigInt a0 = rest * y_q;

  BigInt g = primitive_root(q);
  BigInt inv;
  mpz_invert(inv.get_mpz_t(), rest.get_mpz_t(), q.get_mpz_t());
  BigInt t0 = g * inv % q;
  BigInt prod_S = 1;
  for (const auto& p : S.primes()) prod_S *= p;
  std::vector<Congruence> system{{q, t0}, {prod_S, 1}};
  BigInt tau = crt(system);

  Rational a(BigInt(tau * y_q * a0));
  PlaceSet S_prime = S;
  S_prime.insert(Place::prime(q));
  Rational b = find_b(a, S_prime, options, steps);
  return {a, b, q};
}

ConstructionReport construct_omega(const PlaceSet& S, const SearchOptions& options) {
  for (const auto& v : S) {
    if (v.is_infinite()) throw std::invalid_argument("construct_omega: S must contain finite primes only");
  }
  ConstructionReport report;
  report.target = S;
  if (S.size() % 2 == 0) {
    auto [a, b] = construct_even(S, options, &report.search_steps);
    report.a = a;
    report.b = b;
    report.c = a;
    report.d = b;
  } else {
    OddConstruction first = construct_odd(S, {}, options, &report.search_steps);
    OddConstruction second = construct_odd(S, {first.q}, options, &report.search_steps);
    report.a = first.a;
    report.b = first.b;
    report.c = second.a;
    report.d = second.b;
    report.auxiliary_primes = {first.q, second.q};
  }
  report.achieved = omega(report.a, report.b, report.c, report.d);
  return report;
}

}  // namespace campana
