#include <campana/norm.hpp>

#include <mutex>
#include <stdexcept>

namespace campana {

std::uint64_t mulmod(std::uint64_t x, std::uint64_t y, std::uint64_t q) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * y % q);
}

std::uint64_t powmod(std::uint64_t x, std::uint64_t e, std::uint64_t q) {
  std::uint64_t r = 1 % q;
  x %= q;
  while (e) {
    if (e & 1) r = mulmod(r, x, q);
    x = mulmod(x, x, q);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t x, std::uint64_t q) {
  if (x % q == 0) throw std::domain_error("invmod: zero has no inverse");
  return powmod(x, q - 2, q);
}

namespace {

void trim(std::vector<std::uint64_t>& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// f mod g in place; g trimmed and nonzero.
void reduce(std::vector<std::uint64_t>& f, const std::vector<std::uint64_t>& g, std::uint64_t q) {
  std::uint64_t inv_lead = invmod(g.back(), q);
  std::size_t dg = g.size() - 1;
  while (f.size() > dg) {
    std::uint64_t factor = mulmod(f.back(), inv_lead, q);
    std::size_t shift = f.size() - 1 - dg;
    if (factor != 0) {
      for (std::size_t i = 0; i < dg; ++i) {
        std::uint64_t sub = mulmod(factor, g[i], q);
        std::uint64_t& slot = f[shift + i];
        slot = slot >= sub ? slot - sub : slot + q - sub;
      }
    }
    f.pop_back();
    trim(f);
  }
}

}  // namespace

std::uint64_t resultant_mod(std::vector<std::uint64_t> f, std::vector<std::uint64_t> g, std::uint64_t q) {
  trim(f);
  trim(g);
  if (f.size() < 2) throw std::invalid_argument("resultant_mod: f must have positive degree");
  std::uint64_t res = 1;
  while (true) {
    if (g.empty()) return 0;
    std::size_t df = f.size() - 1, dg = g.size() - 1;
    if (dg == 0) return mulmod(res, powmod(g[0], df, q), q);
    std::vector<std::uint64_t> r = f;
    reduce(r, g, q);
    if (r.empty()) return 0;
    std::size_t dr = r.size() - 1;
    if ((df * dg) % 2 == 1) res = res == 0 ? 0 : q - res;
    res = mulmod(res, powmod(g.back(), df - dr, q), q);
    f = std::move(g);
    g = std::move(r);
  }
}

std::uint64_t norm_mod(const std::vector<std::uint64_t>& a, std::uint64_t p, std::uint64_t q) {
  std::size_t n = a.size();
  if (n == 0) throw std::invalid_argument("norm_mod: empty argument list");
  std::vector<std::uint64_t> f(n + 1, 0);
  f[0] = (q - p % q) % q;
  f[n] = 1;
  return resultant_mod(std::move(f), a, q);
}

std::vector<std::uint64_t> large_primes(std::size_t count) {
  static std::mutex mu;
  static std::vector<std::uint64_t> cache;
  std::lock_guard<std::mutex> lock(mu);
  std::uint64_t candidate = cache.empty() ? (std::uint64_t(1) << 62) - 1 : cache.back() - 2;
  while (cache.size() < count) {
    if (is_prime(BigInt(static_cast<unsigned long>(candidate)))) cache.push_back(candidate);
    candidate -= 2;
  }
  return {cache.begin(), cache.begin() + static_cast<std::ptrdiff_t>(count)};
}

Rational exact_norm(const std::vector<Rational>& a, const BigInt& p) {
  std::size_t n = a.size();
  if (n == 0) throw std::invalid_argument("exact_norm: empty argument list");
  if (p <= 0) throw std::invalid_argument("exact_norm: radicand must be positive");
  BigInt D = common_denominator(a);
  std::vector<BigInt> A;
  BigInt sum_abs = 0;
  for (const auto& x : a) {
    A.push_back(BigInt(x.num() * (D / x.den())));
    sum_abs += abs(A.back());
  }
  if (sum_abs == 0) return Rational(0);

  // |N| <= (p * sum|A_j|)^n; one extra bit for the sign.
  BigInt bound;
  BigInt base = p * sum_abs;
  mpz_pow_ui(bound.get_mpz_t(), base.get_mpz_t(), n);
  std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2) + 2;
  std::size_t count = bits / 61 + 1;
  std::vector<std::uint64_t> primes = large_primes(count);

  std::vector<Congruence> system;
  BigInt pr;
  for (std::uint64_t q : primes) {
    std::vector<std::uint64_t> coeffs;
    for (const auto& x : A) {
      BigInt r;
      mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), q);
      coeffs.push_back(r.get_ui());
    }
    BigInt pm;
    mpz_fdiv_r_ui(pm.get_mpz_t(), p.get_mpz_t(), q);
    system.push_back({BigInt(static_cast<unsigned long>(q)),
                      BigInt(static_cast<unsigned long>(norm_mod(coeffs, pm.get_ui(), q)))});
  }
  BigInt M = 1;
  for (const auto& c : system) M *= c.modulus;
  BigInt value = crt(system);
  if (2 * value > M) value -= M;
  BigInt Dn;
  mpz_pow_ui(Dn.get_mpz_t(), D.get_mpz_t(), n);
  return Rational(value, Dn);
}

}  // namespace campana
