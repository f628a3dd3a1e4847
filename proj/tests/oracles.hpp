#pragma once

// Slow, independent reference implementations used only by the tests. None
// of these call into the library's number theory.

#include <campana/arith.hpp>
#include <campana/circuit.hpp>

#include <complex>
#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

namespace oracle {

using campana::BigInt;
using campana::Rational;

inline long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Exponent of p in a nonzero integer by repeated division.
inline long int_valuation(BigInt n, long p) {
  if (n < 0) n = -n;
  long v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline long int_valuation(BigInt n, const BigInt& p) {
  if (n < 0) n = -n;
  long v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline long valuation(const Rational& r, long p) { return int_valuation(r.num(), p) - int_valuation(r.den(), p); }
inline long valuation(const Rational& r, const BigInt& p) {
  return int_valuation(r.num(), p) - int_valuation(r.den(), p);
}

// Trial-division factorization of |n|, n != 0.
inline std::map<long, long> trial_factor(long n) {
  std::map<long, long> out;
  if (n < 0) n = -n;
  for (long p = 2; p * p <= n; ++p) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  if (n > 1) ++out[n];
  return out;
}

inline bool small_is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Euler's criterion.
inline int euler_legendre(long a, long p) {
  long x = ((a % p) + p) % p;
  if (x == 0) return 0;
  long r = 1, e = (p - 1) / 2;
  while (e > 0) {
    if (e & 1) r = r * x % p;
    x = x * x % p;
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

// Least nonnegative solution by scanning [0, prod m).
inline long crt_scan(const std::vector<std::pair<long, long>>& system) {
  long M = 1;
  for (const auto& [m, r] : system) M *= m;
  for (long x = 0; x < M; ++x) {
    bool ok = true;
    for (const auto& [m, r] : system) ok = ok && ((x - r) % m + m) % m == 0;
    if (ok) return x;
  }
  return -1;
}

// Primitive-solution search for z^2 = A x^2 + B y^2 modulo p^k.
//
// A rational is first moved into its square class p^e * u with e in {0,1}
// and u a p-adic unit given modulo p^k. With that normalization a primitive
// solution modulo p^3 (odd p) or 2^7 lifts to Q_p, and conversely. Any
// primitive solution has x or y a unit (otherwise z^2 = 0 mod p^2 forces z to
// be a non-unit too), so after scaling either x = 1, or y = 1 with p | x.
class HilbertBrute {
 public:
  int symbol(const Rational& a, const Rational& b, long p) {
    int k = p == 2 ? 7 : 3;
    long m = ipow(p, k);
    auto [ea, ua] = square_class(a, p, m);
    auto [eb, ub] = square_class(b, p, m);
    long key_mod = p == 2 ? 8 : p;
    auto key = std::make_tuple(p, ea, ua % key_mod, eb, ub % key_mod);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    long A = (ea ? p : 1) * ua % m;
    long B = (eb ? p : 1) * ub % m;
    int out = search(A, B, p, m) ? 1 : -1;
    memo_[key] = out;
    return out;
  }

  static int real_symbol(const Rational& a, const Rational& b) { return a < 0 && b < 0 ? -1 : 1; }

 private:
  static std::pair<int, long> square_class(const Rational& r, long p, long m) {
    BigInt n = r.num() * r.den();
    long e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    BigInt red = n % m;
    if (red < 0) red += m;
    return {static_cast<int>(e % 2), red.get_si()};
  }

  static bool search(long A, long B, long p, long m) {
    std::vector<char> is_sq(m, 0);
    for (long z = 0; z < m; ++z) is_sq[z * z % m] = 1;
    for (long y = 0; y < m; ++y) {
      if (is_sq[(A + B * (y * y % m)) % m]) return true;
    }
    for (long x = 0; x < m; x += p) {
      if (is_sq[(A * (x * x % m) + B) % m]) return true;
    }
    return false;
  }

  std::map<std::tuple<long, int, long, int, long>, int> memo_;
};

// Euler's criterion for a BigInt residue modulo an odd prime: 1, -1, or 0.
inline int euler_big(const BigInt& x, const BigInt& p) {
  BigInt r = x % p;
  if (r < 0) r += p;
  if (r == 0) return 0;
  BigInt e = (p - 1) / 2, out;
  mpz_powm(out.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  return out == 1 ? 1 : -1;
}

// Local solubility of z^2 = A x^2 + B y^2 at an odd prime of any size, by
// looking for a solution modulo p that Hensel's lemma lifts. With A = p^ea u
// and B = p^eb v (ea, eb in {0,1}, u and v units):
//   ea = eb = 0: try x = 1 and y = 0, 1, 2, ... until u + v y^2 is a square
//     mod p (zero included). Some coordinate with a unit coefficient is then
//     a unit, so a partial derivative is a unit and the point lifts.
//   ea = 1, eb = 0: mod p the equation reads z^2 = v y^2. A primitive
//     solution needs y to be a unit (y = 0 forces z = 0 and then p | x), so
//     v must be a square; conversely z = sqrt(v) y lifts in z.
//   ea = eb = 1: z = p w and u x^2 + v y^2 = p w^2. Mod p both x and y are
//     units, so -u v must be a square; conversely solve u + v y^2 = 0 mod p
//     and lift in y with w = 0.
inline int hilbert_odd_prime(const Rational& a, const Rational& b, const BigInt& p) {
  auto split = [&](const Rational& r, BigInt& unit) {
    BigInt n = r.num() * r.den();
    int e = 0;
    while (n % p == 0) {
      n /= p;
      e ^= 1;
    }
    unit = n;
    return e;
  };
  BigInt u, v;
  int ea = split(a, u), eb = split(b, v);
  if (ea == 1 && eb == 0) return euler_big(v, p);
  if (ea == 0 && eb == 1) return euler_big(u, p);
  if (ea == 1 && eb == 1) return euler_big(-u * v, p);
  for (BigInt y = 0; y < p; ++y) {
    if (euler_big(u + v * y * y, p) != -1) return 1;
  }
  return euler_big(v, p) == 1 ? 1 : -1;
}

// N(sum_j y_j theta^j) for theta^n = 2 as the product over the complex
// conjugates theta * zeta^k.
inline long double conjugate_norm(const std::vector<long>& y) {
  const std::size_t n = y.size();
  const long double pi = 3.14159265358979323846264338327950288L;
  const long double r = std::pow(2.0L, 1.0L / static_cast<long double>(n));
  std::complex<long double> prod = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<long double> theta = std::polar(r, 2 * pi * static_cast<long double>(k) / n);
    std::complex<long double> acc = 0, power = 1;
    for (std::size_t j = 0; j < n; ++j) {
      acc += static_cast<long double>(y[j]) * power;
      power *= theta;
    }
    prod *= acc;
  }
  return prod.real();
}

// Node-by-node evaluation of circuit nodes [0, limit) modulo a prime, with a
// flag for denominators that vanish. Norm nodes are not supported.
inline std::vector<std::uint64_t> residues(const campana::Circuit& c, std::size_t limit,
                                           const campana::Assignment& values, std::uint64_t q, bool& ok) {
  using u128 = unsigned __int128;
  auto mul = [q](std::uint64_t x, std::uint64_t y) { return static_cast<std::uint64_t>(u128(x) * y % q); };
  auto inv = [&](std::uint64_t x) {
    std::uint64_t r = 1, e = q - 2;
    while (e) {
      if (e & 1) r = mul(r, x);
      x = mul(x, x);
      e >>= 1;
    }
    return r;
  };
  auto reduce = [q](const BigInt& x) {
    BigInt r;
    mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), q);
    return static_cast<std::uint64_t>(r.get_ui());
  };
  ok = true;
  std::vector<std::uint64_t> val(limit);
  for (std::size_t i = 0; i < limit; ++i) {
    const campana::Node& n = c.node(static_cast<campana::NodeId>(i));
    switch (n.op) {
      case campana::Op::Var: {
        const Rational& x = values.at(n.name);
        std::uint64_t d = reduce(x.den());
        if (d == 0) ok = false;
        val[i] = d == 0 ? 0 : mul(reduce(x.num()), inv(d));
        break;
      }
      case campana::Op::Int: val[i] = reduce(n.value); break;
      case campana::Op::Add: val[i] = (val[n.args[0]] + val[n.args[1]]) % q; break;
      case campana::Op::Mul: val[i] = mul(val[n.args[0]], val[n.args[1]]); break;
      case campana::Op::Neg: val[i] = val[n.args[0]] == 0 ? 0 : q - val[n.args[0]]; break;
      case campana::Op::Pow: {
        std::uint64_t r = 1;
        for (unsigned long e = 0; e < n.exponent; ++e) r = mul(r, val[n.args[0]]);
        val[i] = r;
        break;
      }
      case campana::Op::Norm: throw std::logic_error("oracle::residues: norm node");
    }
  }
  return val;
}

// Exact node values for [0, limit), Norm excluded.
inline std::vector<Rational> exact_values(const campana::Circuit& c, std::size_t limit,
                                          const campana::Assignment& values) {
  std::vector<Rational> val(limit);
  for (std::size_t i = 0; i < limit; ++i) {
    const campana::Node& n = c.node(static_cast<campana::NodeId>(i));
    switch (n.op) {
      case campana::Op::Var: val[i] = values.at(n.name); break;
      case campana::Op::Int: val[i] = Rational(n.value); break;
      case campana::Op::Add: val[i] = val[n.args[0]] + val[n.args[1]]; break;
      case campana::Op::Mul: val[i] = val[n.args[0]] * val[n.args[1]]; break;
      case campana::Op::Neg: val[i] = -val[n.args[0]]; break;
      case campana::Op::Pow: {
        Rational r(1);
        for (unsigned long e = 0; e < n.exponent; ++e) r *= val[n.args[0]];
        val[i] = r;
        break;
      }
      case campana::Op::Norm: throw std::logic_error("oracle::exact_values: norm node");
    }
  }
  return val;
}

}  // namespace oracle
