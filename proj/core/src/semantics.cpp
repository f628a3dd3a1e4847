#include <campana/semantics.hpp>

#include <campana/errors.hpp>

#include <random>
#include <stdexcept>

namespace campana {

namespace {

void require_order(long n) {
  if (n < 1) throw std::invalid_argument("exponent n must be at least 1");
}

}  // namespace

bool in_J(const PlaceSet& omega, const Rational& r) { return in_Jn(omega, 1, r); }

bool in_J(const Rational& a, const Rational& b, const Rational& c, const Rational& d,
          const Rational& r) {
  return in_J(campana::omega(a, b, c, d), r);
}

bool in_Jn(const PlaceSet& omega, long n, const Rational& r) {
  require_order(n);
  if (r.is_zero()) return true;
  for (const auto& p : omega.primes()) {
    if (valuation(r, p) < n) return false;
  }
  return true;
}

bool in_Jn(const Rational& a, const Rational& b, const Rational& c, const Rational& d, long n,
           const Rational& r) {
  return in_Jn(campana::omega(a, b, c, d), n, r);
}

bool in_inv_Jn(const PlaceSet& omega, long n, const Rational& r) {
  require_order(n);
  if (r.is_zero()) return false;
  for (const auto& p : omega.primes()) {
    if (valuation(r, p) > -n) return false;
  }
  return true;
}

bool in_inv_Jn(const Rational& a, const Rational& b, const Rational& c, const Rational& d, long n,
               const Rational& r) {
  return in_inv_Jn(campana::omega(a, b, c, d), n, r);
}

bool sum_contains_one(const PlaceSet& omega, const PlaceSet& omega_prime, BigInt* witness) {
  std::vector<Congruence> system;
  for (const auto& p : omega.primes()) system.push_back({p, 0});
  for (const auto& p : omega_prime.primes()) system.push_back({p, 1});
  BigInt z;
  try {
    z = crt(system);
  } catch (const std::invalid_argument&) {
    return false;
  }
  if (!in_J(omega, Rational(z)) || !in_J(omega_prime, Rational(1) - Rational(z))) return false;
  if (witness) *witness = z;
  return true;
}

bool disjoint_omegas(const PlaceSet& omega, const PlaceSet& omega_prime) {
  bool direct = omega.intersect(omega_prime).empty();
  bool via_sum = sum_contains_one(omega, omega_prime);
  if (direct != via_sum) {
    throw std::logic_error("disjoint_omegas: intersection test and 1 in J+J' disagree for " +
                           omega.to_string() + " and " + omega_prime.to_string());
  }
  return direct;
}

bool disjoint_omegas(const Rational& a, const Rational& b, const Rational& c, const Rational& d,
                     const Rational& a2, const Rational& b2, const Rational& c2,
                     const Rational& d2) {
  return disjoint_omegas(omega(a, b, c, d), omega(a2, b2, c2, d2));
}

bool campana_member(const PlaceSet& S, long n, const Rational& r) {
  require_order(n);
  if (r.is_zero()) return true;
  for (const auto& [p, e] : factor_integer(r.den())) {
    if (S.contains_prime(p)) continue;
    long v = -long(e);
    if (v > -n) return false;
  }
  return true;
}

bool s_integer_member(const PlaceSet& S, const Rational& r) {
  if (r.is_zero()) return true;
  for (const auto& [p, e] : factor_integer(r.den())) {
    if (!S.contains_prime(p)) return false;
  }
  return true;
}

bool campana_member_form(const PlaceSet& S, long n, const BinaryForm& F, const Rational& lambda) {
  Rational value = F.dehomogenize(lambda);
  if (value.is_zero()) {
    throw std::invalid_argument("campana_member_form: " + lambda.to_string() + " is a root of " +
                                F.to_string());
  }
  return campana_member(S, n, value);
}

long denominator_exponent(const Rational& x0, const Rational& x1, const BigInt& p) {
  if (x1.is_zero()) throw std::invalid_argument("denominator_exponent: x1 must be nonzero");
  long v1 = valuation(x1, p);
  ExtInt v0 = valuation_ext(x0, p);
  long low = v0 < ExtInt(v1) ? v0.value() : v1;
  return v1 - low;
}

bool campana_via_coordinates(const Rational& x0, const Rational& x1, const PlaceSet& S, long n) {
  require_order(n);
  if (x1.is_zero()) throw std::invalid_argument("campana_via_coordinates: x1 must be nonzero");
  std::vector<BigInt> primes = prime_support(x1);
  if (!x0.is_zero()) {
    for (const auto& p : prime_support(x0)) primes.push_back(p);
  }
  for (const auto& p : primes) {
    if (S.contains_prime(p)) continue;
    long e = denominator_exponent(x0, x1, p);
    if (e * e < n * e) return false;
  }
  return true;
}

Rational reduced_norm(const Rational& a, const Rational& b, const std::array<Rational, 4>& x) {
  return x[0] * x[0] - a * x[1] * x[1] - b * x[2] * x[2] + a * b * x[3] * x[3];
}

TraceSample trace_element_of(const Rational& a, const Rational& b, const std::array<Rational, 4>& z) {
  Rational N = reduced_norm(a, b, z);
  if (N.is_zero()) throw std::invalid_argument("trace_element_of: z has reduced norm zero");
  TraceSample out;
  out.z = z;
  // z^2 = (2 z1^2 - N) + 2 z1 (z2 i + z3 j + z4 ij).
  Rational two_z1 = Rational(2) * z[0];
  out.witness[0] = (two_z1 * z[0] - N) / N;
  for (int i = 1; i < 4; ++i) out.witness[i] = two_z1 * z[i] / N;
  out.t = Rational(2) * out.witness[0];
  return out;
}

TraceSample generate_trace_element(const Rational& a, const Rational& b, std::uint64_t seed) {
  if (a.is_zero() || b.is_zero()) throw std::invalid_argument("generate_trace_element: zero parameter");
  std::mt19937_64 rng(seed);
  auto draw = [&]() { return Rational(long(rng() % 41) - 20); };
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::array<Rational, 4> z{draw(), draw(), draw(), draw()};
    if (reduced_norm(a, b, z).is_zero()) continue;
    return trace_element_of(a, b, z);
  }
  throw DegenerateSampler("generate_trace_element: 100 draws with reduced norm zero");
}

}  // namespace campana
