#pragma once

// Membership oracles decided directly from valuations.

#include <campana/arith.hpp>
#include <campana/binary_form.hpp>
#include <campana/places.hpp>

#include <array>
#include <cstdint>

namespace campana {

/// r = 0, or v_p(r) >= 1 at every p in omega.
bool in_J(const PlaceSet& omega, const Rational& r);
bool in_J(const Rational& a, const Rational& b, const Rational& c, const Rational& d,
          const Rational& r);

/// r = 0, or v_p(r) >= n at every p in omega. Requires n >= 1.
bool in_Jn(const PlaceSet& omega, long n, const Rational& r);
bool in_Jn(const Rational& a, const Rational& b, const Rational& c, const Rational& d, long n,
           const Rational& r);

/// r != 0 and v_p(r) <= -n at every p in omega. Requires n >= 1.
bool in_inv_Jn(const PlaceSet& omega, long n, const Rational& r);
bool in_inv_Jn(const Rational& a, const Rational& b, const Rational& c, const Rational& d, long n,
               const Rational& r);

/// Some z with z in J(omega) and 1 - z in J(omega_prime), built by CRT from
/// z = 0 (mod p), p in omega, and z = 1 (mod p), p in omega_prime. Returns
/// false when the two sets meet.
bool sum_contains_one(const PlaceSet& omega, const PlaceSet& omega_prime, BigInt* witness = nullptr);

/// Whether the two omega sets are disjoint. The intersection test and the
/// sum criterion are both evaluated; std::logic_error if they disagree.
bool disjoint_omegas(const PlaceSet& omega, const PlaceSet& omega_prime);
bool disjoint_omegas(const Rational& a, const Rational& b, const Rational& c, const Rational& d,
                     const Rational& a2, const Rational& b2, const Rational& c2,
                     const Rational& d2);

/// r = 0, or every prime p outside S has v_p(r) >= 0 or v_p(r) <= -n.
bool campana_member(const PlaceSet& S, long n, const Rational& r);

/// v_p(r) >= 0 for every prime p outside S.
bool s_integer_member(const PlaceSet& S, const Rational& r);

/// campana_member(S, n, F(lambda, 1)). Throws std::invalid_argument when
/// lambda is a root of F(x, 1).
bool campana_member_form(const PlaceSet& S, long n, const BinaryForm& F, const Rational& lambda);

/// v_p(x1) - min(v_p(x0), v_p(x1)), with v_p(0) = +infinity.
long denominator_exponent(const Rational& x0, const Rational& x1, const BigInt& p);

/// e^2 >= n*e for e = denominator_exponent(x0, x1, p) at every prime p
/// outside S.
bool campana_via_coordinates(const Rational& x0, const Rational& x1, const PlaceSet& S, long n);

struct TraceSample {
  Rational t;
  /// Coordinates of the norm-one quaternion w = z^2 / nrd(z).
  std::array<Rational, 4> witness;
  /// The sampled z.
  std::array<Rational, 4> z;
};

/// The trace sample for a given quaternion z = z1 + z2*i + z3*j + z4*ij in
/// H(a,b). Throws std::invalid_argument if nrd(z) = 0.
TraceSample trace_element_of(const Rational& a, const Rational& b, const std::array<Rational, 4>& z);

/// Draws z with small integer coordinates until nrd(z) != 0 (at most 100
/// draws, then DegenerateSampler). Deterministic per seed.
TraceSample generate_trace_element(const Rational& a, const Rational& b, std::uint64_t seed);

/// x1^2 - a x2^2 - b x3^2 + ab x4^2.
Rational reduced_norm(const Rational& a, const Rational& b, const std::array<Rational, 4>& x);

}  // namespace campana
