#pragma once

// Norms from Q(p^(1/n)) computed as resultants, exactly or modulo a prime.

#include <campana/arith.hpp>

#include <cstdint>
#include <vector>

namespace campana {

/// Res(f, g) over F_q for coefficient vectors (constant term first). Both
/// polynomials must have been reduced mod q; f must have degree >= 1.
std::uint64_t resultant_mod(std::vector<std::uint64_t> f, std::vector<std::uint64_t> g, std::uint64_t q);

/// N(sum_j a_j theta^j) modulo q, theta^n = p, n = a.size().
std::uint64_t norm_mod(const std::vector<std::uint64_t>& a, std::uint64_t p, std::uint64_t q);

/// Exact N(sum_j a_j theta^j), theta^n = p, by multi-modular resultants.
Rational exact_norm(const std::vector<Rational>& a, const BigInt& p);

/// Largest primes below 2^62, descending. Cached; thread-safe.
std::vector<std::uint64_t> large_primes(std::size_t count);

std::uint64_t mulmod(std::uint64_t x, std::uint64_t y, std::uint64_t q);
std::uint64_t powmod(std::uint64_t x, std::uint64_t e, std::uint64_t q);
/// Inverse modulo the prime q; x must be nonzero mod q.
std::uint64_t invmod(std::uint64_t x, std::uint64_t q);

}  // namespace campana
