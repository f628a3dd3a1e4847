#pragma once

// Exact witnesses for the tower blocks when the quaternion algebras split,
// i.e. when in every pair (a, b) one entry is a nonzero rational square.

#include <campana/circuit.hpp>
#include <campana/tower.hpp>

#include <random>

namespace campana {

/// Extends `values` (which must already assign every free variable the
/// trace depends on) with bound-variable values making every atom of the
/// traced block vanish. Throws WitnessUnavailable when a parameter pair is
/// not split or an element that must be invertible is zero.
void synthesize_witness(const Circuit& circuit, const WitnessTrace& trace, Assignment& values,
                        std::mt19937_64& rng);

/// Small random rational with numerator in [-9, 9] and denominator in [1, 5].
Rational small_rational(std::mt19937_64& rng, bool nonzero);

/// A random nonzero rational square or a random nonzero rational, so that
/// a pair (split_parameter(rng, true), split_parameter(rng, false)) splits.
Rational split_parameter(std::mt19937_64& rng, bool square);

}  // namespace campana
