#pragma once

#include <stdexcept>
#include <string>

namespace campana {

/// A bounded search ran out of candidates. Existence is guaranteed by theory
/// for every search that raises this, so it points at an undersized
/// candidate space or a bug.
class SearchExhausted : public std::runtime_error {
 public:
  explicit SearchExhausted(const std::string& what) : std::runtime_error(what) {}
};

/// The caller's deadline passed before a search finished.
class SearchCancelled : public std::runtime_error {
 public:
  explicit SearchCancelled(const std::string& what) : std::runtime_error(what) {}
};

/// A random sampler kept hitting degenerate draws.
class DegenerateSampler : public std::runtime_error {
 public:
  explicit DegenerateSampler(const std::string& what) : std::runtime_error(what) {}
};

/// Witness synthesis needs split parameters (a or b a nonzero square).
class WitnessUnavailable : public std::runtime_error {
 public:
  explicit WitnessUnavailable(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace campana
