#pragma once

// The `campana` command-line front end as a library, so tests can drive it
// without spawning processes.

#include <campana/arith.hpp>
#include <campana/places.hpp>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace campana::cli {

enum ExitCode : int { kSuccess = 0, kFailure = 1, kUsage = 2 };

/// Malformed input on the command line or in the config file.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Settings that may come from a key=value file; flags override them.
struct Config {
  std::size_t max_steps = 100000;
  unsigned long aux_prime_bound = 1000;
  double timeout_seconds = 5.0;
  std::size_t samples = 1000;
  std::uint64_t seed = 42;
};

/// Reads `key = value` lines; blank lines and lines starting with '#' are
/// skipped. Unknown keys and malformed values raise UsageError.
Config parse_config(std::string_view text, Config base = {});
Config load_config(const std::string& path, Config base = {});

/// Exact rational from "a" or "a/b".
Rational parse_rational(std::string_view text);

/// Primes separated by commas and/or whitespace; "" is the empty set.
/// Duplicates and non-primes raise UsageError.
PlaceSet parse_prime_list(std::string_view text);

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace campana::cli
