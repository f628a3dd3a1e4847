#pragma once

// Property suites behind `campana verify`.

#include <campana/cli.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace campana::cli {

struct PropertyResult {
  std::string suite;
  std::string property;
  std::size_t trials = 0;
  std::size_t failures = 0;
  /// Replayable description of the first failure, e.g. a campana command.
  std::optional<std::string> counterexample;

  bool passed() const { return failures == 0; }
};

const std::vector<std::string>& suite_names();

/// Runs one suite ("hilbert", "construct", "semantics", "formulas") or
/// "all". Throws UsageError for unknown names.
std::vector<PropertyResult> run_suite(const std::string& name, const Config& config);

/// Fixed-width summary table.
void print_table(std::ostream& os, const std::vector<PropertyResult>& results);

}  // namespace campana::cli
