#pragma once

// Self-checks of the library's identities and inequalities on seeded random
// inputs, grouped by module.

#include <cstdint>
#include <string>
#include <vector>

namespace vcond {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  /// Not run at this precision; counts as passing.
  bool skipped = false;
  /// Worst residual or first failing witness.
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

/// clausen, potentials, lagrange, matrices, bounds, measures.
const std::vector<std::string>& verify_suites();

/// Runs one suite, or every suite for "all". DomainError for an unknown name.
/// Below 128 bits, checks whose tolerance would fall under the conditioning
/// loss of their inputs are reported as skipped.
VerifyReport run_verify(const std::string& suite, std::uint64_t seed, int bits);

}  // namespace vcond
