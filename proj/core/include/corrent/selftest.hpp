#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace corrent {

/// Randomized invariant suite over mixed symbolic and interval systems:
/// monotonicity of correlation sums in eps and m, the 1/n <= C <= 1 bounds,
/// C = 1 beyond the diameter, the spanning lower bounds (state-set eta^m and
/// Bowen 1/r_m), the exact shift-invariance sandwich, exact fast==naive
/// agreement, the iterate pair-counting inequality, and recurrence-graph
/// admissibility.
struct InvariantReport {
  std::size_t cases = 0;
  std::size_t checks = 0;
  std::map<std::string, std::size_t> per_check;
  std::vector<std::string> failures;
  bool pass() const { return failures.empty(); }
};

InvariantReport run_invariant_suite(std::uint64_t seed, std::size_t cases);

}  // namespace corrent
