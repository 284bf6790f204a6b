#pragma once

// The acceptance suite: nine property checks, each against an independent
// rational oracle or a brute-force scan. Sample sizes and thresholds are
// fixed constants in the implementation.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace padyn {

struct AcceptanceOptions {
  std::uint64_t seed = 20240601;
  /// Restrict to these criterion ids (1..9); empty runs all.
  std::vector<int> only;
  /// Called after each criterion finishes.
  std::function<void(int id)> progress;
};

struct AcceptanceResult {
  int id;
  std::string name;
  bool passed;
  /// Sample counts, or the first counterexample on failure.
  std::string detail;
  double seconds = 0.0;
};

inline constexpr int kAcceptanceCriteria = 9;

std::vector<AcceptanceResult> run_acceptance(const AcceptanceOptions& options = {});

/// "PASS [3] right-inverse: ..." style line.
std::string format_result(const AcceptanceResult& r);

}  // namespace padyn
