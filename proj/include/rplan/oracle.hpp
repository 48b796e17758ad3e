#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rplan/core.hpp"

namespace rplan {

// Size limits for the exhaustive search. GuardExceeded is raised instead of
// returning a partial answer.
struct OracleGuard {
  std::size_t max_vertices = 10;
  int max_assets = 8;
  long long max_reload_sum = 12;
};

struct OracleOptions {
  OracleGuard guard;
  // Without deduplication the search is a depth-limited tree walk; only
  // meant for cross-checking the deduplicated search on tiny instances.
  bool dedup = true;
  int max_depth = 0;  // required when dedup is false
};

bool within_guard(const Instance& instance, const OracleGuard& guard);

// Exact optimum by breadth-first search over canonical states (occupied set,
// start/target/dead counts, saturated trap clocks). Throws
// Error(kGuardExceeded) when the instance is outside the guard.
SolveReport oracle_solve(const Instance& instance, const OracleOptions& options = {});

struct LengthBoundReport {
  long long bound = 0;               // (2m + n)^2
  std::vector<int> activations;      // trap-activation rounds k_1..k_q
  std::vector<long long> gaps;       // k_{i+1} - k_i
  std::vector<std::string> flags;    // empty when the plan is within bound
  long long length = 0;
};

// Throws Error(kInvalidPlan) when the plan is not valid.
LengthBoundReport check_length_bound(const Instance& instance, const Plan& plan);

}  // namespace rplan
