#pragma once

#include <optional>
#include <vector>

#include "rplan/core.hpp"
#include "rplan/oracle.hpp"

namespace rplan {

// Plain inner vertices strictly between two consecutive traps of a path
// (segment 0 starts after s, the last one ends before t), ordered toward t.
struct Segment {
  int index = 0;
  std::vector<VertexId> vertices;
  std::size_t size() const { return vertices.size(); }
};

// Throws Error(kNotAPath).
std::vector<Segment> path_segments(const Instance& instance);

// Run-wait-sacrifice on a path. Throws Error(kNotAPath).
SolveReport solve_path_rws(const Instance& instance);

// m - ceil(m / (c + 1)).
int star_survivors(int assets, int reload);

// Throws Error(kNotAStar).
SolveReport solve_star(const Instance& instance);

// Survivors of run-wait-sacrifice with `budget` assets sent down the route
// s, route..., t (which must be an s-t path of the instance).
int solve_path_subroutine(const Instance& instance, const std::vector<VertexId>& route, int budget);

// Budget split over vertex-disjoint routes. Throws Error(kNotDisjointPaths).
SolveReport solve_disjoint_dp(const Instance& instance);

// Linearize, split with the DP, lift the witness back. Throws
// Error(kNotCondensedLinear).
SolveReport solve_condensed(const Instance& instance);

struct SolveOptions {
  std::optional<AlgorithmTag> algorithm;  // empty = dispatch on the classification
  OracleOptions oracle;
};

// Preprocess, classify, dispatch. General topologies go to the oracle when
// within its guard; otherwise Error(kIntractableFragment) carrying the
// classification evidence.
SolveReport solve(const Instance& instance, const SolveOptions& options = {});

}  // namespace rplan
