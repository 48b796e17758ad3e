#pragma once

#include <optional>
#include <string>

#include "rplan/core.hpp"

namespace rplan {

inline constexpr std::size_t kTimelineMaxVertices = 30;

// Undirected DOT graph; traps are boxes labelled with their reload. With a
// plan, every inner vertex lists the rounds each asset spends on it.
// Throws Error(kInvalidPlan) when the plan does not fit or is not valid.
std::string render_dot(const Instance& instance, const std::optional<Plan>& plan = std::nullopt);

// One row per round, one column per vertex (s first, t last, then a DEAD
// column). Inner cells hold the asset index or `.`; a trap inside its
// reload window is marked `~`, an asset that just triggered a trap `!`.
// s, t and DEAD show counts. Throws Error(kInvalidPlan), or
// Error(kInvalidParameter) above kTimelineMaxVertices vertices.
std::string render_timeline(const Instance& instance, const Plan& plan);

}  // namespace rplan
