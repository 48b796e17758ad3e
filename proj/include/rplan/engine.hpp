#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rplan/core.hpp"

namespace rplan {

// Trigger-clock trap state. A trigger happens when an asset occupies a trap
// while it is active; the trap is then inactive for exactly c(r) rounds and
// active again afterwards, whatever happens on it in between.
class TrapClock {
 public:
  static constexpr int kNever = -1;

  TrapClock() = default;
  explicit TrapClock(const TrapTable& traps);

  // kNever, or rounds since the last trigger saturated at c(r) + 1.
  int rounds_since_trigger(VertexId trap) const { return since_.at(trap); }
  bool active(VertexId trap) const;
  bool tracks(VertexId v) const {
    return v >= 0 && static_cast<std::size_t>(v) < reload_.size() && reload_[v] > 0;
  }

  void tick();
  void trigger(VertexId trap) { since_.at(trap) = 0; }

  friend bool operator==(const TrapClock&, const TrapClock&) = default;

 private:
  std::vector<int> reload_;  // per vertex, 0 when no trap
  std::vector<int> since_;   // per vertex, meaningful for traps only
};

struct SimState {
  std::vector<VertexId> occupied;  // sorted; never contains s or t
  int at_start = 0;
  int at_target = 0;
  int dead = 0;
  TrapClock clocks;
  int round = 0;

  // Occupied trap triggered this round: its asset is DEAD next round.
  bool doomed(VertexId v) const;
  bool is_occupied(VertexId v) const;
  bool finished() const { return at_start == 0 && occupied.empty(); }
  int population() const { return at_start + at_target + dead + static_cast<int>(occupied.size()); }

  friend bool operator==(const SimState&, const SimState&) = default;
};

SimState initial_state(const Instance& instance);

// Choices for one round. Occupied vertices without an entry stay put; doomed
// assets need (and may have) no entry.
struct Moves {
  std::vector<std::pair<VertexId, VertexId>> moves;  // occupied vertex -> destination
  std::vector<VertexId> departures;                   // destinations of assets leaving s
};

// Throws Error with kOccupancyConflict, kIllegalEdge, kReturnToStart,
// kNoMovement or kMoveFromAbsorbing.
SimState step(const Instance& instance, const SimState& state, const Moves& moves);

struct Violation {
  int condition = 0;  // 1..7
  int asset = -1;     // -1 when the violation is not tied to one asset
  int round = -1;
  std::string message;
};

struct ValidationVerdict {
  bool is_valid = false;
  int survivors = 0;  // meaningful when is_valid
  std::vector<Violation> violations;
};

// Certificate check of all seven validity conditions. Throws
// Error(kInvalidPlan) only when the plan does not fit the instance at all
// (row count differs from m, unknown vertex ids).
ValidationVerdict validate_plan(const Instance& instance, const Plan& plan);
ValidationVerdict validate_plan(const Instance& instance, const IndexedPlan& plan);

// Drives the simulator through the plan; throws Error(kInvalidPlan) carrying
// the first simulator complaint. Returns L + 1 states.
std::vector<SimState> replay(const Instance& instance, const Plan& plan);
std::vector<SimState> replay(const Instance& instance, const IndexedPlan& plan);

// Rounds at which some trap is triggered by the plan (sorted, may repeat).
std::vector<int> activation_rounds(const Instance& instance, const IndexedPlan& plan);

}  // namespace rplan
