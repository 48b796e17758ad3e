#include "rplan/engine.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace rplan {

TrapClock::TrapClock(const TrapTable& traps) {
  const std::size_t n = [&] {
    std::size_t size = 0;
    for (VertexId r : traps.traps()) size = std::max<std::size_t>(size, r + 1);
    return size;
  }();
  reload_.assign(n, 0);
  since_.assign(n, kNever);
  for (VertexId r : traps.traps()) reload_[r] = traps.reload(r);
}

bool TrapClock::active(VertexId trap) const {
  const int since = since_.at(trap);
  return since == kNever || since > reload_.at(trap);
}

void TrapClock::tick() {
  for (std::size_t v = 0; v < since_.size(); ++v) {
    if (reload_[v] == 0 || since_[v] == kNever) continue;
    since_[v] = std::min(since_[v] + 1, reload_[v] + 1);
  }
}

bool SimState::is_occupied(VertexId v) const {
  return std::binary_search(occupied.begin(), occupied.end(), v);
}

bool SimState::doomed(VertexId v) const {
  return is_occupied(v) && clocks.tracks(v) && clocks.rounds_since_trigger(v) == 0;
}

SimState initial_state(const Instance& instance) {
  SimState state;
  state.at_start = instance.assets();
  state.clocks = TrapClock(instance.traps());
  return state;
}

SimState step(const Instance& instance, const SimState& state, const Moves& moves) {
  const Topology& g = instance.topology();
  const VertexId s = g.start();
  const VertexId t = g.target();

  if (state.finished()) {
    throw Error(ErrorCode::kMoveFromAbsorbing, "all assets are already at the target or eliminated");
  }

  std::map<VertexId, VertexId> chosen;
  for (const auto& [from, to] : moves.moves) {
    if (from == t || from == kDead) {
      throw Error(ErrorCode::kMoveFromAbsorbing, "assets at the target or eliminated cannot move");
    }
    if (from == s) {
      throw Error(ErrorCode::kInvalidPlan, "departures from the start go through Moves::departures");
    }
    if (!state.is_occupied(from)) {
      throw Error(ErrorCode::kInvalidPlan, "no asset on '" + g.name(from) + "'");
    }
    if (state.doomed(from)) {
      throw Error(ErrorCode::kMoveFromAbsorbing,
                  "asset on '" + g.name(from) + "' was eliminated and cannot move");
    }
    if (!chosen.emplace(from, to).second) {
      throw Error(ErrorCode::kInvalidPlan, "two moves given for '" + g.name(from) + "'");
    }
    if (to == s) throw Error(ErrorCode::kReturnToStart, "asset would return to the start");
    if (to < 0 || to >= static_cast<VertexId>(g.vertex_count())) {
      throw Error(ErrorCode::kIllegalEdge, "destination is not a vertex");
    }
    if (to != from && !g.adjacent(from, to)) {
      throw Error(ErrorCode::kIllegalEdge, g.name(from) + " -> " + g.name(to) + " is not an edge");
    }
  }
  if (static_cast<int>(moves.departures.size()) > state.at_start) {
    throw Error(ErrorCode::kInvalidPlan, "more departures than assets at the start");
  }
  for (VertexId to : moves.departures) {
    if (to == s || to < 0 || to >= static_cast<VertexId>(g.vertex_count()) || !g.adjacent(s, to)) {
      throw Error(ErrorCode::kIllegalEdge, "departure destination is not adjacent to the start");
    }
  }

  SimState next;
  next.at_start = state.at_start - static_cast<int>(moves.departures.size());
  next.at_target = state.at_target;
  next.dead = state.dead;
  next.clocks = state.clocks;
  next.round = state.round + 1;

  bool changed = !moves.departures.empty();
  std::vector<VertexId> landed;
  auto land = [&](VertexId to) {
    if (to == t) {
      ++next.at_target;
    } else {
      landed.push_back(to);
    }
  };
  for (VertexId v : state.occupied) {
    if (state.doomed(v)) {
      ++next.dead;
      changed = true;
      continue;
    }
    auto it = chosen.find(v);
    VertexId to = it == chosen.end() ? v : it->second;
    if (to != v) changed = true;
    land(to);
  }
  for (VertexId to : moves.departures) land(to);

  if (!changed) throw Error(ErrorCode::kNoMovement, "no asset changed location this round");

  std::sort(landed.begin(), landed.end());
  auto dup = std::adjacent_find(landed.begin(), landed.end());
  if (dup != landed.end()) {
    throw Error(ErrorCode::kOccupancyConflict, "two assets end on '" + g.name(*dup) + "'");
  }
  next.occupied = std::move(landed);

  next.clocks.tick();
  for (VertexId v : next.occupied) {
    if (instance.traps().is_trap(v) && next.clocks.active(v)) next.clocks.trigger(v);
  }
  return next;
}

namespace {

bool absorbed(VertexId v, VertexId t) { return v == t || v == kDead; }

// Per-round trigger flags under the trigger-clock rule: doomed[a][j] is true
// when asset a occupies an active trap at round j.
std::vector<std::vector<char>> compute_dooms(const Instance& instance, const IndexedPlan& plan,
                                             std::vector<int>* activations) {
  const TrapTable& traps = instance.traps();
  const std::size_t L = plan.length();
  const std::size_t m = plan.rows.size();
  std::vector<std::vector<char>> doomed(m, std::vector<char>(L + 1, 0));
  std::vector<long long> last(instance.vertex_count(), -1);

  for (std::size_t j = 1; j <= L; ++j) {
    std::vector<VertexId> fired;
    for (std::size_t a = 0; a < m; ++a) {
      VertexId v = plan.rows[a][j];
      if (v == kDead || !traps.is_trap(v)) continue;
      bool active = last[v] < 0 || static_cast<long long>(j) - last[v] > traps.reload(v);
      if (active) {
        doomed[a][j] = 1;
        fired.push_back(v);
      }
    }
    std::sort(fired.begin(), fired.end());
    fired.erase(std::unique(fired.begin(), fired.end()), fired.end());
    for (VertexId r : fired) {
      last[r] = static_cast<long long>(j);
      if (activations) activations->push_back(static_cast<int>(j));
    }
  }
  return doomed;
}

std::string loc_name(const Instance& instance, VertexId v) {
  return v == kDead ? std::string(kDeadToken) : instance.topology().name(v);
}

}  // namespace

ValidationVerdict validate_plan(const Instance& instance, const IndexedPlan& plan) {
  const Topology& g = instance.topology();
  const VertexId s = g.start();
  const VertexId t = g.target();
  if (static_cast<int>(plan.rows.size()) != instance.assets()) {
    throw Error(ErrorCode::kInvalidPlan, "plan has " + std::to_string(plan.rows.size()) +
                                             " rows but the instance has " +
                                             std::to_string(instance.assets()) + " assets");
  }
  for (const auto& row : plan.rows) {
    if (row.size() != plan.rows.front().size()) {
      throw Error(ErrorCode::kInvalidPlan, "ragged plan rows");
    }
    for (VertexId v : row) {
      if (v != kDead && (v < 0 || v >= static_cast<VertexId>(g.vertex_count()))) {
        throw Error(ErrorCode::kInvalidPlan, "plan references an unknown vertex");
      }
    }
  }

  ValidationVerdict verdict;
  auto flag = [&](int condition, int asset, int round, std::string message) {
    verdict.violations.push_back({condition, asset, round, std::move(message)});
  };

  const std::size_t m = plan.rows.size();
  const std::size_t L = plan.length();

  for (std::size_t a = 0; a < m; ++a) {
    const auto& row = plan.rows[a];
    const int ai = static_cast<int>(a);
    if (row[0] != s) flag(1, ai, 0, "asset does not start at the start vertex");
    for (std::size_t j = 1; j <= L; ++j) {
      const int jr = static_cast<int>(j);
      if (row[j] == s && row[j - 1] != s) flag(1, ai, jr, "asset returns to the start vertex");
      if (absorbed(row[j - 1], t) && row[j] != row[j - 1]) {
        flag(2, ai, jr, "asset leaves " + loc_name(instance, row[j - 1]));
        continue;
      }
      if (row[j] != kDead && row[j] != row[j - 1] && !g.adjacent(row[j - 1], row[j])) {
        flag(3, ai, jr, loc_name(instance, row[j - 1]) + " -> " + loc_name(instance, row[j]) +
                            " is not an edge");
      }
    }
  }

  for (std::size_t j = 0; j <= L; ++j) {
    std::map<VertexId, int> holder;
    for (std::size_t a = 0; a < m; ++a) {
      VertexId v = plan.rows[a][j];
      if (v == kDead || v == s || v == t) continue;
      auto [it, fresh] = holder.emplace(v, static_cast<int>(a));
      if (!fresh) {
        flag(4, static_cast<int>(a), static_cast<int>(j),
             "shares '" + g.name(v) + "' with asset " + std::to_string(it->second));
      }
    }
  }

  const auto doomed = compute_dooms(instance, plan, nullptr);
  for (std::size_t a = 0; a < m; ++a) {
    const auto& row = plan.rows[a];
    for (std::size_t j = 0; j < L; ++j) {
      const int jr = static_cast<int>(j + 1);
      if (doomed[a][j] && row[j + 1] != kDead) {
        flag(5, static_cast<int>(a), jr,
             "occupied active trap '" + g.name(row[j]) + "' at round " + std::to_string(j) +
                 " but is not eliminated");
      } else if (!doomed[a][j] && row[j] != kDead && row[j + 1] == kDead) {
        flag(5, static_cast<int>(a), jr, "eliminated without occupying an active trap");
      }
    }
  }

  for (std::size_t j = 0; j < L; ++j) {
    bool pending = false;
    bool moved = false;
    for (std::size_t a = 0; a < m; ++a) {
      if (!absorbed(plan.rows[a][j], t)) pending = true;
      if (plan.rows[a][j] != plan.rows[a][j + 1]) moved = true;
    }
    if (pending && !moved) flag(6, -1, static_cast<int>(j + 1), "no asset moves this round");
  }

  if (L == 0) {
    flag(7, -1, 0, "plan has no rounds");
  } else {
    bool pending_before_end = false;
    for (std::size_t a = 0; a < m; ++a) {
      if (!absorbed(plan.rows[a][L], t)) {
        flag(7, static_cast<int>(a), static_cast<int>(L), "asset neither at target nor eliminated at the end");
      }
      if (!absorbed(plan.rows[a][L - 1], t)) pending_before_end = true;
    }
    if (!pending_before_end) {
      flag(7, -1, static_cast<int>(L - 1), "plan continues after every asset is absorbed");
    }
  }

  verdict.is_valid = verdict.violations.empty();
  if (verdict.is_valid) {
    for (const auto& row : plan.rows) verdict.survivors += row[L] == t ? 1 : 0;
  }
  return verdict;
}

ValidationVerdict validate_plan(const Instance& instance, const Plan& plan) {
  return validate_plan(instance, index_plan(instance, plan));
}

std::vector<SimState> replay(const Instance& instance, const IndexedPlan& plan) {
  const Topology& g = instance.topology();
  const VertexId s = g.start();
  const VertexId t = g.target();
  auto fail = [](const std::string& message) -> void {
    throw Error(ErrorCode::kInvalidPlan, message);
  };
  if (static_cast<int>(plan.rows.size()) != instance.assets()) fail("row count differs from asset count");
  const std::size_t L = plan.length();
  for (const auto& row : plan.rows) {
    if (row.size() != L + 1) fail("ragged plan rows");
    if (row[0] != s) fail("asset does not start at the start vertex");
  }

  std::vector<SimState> states;
  states.reserve(L + 1);
  states.push_back(initial_state(instance));
  for (std::size_t j = 0; j < L; ++j) {
    const SimState& cur = states.back();
    Moves moves;
    for (std::size_t a = 0; a < plan.rows.size(); ++a) {
      VertexId here = plan.rows[a][j];
      VertexId there = plan.rows[a][j + 1];
      const std::string who = "asset " + std::to_string(a) + " round " + std::to_string(j + 1) + ": ";
      if (here == kDead || here == t) {
        if (there != here) fail(who + "leaves an absorbing location");
        continue;
      }
      if (here == s) {
        if (there == kDead) fail(who + "eliminated at the start");
        if (there != s) moves.departures.push_back(there);
        continue;
      }
      const bool doom = instance.traps().is_trap(here) && cur.doomed(here);
      if (doom) {
        if (there != kDead) fail(who + "triggered an active trap but is not eliminated");
        continue;
      }
      if (there == kDead) fail(who + "eliminated without triggering a trap");
      if (there != here) moves.moves.emplace_back(here, there);
    }
    try {
      states.push_back(step(instance, cur, moves));
    } catch (const Error& e) {
      fail("round " + std::to_string(j + 1) + ": " + std::string(error_code_name(e.code())) + ": " + e.what());
    }
  }
  if (!states.back().finished()) fail("plan ends with assets still en route");
  return states;
}

std::vector<SimState> replay(const Instance& instance, const Plan& plan) {
  return replay(instance, index_plan(instance, plan));
}

std::vector<int> activation_rounds(const Instance& instance, const IndexedPlan& plan) {
  std::vector<int> rounds;
  compute_dooms(instance, plan, &rounds);
  std::sort(rounds.begin(), rounds.end());
  return rounds;
}

}  // namespace rplan
