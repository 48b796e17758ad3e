#include "rplan/core.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

namespace rplan {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOk: return "Ok";
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kTrapOnTerminal: return "TrapOnTerminal";
    case ErrorCode::kZeroReload: return "ZeroReload";
    case ErrorCode::kGoalExceedsAssets: return "GoalExceedsAssets";
    case ErrorCode::kDanglingEdge: return "DanglingEdge";
    case ErrorCode::kStartEqualsTarget: return "StartEqualsTarget";
    case ErrorCode::kSelfLoop: return "SelfLoop";
    case ErrorCode::kDuplicateEdge: return "DuplicateEdge";
    case ErrorCode::kMissingField: return "MissingField";
    case ErrorCode::kNoAssets: return "NoAssets";
    case ErrorCode::kReservedName: return "ReservedName";
    case ErrorCode::kInvalidPlan: return "InvalidPlan";
    case ErrorCode::kOccupancyConflict: return "OccupancyConflict";
    case ErrorCode::kIllegalEdge: return "IllegalEdge";
    case ErrorCode::kReturnToStart: return "ReturnToStart";
    case ErrorCode::kNoMovement: return "NoMovement";
    case ErrorCode::kMoveFromAbsorbing: return "MoveFromAbsorbing";
    case ErrorCode::kNotAPath: return "NotAPath";
    case ErrorCode::kNotAStar: return "NotAStar";
    case ErrorCode::kNotDisjointPaths: return "NotDisjointPaths";
    case ErrorCode::kNotCondensedLinear: return "NotCondensedLinear";
    case ErrorCode::kIntractableFragment: return "IntractableFragment";
    case ErrorCode::kGuardExceeded: return "GuardExceeded";
    case ErrorCode::kInvalidParameter: return "InvalidParameter";
    case ErrorCode::kNotRX3C: return "NotRX3C";
    case ErrorCode::kNot3Partition: return "Not3Partition";
    case ErrorCode::kMaterializationTooLarge: return "MaterializationTooLarge";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

Topology::Topology(std::vector<std::string> vertices,
                   const std::vector<std::pair<std::string, std::string>>& edges,
                   const std::string& start, const std::string& target) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  names_ = std::move(vertices);

  auto index_of = [this](const std::string& id) -> VertexId {
    auto it = std::lower_bound(names_.begin(), names_.end(), id);
    if (it == names_.end() || *it != id) return -1;
    return static_cast<VertexId>(it - names_.begin());
  };

  if (start == target) {
    throw Error(ErrorCode::kStartEqualsTarget, "start and target are both '" + start + "'");
  }
  start_ = index_of(start);
  target_ = index_of(target);
  if (start_ < 0 || target_ < 0) {
    throw Error(ErrorCode::kDanglingEdge, "start or target is not a declared vertex");
  }

  adjacency_.assign(names_.size(), {});
  std::set<std::pair<VertexId, VertexId>> seen;
  for (const auto& [a, b] : edges) {
    VertexId u = index_of(a);
    VertexId v = index_of(b);
    if (u < 0 || v < 0) {
      throw Error(ErrorCode::kDanglingEdge,
                  "edge " + a + " -- " + b + " references an undeclared vertex");
    }
    if (u == v) throw Error(ErrorCode::kSelfLoop, "self loop on '" + a + "'");
    if (!seen.emplace(std::min(u, v), std::max(u, v)).second) {
      throw Error(ErrorCode::kDuplicateEdge, "edge " + a + " -- " + b + " declared twice");
    }
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
  edge_count_ = seen.size();
}

std::optional<VertexId> Topology::find(std::string_view id) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), id,
                             [](const std::string& a, std::string_view b) { return a < b; });
  if (it == names_.end() || *it != id) return std::nullopt;
  return static_cast<VertexId>(it - names_.begin());
}

bool Topology::adjacent(VertexId a, VertexId b) const {
  const auto& list = adjacency_.at(a);
  return std::binary_search(list.begin(), list.end(), b);
}

std::vector<std::pair<VertexId, VertexId>> Topology::edges() const {
  std::vector<std::pair<VertexId, VertexId>> out;
  out.reserve(edge_count_);
  for (VertexId u = 0; u < static_cast<VertexId>(adjacency_.size()); ++u) {
    for (VertexId v : adjacency_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

TrapTable::TrapTable(std::vector<int> reload_by_vertex) : reload_(std::move(reload_by_vertex)) {
  for (VertexId v = 0; v < static_cast<VertexId>(reload_.size()); ++v) {
    if (reload_[v] > 0) traps_.push_back(v);
  }
}

long long TrapTable::reload_sum() const {
  long long sum = 0;
  for (VertexId v : traps_) sum += reload_[v];
  return sum;
}

Instance::Instance(Topology topology, TrapTable traps, int assets, int goal)
    : topology_(std::move(topology)), traps_(std::move(traps)), assets_(assets), goal_(goal) {
  if (assets_ < 1) throw Error(ErrorCode::kNoAssets, "an instance needs at least one asset");
  if (goal_ > assets_) {
    throw Error(ErrorCode::kGoalExceedsAssets,
                "goal " + std::to_string(goal_) + " exceeds asset count " + std::to_string(assets_));
  }
  if (goal_ < 1) throw Error(ErrorCode::kInvalidParameter, "goal must be at least 1");
  for (VertexId r : traps_.traps()) {
    if (topology_.is_terminal(r)) {
      throw Error(ErrorCode::kTrapOnTerminal, "trap declared on terminal '" + topology_.name(r) + "'");
    }
  }
}

namespace {

void check_name(const std::string& id) {
  if (id == kDeadToken) {
    throw Error(ErrorCode::kReservedName, "'DEAD' is reserved for eliminated assets");
  }
  if (id.empty()) throw Error(ErrorCode::kSyntaxError, "empty vertex id");
}

int narrow_count(long long value, std::string_view what) {
  if (value > std::numeric_limits<int>::max() || value < std::numeric_limits<int>::min()) {
    throw Error(ErrorCode::kInvalidParameter, std::string(what) + " out of range");
  }
  return static_cast<int>(value);
}

}  // namespace

Instance build_instance(const RawInstance& raw) {
  if (!raw.start) throw Error(ErrorCode::kMissingField, "missing 'start'");
  if (!raw.target) throw Error(ErrorCode::kMissingField, "missing 'target'");
  if (!raw.assets) throw Error(ErrorCode::kMissingField, "missing 'assets'");
  if (!raw.goal) throw Error(ErrorCode::kMissingField, "missing 'goal'");
  if (*raw.start == *raw.target) {
    throw Error(ErrorCode::kStartEqualsTarget, "start and target are both '" + *raw.start + "'");
  }

  std::set<std::string> declared(raw.vertices.begin(), raw.vertices.end());
  auto mention = [&](const std::string& id, std::string_view context) {
    check_name(id);
    if (raw.explicit_vertices && !declared.count(id)) {
      throw Error(ErrorCode::kDanglingEdge,
                  std::string(context) + " references undeclared vertex '" + id + "'");
    }
    declared.insert(id);
  };
  for (const auto& id : raw.vertices) check_name(id);
  mention(*raw.start, "start");
  mention(*raw.target, "target");
  for (const auto& [a, b] : raw.edges) {
    mention(a, "edge");
    mention(b, "edge");
  }
  for (const auto& [id, reload] : raw.traps) mention(id, "trap");

  Topology topology(std::vector<std::string>(declared.begin(), declared.end()), raw.edges,
                    *raw.start, *raw.target);

  std::vector<int> reload(topology.vertex_count(), 0);
  for (const auto& [id, value] : raw.traps) {
    VertexId v = *topology.find(id);
    if (topology.is_terminal(v)) {
      throw Error(ErrorCode::kTrapOnTerminal, "trap declared on terminal '" + id + "'");
    }
    if (value < 1) {
      throw Error(ErrorCode::kZeroReload, "trap '" + id + "' needs a reload time of at least 1");
    }
    if (reload[v] != 0) {
      throw Error(ErrorCode::kInvalidParameter, "trap '" + id + "' declared twice");
    }
    reload[v] = narrow_count(value, "reload time");
  }

  if (*raw.assets < 1) throw Error(ErrorCode::kNoAssets, "an instance needs at least one asset");
  if (*raw.goal > *raw.assets) {
    throw Error(ErrorCode::kGoalExceedsAssets, "goal " + std::to_string(*raw.goal) +
                                                   " exceeds asset count " +
                                                   std::to_string(*raw.assets));
  }
  return Instance(std::move(topology), TrapTable(std::move(reload)),
                  narrow_count(*raw.assets, "asset count"), narrow_count(*raw.goal, "goal"));
}

RawInstance to_raw(const Instance& instance) {
  const Topology& g = instance.topology();
  RawInstance raw;
  raw.explicit_vertices = true;
  raw.vertices = g.names();
  for (const auto& [u, v] : g.edges()) raw.edges.emplace_back(g.name(u), g.name(v));
  for (VertexId r : instance.traps().traps()) {
    raw.traps.emplace_back(g.name(r), instance.traps().reload(r));
  }
  raw.start = g.name(g.start());
  raw.target = g.name(g.target());
  raw.assets = instance.assets();
  raw.goal = instance.goal();
  return raw;
}

Plan::Plan(std::vector<std::vector<Location>> rows) : rows_(std::move(rows)) {
  for (const auto& row : rows_) {
    if (row.empty() || row.size() != rows_.front().size()) {
      throw Error(ErrorCode::kInvalidPlan, "plan rows must be non-empty and of equal length");
    }
  }
}

IndexedPlan index_plan(const Instance& instance, const Plan& plan) {
  IndexedPlan out;
  out.rows.reserve(plan.asset_count());
  for (const auto& row : plan.rows()) {
    std::vector<VertexId> indexed;
    indexed.reserve(row.size());
    for (const auto& loc : row) {
      if (loc.is_dead()) {
        indexed.push_back(kDead);
        continue;
      }
      auto v = instance.topology().find(loc.vertex());
      if (!v) throw Error(ErrorCode::kInvalidPlan, "plan references unknown vertex '" + loc.vertex() + "'");
      indexed.push_back(*v);
    }
    out.rows.push_back(std::move(indexed));
  }
  return out;
}

Plan name_plan(const Instance& instance, const IndexedPlan& plan) {
  std::vector<std::vector<Location>> rows;
  rows.reserve(plan.rows.size());
  for (const auto& row : plan.rows) {
    std::vector<Location> named;
    named.reserve(row.size());
    for (VertexId v : row) {
      named.push_back(v == kDead ? Location::dead() : Location(instance.topology().name(v)));
    }
    rows.push_back(std::move(named));
  }
  return Plan(std::move(rows));
}

std::string_view algorithm_tag_name(AlgorithmTag tag) {
  switch (tag) {
    case AlgorithmTag::kPathRws: return "path-rws";
    case AlgorithmTag::kStarFormula: return "star-formula";
    case AlgorithmTag::kDisjointDp: return "disjoint-dp";
    case AlgorithmTag::kCondensedLinear: return "condensed-linear";
    case AlgorithmTag::kExactOracle: return "exact-oracle";
    case AlgorithmTag::kTriviallyYes: return "trivial-yes";
    case AlgorithmTag::kTriviallyNo: return "trivial-no";
  }
  return "unknown";
}

std::optional<AlgorithmTag> parse_algorithm_tag(std::string_view name) {
  for (auto tag : {AlgorithmTag::kPathRws, AlgorithmTag::kStarFormula, AlgorithmTag::kDisjointDp,
                   AlgorithmTag::kCondensedLinear, AlgorithmTag::kExactOracle,
                   AlgorithmTag::kTriviallyYes, AlgorithmTag::kTriviallyNo}) {
    if (algorithm_tag_name(tag) == name) return tag;
  }
  return std::nullopt;
}

}  // namespace rplan
