#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rplan/error.hpp"

namespace rplan {

// Dense vertex index into Topology. Vertices are numbered in lexicographic
// order of their ids, so equal vertex sets always get equal numberings.
using VertexId = int;

// Location token for eliminated assets inside indexed plans.
inline constexpr VertexId kDead = -1;

// Reserved spelling of the eliminated location in plan files.
inline constexpr std::string_view kDeadToken = "DEAD";

class Topology {
 public:
  // Vertex ids may come in any order; edges are undirected pairs of ids.
  // Throws Error on self loops, duplicate edges, unknown endpoints and s == t.
  Topology(std::vector<std::string> vertices,
           const std::vector<std::pair<std::string, std::string>>& edges,
           const std::string& start, const std::string& target);

  std::size_t vertex_count() const { return names_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  const std::string& name(VertexId v) const { return names_.at(v); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<VertexId> find(std::string_view id) const;

  std::span<const VertexId> neighbors(VertexId v) const { return adjacency_.at(v); }
  std::size_t degree(VertexId v) const { return adjacency_.at(v).size(); }
  bool adjacent(VertexId a, VertexId b) const;

  VertexId start() const { return start_; }
  VertexId target() const { return target_; }
  bool is_terminal(VertexId v) const { return v == start_ || v == target_; }

  // Undirected edges as (u, v) with u < v, sorted.
  std::vector<std::pair<VertexId, VertexId>> edges() const;

  friend bool operator==(const Topology&, const Topology&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<VertexId>> adjacency_;
  std::size_t edge_count_ = 0;
  VertexId start_ = 0;
  VertexId target_ = 0;
};

// Reload time per vertex; 0 marks a vertex without a trap.
class TrapTable {
 public:
  TrapTable() = default;
  explicit TrapTable(std::vector<int> reload_by_vertex);

  bool is_trap(VertexId v) const { return reload_.at(v) > 0; }
  int reload(VertexId v) const { return reload_.at(v); }
  std::size_t count() const { return traps_.size(); }
  // Trap vertices in increasing id order.
  const std::vector<VertexId>& traps() const { return traps_; }
  long long reload_sum() const;

  friend bool operator==(const TrapTable&, const TrapTable&) = default;

 private:
  std::vector<int> reload_;
  std::vector<VertexId> traps_;
};

class Instance {
 public:
  Instance(Topology topology, TrapTable traps, int assets, int goal);

  const Topology& topology() const { return topology_; }
  const TrapTable& traps() const { return traps_; }
  int assets() const { return assets_; }
  int goal() const { return goal_; }

  std::size_t vertex_count() const { return topology_.vertex_count(); }
  VertexId start() const { return topology_.start(); }
  VertexId target() const { return topology_.target(); }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  Topology topology_;
  TrapTable traps_;
  int assets_;
  int goal_;
};

// Unvalidated description, as produced by the file parser or generators.
struct RawInstance {
  // When true, every edge endpoint and trap must be listed in `vertices`;
  // otherwise vertices are declared by mention.
  bool explicit_vertices = false;
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<std::pair<std::string, long long>> traps;
  std::optional<std::string> start;
  std::optional<std::string> target;
  std::optional<long long> assets;
  std::optional<long long> goal;
};

Instance build_instance(const RawInstance& raw);

// Inverse of build_instance, used by the serializer and by transforms that
// rebuild instances on a modified topology.
RawInstance to_raw(const Instance& instance);

class Location {
 public:
  static Location dead() { return Location(); }
  explicit Location(std::string vertex) : vertex_(std::move(vertex)) {}

  bool is_dead() const { return !vertex_.has_value(); }
  const std::string& vertex() const { return *vertex_; }
  std::string token() const { return is_dead() ? std::string(kDeadToken) : *vertex_; }

  friend bool operator==(const Location&, const Location&) = default;

 private:
  Location() = default;
  std::optional<std::string> vertex_;
};

// Rectangular location matrix: one row per asset, L + 1 entries each. The
// validity conditions are checked by validate_plan, not here, so that broken
// certificates can still be represented and diagnosed.
class Plan {
 public:
  Plan() = default;
  explicit Plan(std::vector<std::vector<Location>> rows);

  std::size_t asset_count() const { return rows_.size(); }
  std::size_t length() const { return rows_.empty() ? 0 : rows_.front().size() - 1; }
  const std::vector<std::vector<Location>>& rows() const { return rows_; }
  const Location& at(std::size_t asset, std::size_t round) const {
    return rows_.at(asset).at(round);
  }

  friend bool operator==(const Plan&, const Plan&) = default;

 private:
  std::vector<std::vector<Location>> rows_;
};

// Plan over vertex indices with kDead; rows[a][j].
struct IndexedPlan {
  std::vector<std::vector<VertexId>> rows;

  std::size_t length() const { return rows.empty() ? 0 : rows.front().size() - 1; }
  friend bool operator==(const IndexedPlan&, const IndexedPlan&) = default;
};

// Throws Error(kInvalidPlan) on unknown vertex ids or ragged rows.
IndexedPlan index_plan(const Instance& instance, const Plan& plan);
Plan name_plan(const Instance& instance, const IndexedPlan& plan);

enum class AlgorithmTag {
  kPathRws,
  kStarFormula,
  kDisjointDp,
  kCondensedLinear,
  kExactOracle,
  kTriviallyYes,
  kTriviallyNo,
};

std::string_view algorithm_tag_name(AlgorithmTag tag);
std::optional<AlgorithmTag> parse_algorithm_tag(std::string_view name);

struct SearchStats {
  std::uint64_t states_expanded = 0;
  std::uint64_t states_stored = 0;
  std::uint64_t frontier_peak = 0;

  friend bool operator==(const SearchStats&, const SearchStats&) = default;
};

struct SolveReport {
  int max_survivors = 0;
  // Absent only when no valid plan exists at all (e.g. t unreachable and no
  // trap to absorb the assets).
  std::optional<Plan> witness;
  AlgorithmTag algorithm = AlgorithmTag::kExactOracle;
  std::vector<std::string> diagnostics;
  std::optional<SearchStats> stats;
};

}  // namespace rplan
