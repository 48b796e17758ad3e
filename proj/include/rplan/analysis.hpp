#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rplan/core.hpp"

namespace rplan {

enum class TopologyTag {
  kTriviallyNo,
  kTriviallyYes,
  kPath,
  kStar,
  kDisjointPaths,
  kCondensedLinear,
  kGeneral,
};

std::string_view topology_tag_name(TopologyTag tag);

// Contraction of every connected component of plain (non-trap, non-terminal)
// vertices into a supernode. Condensed node ids: retained vertices first, in
// the order of `retained`, then one node per component.
struct CondensedTopology {
  std::vector<VertexId> retained;                 // traps plus s and t, sorted
  std::vector<std::vector<VertexId>> components;  // members, sorted; ordered by smallest member
  std::vector<int> component_of;                  // per original vertex, -1 if retained
  std::vector<std::vector<int>> adjacency;        // sorted neighbour lists over condensed ids

  int node_count() const { return static_cast<int>(adjacency.size()); }
  int supernode_count() const { return static_cast<int>(components.size()); }
  bool is_supernode(int node) const { return node >= static_cast<int>(retained.size()); }
  int node_of(VertexId v) const;
  std::size_t edge_count() const;
  std::string node_label(const Instance& instance, int node) const;
};

struct TopologyClass {
  TopologyTag tag = TopologyTag::kGeneral;
  // Path and DisjointPaths: inner vertices of each route, ordered from the s
  // side. TriviallyYes: one route holding a full trap-free s..t path.
  std::vector<std::vector<VertexId>> routes;
  // CondensedLinear: the condensed graph and its routes over condensed ids.
  std::optional<CondensedTopology> condensed;
  std::vector<std::vector<int>> condensed_routes;
  std::vector<std::string> evidence;
};

struct PreprocessResult {
  // Set for TriviallyNo / TriviallyYes; empty means pass-through.
  std::optional<TopologyClass> verdict;
  // The component of s (and t); equal to the input when nothing was dropped.
  Instance instance;
  bool restricted = false;
  // m-survivor plan for TriviallyYes.
  std::optional<Plan> witness;
};

// Shortest s-t path avoiding traps (BFS, neighbours in id order), or empty.
std::vector<VertexId> trap_free_path(const Instance& instance);

// Assets file through `path` (s..t) one per round; length m + |path| - 2.
Plan stream_plan(const Instance& instance, const std::vector<VertexId>& path);

// Copy of the instance restricted to the given vertex names.
Instance induced_instance(const Instance& instance, const std::vector<VertexId>& keep);

PreprocessResult preprocess(const Instance& instance);

// Shape tests used by classify and by the forced solvers.
// Inner vertices of G when G is a simple path with ends s and t.
std::optional<std::vector<VertexId>> path_route(const Instance& instance);
// Trap centre when G is a star (at least 3 vertices) with s and t as leaves.
std::optional<VertexId> star_center(const Instance& instance);
// Routes when G minus s,t is a disjoint union of s-t paths.
std::optional<std::vector<std::vector<VertexId>>> disjoint_path_routes(const Instance& instance,
                                                                      std::string* why = nullptr);
// Condensed routes when every trap has degree two and the condensed graph
// passes the disjoint-paths test.
std::optional<std::vector<std::vector<int>>> condensed_linear_routes(
    const Instance& instance, const CondensedTopology& condensed, std::string* why = nullptr);

TopologyClass classify(const Instance& instance);

CondensedTopology condense(const Instance& instance);

// Replaces every supernode with a simple path over the component's own
// vertex names, farthest from the next trap first. Throws
// Error(kNotCondensedLinear).
Instance linearize(const Instance& instance, const CondensedTopology& condensed);

}  // namespace rplan
