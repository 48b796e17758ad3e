#include <doctest.h>

#include <algorithm>

#include "rplan/analysis.hpp"
#include "rplan/engine.hpp"
#include "rplan/formats.hpp"
#include "rplan/oracle.hpp"
#include "../support/fixtures.hpp"

using namespace rplan;

namespace {

std::vector<std::size_t> component_sizes(const CondensedTopology& c) {
  std::vector<std::size_t> sizes;
  for (const auto& comp : c.components) sizes.push_back(comp.size());
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

ErrorCode linearize_error(const Instance& inst) {
  try {
    linearize(inst, condense(inst));
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kOk;
}

}  // namespace

TEST_CASE("preprocess: unreachable target") {
  Instance inst = parse_instance("assets 2\ngoal 1\nstart s\ntarget t\ntrap r 1\nedge s r\nedge a t\n");
  PreprocessResult result = preprocess(inst);
  REQUIRE(result.verdict);
  CHECK(result.verdict->tag == TopologyTag::kTriviallyNo);
  CHECK_FALSE(result.witness);
}

TEST_CASE("preprocess: trap-free path") {
  Instance inst = fixtures::path({0}, 3);
  PreprocessResult result = preprocess(inst);
  REQUIRE(result.verdict);
  CHECK(result.verdict->tag == TopologyTag::kTriviallyYes);
  REQUIRE(result.witness);
  CHECK(result.witness->length() == 4);
  auto verdict = validate_plan(inst, *result.witness);
  CHECK(verdict.is_valid);
  CHECK(verdict.survivors == 3);
}

TEST_CASE("preprocess: every route crosses a trap") {
  Instance inst = fixtures::example1();
  PreprocessResult result = preprocess(inst);
  CHECK_FALSE(result.verdict);
  CHECK_FALSE(result.restricted);
  CHECK(result.instance == inst);
}

TEST_CASE("preprocess drops unreachable parts without changing the optimum") {
  Instance inst = parse_instance(std::string(fixtures::kExample1) + "trap x 2\nedge x y\n");
  PreprocessResult result = preprocess(inst);
  CHECK_FALSE(result.verdict);
  CHECK(result.restricted);
  CHECK(result.instance.vertex_count() == 5);
  CHECK(result.instance == fixtures::example1());
  CHECK(oracle_solve(inst).max_survivors == oracle_solve(result.instance).max_survivors);
}

TEST_CASE("preprocess treats a direct edge as a trap-free route") {
  Instance inst = parse_instance("assets 2\ngoal 1\nstart s\ntarget t\ntrap r 1\nedge s r\nedge r t\nedge s t\n");
  PreprocessResult result = preprocess(inst);
  REQUIRE(result.verdict);
  CHECK(result.verdict->tag == TopologyTag::kTriviallyYes);
  REQUIRE(result.witness);
  CHECK(validate_plan(inst, *result.witness).survivors == 2);
}

TEST_CASE("classify picks the most specific shape") {
  Instance ex1 = fixtures::example1();
  TopologyClass path = classify(ex1);
  CHECK(path.tag == TopologyTag::kPath);
  REQUIRE(path.routes.size() == 1);
  CHECK(path.routes[0].size() == 3);
  CHECK_FALSE(path.evidence.empty());

  TopologyClass two = classify(fixtures::two_paths({0, 1, 0}, {1, 0, 0}, 3));
  CHECK(two.tag == TopologyTag::kDisjointPaths);
  CHECK(two.routes.size() == 2);

  CHECK(classify(fixtures::detour()).tag == TopologyTag::kGeneral);
  CHECK(classify(fixtures::star(4, 1, 1)).tag == TopologyTag::kStar);
  CHECK(classify(fixtures::star(4, 1)).tag == TopologyTag::kPath);

  TopologyClass tri = classify(fixtures::triangle(2, 1));
  CHECK(tri.tag == TopologyTag::kCondensedLinear);
  REQUIRE(tri.condensed);
  CHECK(tri.condensed_routes.size() == 1);
}

TEST_CASE("topology tag names") {
  CHECK(topology_tag_name(TopologyTag::kCondensedLinear) == "condensed-linear");
  CHECK(topology_tag_name(TopologyTag::kGeneral) == "general");
}

TEST_CASE("condense: one trap splitting two plain components") {
  Instance inst = parse_instance("assets 1\ngoal 1\nstart s\ntarget t\ntrap r 1\n"
                                 "edge s a\nedge a b\nedge b r\nedge r c\nedge c t\n");
  CondensedTopology c = condense(inst);
  CHECK(c.supernode_count() == 2);
  CHECK(c.retained.size() == 3);
  CHECK(c.node_count() == 5);
  CHECK(c.edge_count() == 4);
  CHECK(component_sizes(c) == std::vector<std::size_t>{1, 2});
  const Topology& g = inst.topology();
  CHECK(c.node_of(*g.find("a")) == c.node_of(*g.find("b")));
  CHECK(c.node_of(*g.find("a")) != c.node_of(*g.find("c")));
  CHECK(c.is_supernode(c.node_of(*g.find("c"))));
  CHECK_FALSE(c.is_supernode(c.node_of(*g.find("r"))));
}

TEST_CASE("condense: trap-free interior becomes one supernode") {
  Instance inst = parse_instance("assets 1\ngoal 1\nstart s\ntarget t\nedge s a\nedge a b\nedge a c\nedge b t\n");
  CondensedTopology c = condense(inst);
  CHECK(c.supernode_count() == 1);
  CHECK(c.node_count() == 3);
  const int super = c.node_of(*inst.topology().find("a"));
  CHECK(c.adjacency[super].size() == 2);
}

TEST_CASE("condense: a bare trap path is unchanged") {
  Instance inst = fixtures::path({2}, 1);
  CondensedTopology c = condense(inst);
  CHECK(c.supernode_count() == 0);
  CHECK(c.node_count() == 3);
  CHECK(c.edge_count() == 2);
}

TEST_CASE("linearize: triangle component becomes a path") {
  Instance inst = fixtures::triangle(2, 1);
  Instance lin = linearize(inst, condense(inst));
  CHECK(lin.vertex_count() == inst.vertex_count());
  CHECK(lin.topology().edge_count() == 5);
  auto route = path_route(lin);
  REQUIRE(route);
  CHECK(route->size() == 4);
  CHECK(lin.topology().name(route->back()) == "r");
  CHECK(disjoint_path_routes(lin).has_value());
  TopologyTag tag = classify(lin).tag;
  CHECK((tag == TopologyTag::kPath || tag == TopologyTag::kDisjointPaths));
}

TEST_CASE("linearize: paths are left alone") {
  Instance inst = fixtures::example1();
  CHECK(linearize(inst, condense(inst)) == inst);
}

TEST_CASE("linearize: a dangling trap is refused") {
  CHECK(linearize_error(fixtures::detour()) == ErrorCode::kNotCondensedLinear);
  CHECK(linearize_error(fixtures::triangle(2, 1)) == ErrorCode::kOk);
}

TEST_CASE("condensing a linearized instance gives the same condensed shape") {
  std::vector<Instance> cases = {
      fixtures::triangle(2, 1),
      parse_instance("assets 2\ngoal 1\nstart s\ntarget t\ntrap r 1\ntrap q 2\n"
                     "edge s a\nedge a b\nedge b c\nedge c a\nedge c r\nedge r d\nedge d e\nedge e f\n"
                     "edge d f\nedge f q\nedge q t\n"),
  };
  for (const Instance& inst : cases) {
    CondensedTopology before = condense(inst);
    CondensedTopology after = condense(linearize(inst, before));
    CHECK(before.node_count() == after.node_count());
    CHECK(before.edge_count() == after.edge_count());
    CHECK(component_sizes(before) == component_sizes(after));
  }
}
