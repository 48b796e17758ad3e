#include <doctest.h>

#include "rplan/core.hpp"
#include "rplan/formats.hpp"
#include "../support/fixtures.hpp"

using namespace rplan;

namespace {

RawInstance example1_raw() {
  RawInstance raw;
  raw.edges = {{"s", "v2"}, {"v2", "v3"}, {"v3", "v4"}, {"v4", "t"}};
  raw.traps = {{"v3", 1}};
  raw.start = "s";
  raw.target = "t";
  raw.assets = 2;
  raw.goal = 1;
  return raw;
}

ErrorCode code_of(const RawInstance& raw) {
  try {
    build_instance(raw);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kOk;
}

}  // namespace

TEST_CASE("build_instance accepts the single-trap path") {
  Instance inst = build_instance(example1_raw());
  CHECK(inst.vertex_count() == 5);
  CHECK(inst.topology().edge_count() == 4);
  CHECK(inst.traps().count() == 1);
  CHECK(inst.assets() == 2);
  CHECK(inst.goal() == 1);
  VertexId v3 = *inst.topology().find("v3");
  CHECK(inst.traps().reload(v3) == 1);
  CHECK(inst.topology().name(inst.start()) == "s");
  CHECK(inst.topology().name(inst.target()) == "t");
}

TEST_CASE("build_instance rejects broken descriptions") {
  RawInstance raw = example1_raw();
  raw.traps = {{"s", 1}};
  CHECK(code_of(raw) == ErrorCode::kTrapOnTerminal);

  raw = example1_raw();
  raw.traps = {{"t", 2}};
  CHECK(code_of(raw) == ErrorCode::kTrapOnTerminal);

  raw = example1_raw();
  raw.goal = 3;
  CHECK(code_of(raw) == ErrorCode::kGoalExceedsAssets);

  raw = example1_raw();
  raw.traps = {{"v3", 0}};
  CHECK(code_of(raw) == ErrorCode::kZeroReload);

  raw = example1_raw();
  raw.explicit_vertices = true;
  raw.vertices = {"s", "v2", "v3", "v4"};
  CHECK(code_of(raw) == ErrorCode::kDanglingEdge);

  raw = example1_raw();
  raw.edges.push_back({"v2", "v2"});
  CHECK(code_of(raw) == ErrorCode::kSelfLoop);

  raw = example1_raw();
  raw.edges.push_back({"v3", "v2"});
  CHECK(code_of(raw) == ErrorCode::kDuplicateEdge);

  raw = example1_raw();
  raw.target.reset();
  CHECK(code_of(raw) == ErrorCode::kMissingField);

  raw = example1_raw();
  raw.assets = 0;
  CHECK(code_of(raw) == ErrorCode::kNoAssets);

  raw = example1_raw();
  raw.target = "s";
  CHECK(code_of(raw) == ErrorCode::kStartEqualsTarget);

  raw = example1_raw();
  raw.edges.push_back({"v4", "DEAD"});
  CHECK(code_of(raw) == ErrorCode::kReservedName);
}

TEST_CASE("construction is deterministic and numbering is lexicographic") {
  RawInstance a = example1_raw();
  RawInstance b = example1_raw();
  std::reverse(b.edges.begin(), b.edges.end());
  Instance ia = build_instance(a);
  Instance ib = build_instance(b);
  CHECK(ia == ib);
  const auto& names = ia.topology().names();
  CHECK(std::is_sorted(names.begin(), names.end()));
  CHECK(build_instance(to_raw(ia)) == ia);
}

TEST_CASE("plans map between names and indices") {
  Instance inst = fixtures::example1();
  Plan plan = fixtures::example2();
  CHECK(plan.asset_count() == 2);
  CHECK(plan.length() == 5);
  CHECK(plan.at(0, 3).is_dead());
  CHECK(plan.at(1, 5).vertex() == "t");

  IndexedPlan ip = index_plan(inst, plan);
  CHECK(ip.rows[0][3] == kDead);
  CHECK(ip.rows[1][0] == inst.start());
  CHECK(name_plan(inst, ip) == plan);

  Plan unknown({{Location("s"), Location("nowhere")}, {Location("s"), Location("t")}});
  CHECK_THROWS_AS(index_plan(inst, unknown), Error);
  try {
    index_plan(inst, unknown);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidPlan);
  }
}

TEST_CASE("algorithm tags round-trip through their names") {
  for (AlgorithmTag tag : {AlgorithmTag::kPathRws, AlgorithmTag::kStarFormula, AlgorithmTag::kDisjointDp,
                           AlgorithmTag::kCondensedLinear, AlgorithmTag::kExactOracle,
                           AlgorithmTag::kTriviallyYes, AlgorithmTag::kTriviallyNo}) {
    CHECK(parse_algorithm_tag(algorithm_tag_name(tag)) == tag);
  }
  CHECK(algorithm_tag_name(AlgorithmTag::kPathRws) == "path-rws");
  CHECK_FALSE(parse_algorithm_tag("bogus").has_value());
}
