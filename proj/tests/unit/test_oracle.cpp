#include <doctest.h>

#include "rplan/engine.hpp"
#include "rplan/formats.hpp"
#include "rplan/generators.hpp"
#include "rplan/oracle.hpp"
#include "../support/fixtures.hpp"
#include "../support/reference.hpp"

using namespace rplan;

namespace {

void check_witness(const Instance& inst, const SolveReport& report) {
  REQUIRE(report.witness);
  auto verdict = validate_plan(inst, *report.witness);
  CHECK(verdict.is_valid);
  CHECK(verdict.survivors == report.max_survivors);
}

}  // namespace

TEST_CASE("oracle on the single-trap path") {
  Instance inst = fixtures::example1();
  SolveReport report = oracle_solve(inst);
  CHECK(report.max_survivors == 1);
  CHECK(report.algorithm == AlgorithmTag::kExactOracle);
  REQUIRE(report.stats);
  CHECK(report.stats->states_expanded > 0);
  check_witness(inst, report);
}

TEST_CASE("oracle finds the detour through the side trap") {
  Instance inst = fixtures::detour();
  SolveReport report = oracle_solve(inst);
  CHECK(report.max_survivors == 1);
  check_witness(inst, report);
}

TEST_CASE("the bottom route alone still lets one asset through") {
  // An asset parks on the first reload-2 trap and is eliminated when it
  // re-arms, which opens the pair for a later asset. The greedy never parks.
  Instance inst = fixtures::detour_bottom();
  SolveReport report = oracle_solve(inst);
  CHECK(report.max_survivors == 1);
  check_witness(inst, report);
  VertexId v4 = *inst.topology().find("v4");
  auto rows = index_plan(inst, *report.witness).rows;
  bool parked = false;
  for (const auto& row : rows)
    for (std::size_t j = 2; j < row.size(); ++j)
      parked = parked || (row[j] == kDead && row[j - 1] == v4 && row[j - 2] == v4);
  CHECK(parked);
}

TEST_CASE("oracle on a trap-free triangle with a direct edge") {
  Instance inst = parse_instance("assets 3\ngoal 1\nstart s\ntarget t\nedge s v\nedge v t\nedge s t\n");
  SolveReport report = oracle_solve(inst);
  CHECK(report.max_survivors == 3);
  check_witness(inst, report);
}

TEST_CASE("guard refuses large instances") {
  Instance inst = fixtures::path({1, 0, 0, 0, 0, 0, 0, 0, 0, 0}, 2);
  CHECK_FALSE(within_guard(inst, OracleGuard{}));
  CHECK_THROWS_AS(oracle_solve(inst), Error);
  try {
    oracle_solve(inst);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kGuardExceeded);
  }
  OracleOptions wide;
  wide.guard.max_vertices = 20;
  CHECK(oracle_solve(inst, wide).max_survivors == 1);

  OracleOptions few;
  few.guard.max_assets = 1;
  CHECK_THROWS_AS(oracle_solve(fixtures::example1(), few), Error);
}

TEST_CASE("a wider guard never changes the optimum") {
  OracleOptions wide;
  wide.guard = {16, 12, 40};
  for (const Instance& inst : {fixtures::example1(), fixtures::triangle(3, 2), fixtures::star(4, 1)}) {
    CHECK(oracle_solve(inst).max_survivors == oracle_solve(inst, wide).max_survivors);
  }
}

TEST_CASE("length bound diagnostic") {
  Instance inst = fixtures::example1();
  auto report = check_length_bound(inst, fixtures::example2());
  CHECK(report.bound == 81);
  CHECK(report.activations == std::vector<int>{2});
  CHECK(report.flags.empty());
  CHECK(report.length == 5);

  std::string padded = "plan 2 105\nrow 0 s v2 v3";
  std::string red = "row 1 s s v2 v3";
  for (int i = 0; i < 100; ++i) red += " v3";
  for (int i = 0; i < 103; ++i) padded += " DEAD";
  red += " v4 t\n";
  CHECK_THROWS_AS(check_length_bound(inst, parse_plan(padded + "\n" + red)), Error);
}

TEST_CASE("oracle witnesses stay inside the length bound") {
  for (const Instance& inst : {fixtures::example1(), fixtures::detour(), fixtures::star(6, 4),
                               fixtures::two_paths({1}, {2}, 4)}) {
    SolveReport report = oracle_solve(inst);
    REQUIRE(report.witness);
    CHECK(check_length_bound(inst, *report.witness).flags.empty());
  }
}

TEST_CASE("deduplicated and plain searches agree on tiny instances") {
  for (const Instance& inst : {fixtures::example1(), fixtures::star(3, 1), fixtures::triangle(2, 1),
                               fixtures::path({1, 1}, 3), fixtures::two_paths({1}, {}, 3)}) {
    OracleOptions plain;
    plain.dedup = false;
    plain.max_depth = 12;
    CHECK(oracle_solve(inst).max_survivors == oracle_solve(inst, plain).max_survivors);
  }
}

TEST_CASE("batch gadget loses exactly x + 2 assets") {
  for (int x = 1; x <= 2; ++x) {
    Instance inst = batch_instance(x);
    CHECK(inst.assets() == 2 * x + 2);
    SolveReport report = oracle_solve(inst);
    CHECK(report.max_survivors == x);
    CHECK(inst.assets() - report.max_survivors == x + 2);
    check_witness(inst, report);
  }
}

TEST_CASE("a descending trap chain needs c + 1 consecutive assets") {
  for (int c = 1; c <= 3; ++c) {
    std::vector<int> reloads;
    for (int r = c; r >= 1; --r) reloads.push_back(r);
    for (int m = 1; m <= c + 2; ++m) {
      const int expected = m >= c + 1 ? 1 : 0;
      Instance inst = fixtures::path(reloads, m);
      CHECK_MESSAGE(std::min(oracle_solve(inst).max_survivors, 1) == expected, "c=" << c << " m=" << m);
    }
  }
}

TEST_CASE("oracle agrees with the reference search on random instances") {
  int compared = 0;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    RandomSpec params;
    params.seed = seed;
    params.vertices = 4 + static_cast<int>(seed % 3);
    params.trap_density = 0.6;
    params.reload_max = 2;
    params.assets = 1 + static_cast<int>(seed % 3);
    Instance inst = gen_random(params);
    if (!within_guard(inst, OracleGuard{})) continue;
    SolveReport report = oracle_solve(inst);
    CHECK_MESSAGE(report.max_survivors == reference::optimum(inst), serialize_instance(inst));
    check_witness(inst, report);
    ++compared;
  }
  CHECK(compared > 40);
}
