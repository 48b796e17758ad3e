#include <doctest.h>

#include <cstring>
#include <string>

#include "routingplan/routingplan.h"

namespace {

const char* kPath =
    "assets 2\ngoal 1\nstart s\ntarget t\ntrap v3 1\n"
    "edge s v2\nedge v2 v3\nedge v3 v4\nedge v4 t\n";
const char* kTable = "plan 2 5\nrow 0 s v2 v3 DEAD DEAD DEAD\nrow 1 s s v2 v3 v4 t\n";

std::string take(char* text) {
  std::string out = text ? text : "";
  rp_string_free(text);
  return out;
}

}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::string(rp_version()).size() > 0);
  CHECK(std::string(rp_status_name(RP_OK)) == "Ok");
  CHECK(std::string(rp_status_name(RP_GUARD_EXCEEDED)) == "GuardExceeded");
}

TEST_CASE("instances and plans through the C surface") {
  rp_instance* inst = nullptr;
  REQUIRE(rp_instance_parse(kPath, &inst) == RP_OK);
  CHECK(rp_instance_vertex_count(inst) == 5);
  CHECK(rp_instance_edge_count(inst) == 4);
  CHECK(rp_instance_trap_count(inst) == 1);
  CHECK(rp_instance_assets(inst) == 2);
  CHECK(rp_instance_goal(inst) == 1);

  char* text = nullptr;
  REQUIRE(rp_instance_serialize(inst, &text) == RP_OK);
  rp_instance* again = nullptr;
  CHECK(rp_instance_parse(text, &again) == RP_OK);
  rp_string_free(text);
  rp_instance_free(again);

  rp_plan* plan = nullptr;
  REQUIRE(rp_plan_parse(kTable, &plan) == RP_OK);
  CHECK(rp_plan_asset_count(plan) == 2);
  CHECK(rp_plan_length(plan) == 5);

  rp_verdict* verdict = nullptr;
  REQUIRE(rp_validate(inst, plan, &verdict) == RP_OK);
  CHECK(rp_verdict_is_valid(verdict) == 1);
  CHECK(rp_verdict_survivors(verdict) == 1);
  CHECK(rp_verdict_violation_count(verdict) == 0);
  rp_verdict_free(verdict);

  rp_length_bound bound;
  REQUIRE(rp_check_length_bound(inst, plan, &bound) == RP_OK);
  CHECK(bound.bound == 81);
  CHECK(bound.flags == 0);
  CHECK(bound.activations == 1);

  CHECK(take(nullptr).empty());
  char* timeline = nullptr;
  REQUIRE(rp_render_timeline(inst, plan, &timeline) == RP_OK);
  CHECK(take(timeline).find("1~") != std::string::npos);
  char* dot = nullptr;
  REQUIRE(rp_render_dot(inst, nullptr, &dot) == RP_OK);
  CHECK(take(dot).rfind("graph", 0) == 0);

  rp_plan_free(plan);
  rp_instance_free(inst);
}

TEST_CASE("errors come back as status codes") {
  rp_instance* inst = nullptr;
  CHECK(rp_instance_parse("assets 1\ngoal 1\nstart s\ntarget t\ntrap s 1\nedge s t\n", &inst) ==
        RP_TRAP_ON_TERMINAL);
  CHECK(inst == nullptr);
  CHECK(std::strlen(rp_last_error()) > 0);
  CHECK(rp_instance_parse("nonsense", &inst) == RP_SYNTAX_ERROR);
  CHECK(rp_instance_load("/nonexistent/file.inst", &inst) == RP_IO_ERROR);
  CHECK(rp_instance_parse(nullptr, &inst) == RP_INVALID_PARAMETER);

  REQUIRE(rp_instance_parse(kPath, &inst) == RP_OK);
  rp_plan* bad = nullptr;
  REQUIRE(rp_plan_parse("plan 1 2\nrow 0 s v2 t\n", &bad) == RP_OK);
  rp_verdict* verdict = nullptr;
  CHECK(rp_validate(inst, bad, &verdict) == RP_INVALID_PLAN);
  rp_plan_free(bad);

  rp_plan* broken = nullptr;
  REQUIRE(rp_plan_parse("plan 2 5\nrow 0 s v2 v3 v4 t t\nrow 1 s s v2 v3 v4 t\n", &broken) == RP_OK);
  REQUIRE(rp_validate(inst, broken, &verdict) == RP_OK);
  CHECK(rp_verdict_is_valid(verdict) == 0);
  REQUIRE(rp_verdict_violation_count(verdict) > 0);
  CHECK(rp_verdict_violation_condition(verdict, 0) == 5);
  CHECK(std::strlen(rp_verdict_violation_message(verdict, 0)) > 0);
  rp_verdict_free(verdict);
  rp_plan_free(broken);

  rp_solve_options opts;
  rp_solve_options_init(&opts);
  opts.algorithm = "star-formula";
  rp_report* report = nullptr;
  CHECK(rp_solve(inst, &opts, &report) == RP_NOT_A_STAR);
  opts.algorithm = "nonsense";
  CHECK(rp_solve(inst, &opts, &report) == RP_INVALID_PARAMETER);
  rp_solve_options_init(&opts);
  opts.max_assets = 1;
  CHECK(rp_oracle(inst, &opts, &report) == RP_GUARD_EXCEEDED);
  rp_instance_free(inst);
}

TEST_CASE("solving and classifying") {
  rp_instance* inst = nullptr;
  REQUIRE(rp_instance_parse(kPath, &inst) == RP_OK);

  rp_report* report = nullptr;
  REQUIRE(rp_solve(inst, nullptr, &report) == RP_OK);
  CHECK(rp_report_survivors(report) == 1);
  CHECK(std::string(rp_report_algorithm(report)) == "path-rws");
  REQUIRE(rp_report_has_witness(report));
  rp_plan* witness = nullptr;
  REQUIRE(rp_report_witness(report, &witness) == RP_OK);
  rp_verdict* verdict = nullptr;
  REQUIRE(rp_validate(inst, witness, &verdict) == RP_OK);
  CHECK(rp_verdict_survivors(verdict) == 1);
  rp_verdict_free(verdict);
  rp_plan_free(witness);
  rp_report_free(report);

  REQUIRE(rp_oracle(inst, nullptr, &report) == RP_OK);
  CHECK(rp_report_survivors(report) == 1);
  CHECK(std::string(rp_report_algorithm(report)) == "exact-oracle");
  CHECK(rp_report_has_stats(report));
  CHECK(rp_report_states_expanded(report) > 0);
  rp_report_free(report);

  rp_class* cls = nullptr;
  REQUIRE(rp_classify(inst, &cls) == RP_OK);
  CHECK(std::string(rp_class_tag(cls)) == "path");
  REQUIRE(rp_class_route_count(cls) == 1);
  CHECK(std::string(rp_class_route(cls, 0)) == "v2 v3 v4");
  CHECK(rp_class_evidence_count(cls) > 0);
  rp_class_free(cls);
  rp_instance_free(inst);
}

TEST_CASE("generators through the C surface") {
  rp_instance* batch = nullptr;
  REQUIRE(rp_gen_batch(2, 0, &batch) == RP_OK);
  CHECK(rp_instance_assets(batch) == 6);
  CHECK(rp_instance_goal(batch) == 2);
  rp_instance_free(batch);
  CHECK(rp_gen_batch(0, 0, &batch) == RP_INVALID_PARAMETER);

  const int members[] = {1, 2, 3, 1, 2, 3, 1, 2, 3};
  rp_receipt* receipt = nullptr;
  REQUIRE(rp_gen_rx3c(3, members, 3, nullptr, &receipt) == RP_OK);
  CHECK(rp_receipt_consistent(receipt));
  CHECK(rp_receipt_faithful(receipt));
  bool saw_assets = false;
  for (std::size_t i = 0; i < rp_receipt_item_count(receipt); ++i) {
    long long actual = 0;
    CHECK(rp_receipt_item_actual(receipt, i, &actual) == 1);
    CHECK(actual == rp_receipt_item_expected(receipt, i));
    if (std::string(rp_receipt_item_name(receipt, i)) == "assets") {
      saw_assets = true;
      CHECK(actual == 30);
    }
  }
  CHECK(saw_assets);
  rp_instance* inst = nullptr;
  REQUIRE(rp_receipt_instance(receipt, &inst) == RP_OK);
  CHECK(rp_instance_assets(inst) == 30);
  rp_instance_free(inst);
  rp_receipt_free(receipt);

  const long long sizes[] = {3, 3, 2, 3, 3, 2, 3, 3, 2};
  rp_gen_options gen;
  rp_gen_options_init(&gen);
  gen.dry_run = 1;
  CHECK(rp_gen_3partition(sizes, 9, 8, &gen, &receipt) == RP_NOT_3PARTITION);
  gen.relax_bounds = 1;
  REQUIRE(rp_gen_3partition(sizes, 9, 8, &gen, &receipt) == RP_OK);
  CHECK(rp_receipt_dry_run(receipt));
  CHECK(rp_receipt_consistent(receipt));
  CHECK(rp_receipt_instance(receipt, &inst) == RP_INVALID_PARAMETER);
  rp_receipt_free(receipt);

  rp_instance* a = nullptr;
  rp_instance* b = nullptr;
  REQUIRE(rp_gen_random(7, 6, 0.3, 3, 3, &a) == RP_OK);
  REQUIRE(rp_gen_random(7, 6, 0.3, 3, 3, &b) == RP_OK);
  char* ta = nullptr;
  char* tb = nullptr;
  rp_instance_serialize(a, &ta);
  rp_instance_serialize(b, &tb);
  CHECK(take(ta) == take(tb));
  rp_instance_free(a);
  rp_instance_free(b);
}

TEST_CASE("bench through the C surface") {
  rp_bench_options opts;
  rp_bench_options_init(&opts);
  opts.timing = 0;
  char* table = nullptr;
  int issues = -1;
  REQUIRE(rp_bench(RPLAN_CORPUS_DIR, &opts, &table, &issues) == RP_OK);
  CHECK(issues == 0);
  std::string text = take(table);
  CHECK(text.find("01_single_trap.inst") != std::string::npos);
  CHECK(text.find("issues: 0") != std::string::npos);

  opts.json = 1;
  REQUIRE(rp_bench(RPLAN_CORPUS_DIR, &opts, &table, &issues) == RP_OK);
  CHECK(take(table).find("\"rows\"") != std::string::npos);
}
