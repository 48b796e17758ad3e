#include "routingplan/routingplan.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "rplan/analysis.hpp"
#include "rplan/bench.hpp"
#include "rplan/engine.hpp"
#include "rplan/formats.hpp"
#include "rplan/generators.hpp"
#include "rplan/oracle.hpp"
#include "rplan/poly_solvers.hpp"
#include "rplan/render.hpp"

struct rp_instance {
  rplan::Instance value;
};

struct rp_plan {
  rplan::Plan value;
};

struct rp_verdict {
  rplan::ValidationVerdict value;
};

struct rp_report {
  rplan::SolveReport value;
  std::string algorithm;
};

struct rp_class {
  std::string tag;
  std::vector<std::string> routes;
  std::vector<std::string> evidence;
};

struct rp_receipt {
  rplan::ReductionReceipt value;
};

namespace {

thread_local std::string last_error;

rp_status fail(rp_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <typename F>
rp_status guarded(F&& body) {
  try {
    body();
    return RP_OK;
  } catch (const rplan::Error& e) {
    return fail(static_cast<rp_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(RP_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RP_INTERNAL, e.what());
  }
}

void need(const void* pointer, const char* what) {
  if (!pointer) throw rplan::Error(rplan::ErrorCode::kInvalidParameter, std::string(what) + " is NULL");
}

char* copy_string(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

rplan::OracleOptions oracle_options(const rp_solve_options* options) {
  rplan::OracleOptions oracle;
  if (options) {
    oracle.guard.max_vertices = options->max_vertices;
    oracle.guard.max_assets = options->max_assets;
    oracle.guard.max_reload_sum = options->max_reload_sum;
  }
  return oracle;
}

rplan::GeneratorOptions generator_options(const rp_gen_options* options) {
  rplan::GeneratorOptions out;
  if (options) {
    out.dry_run = options->dry_run != 0;
    out.scale = options->scale;
    out.vertex_cap = options->vertex_cap;
    out.relax_bounds = options->relax_bounds != 0;
  }
  return out;
}

}  // namespace

extern "C" {

const char* rp_version(void) { return ROUTINGPLAN_VERSION; }

const char* rp_status_name(rp_status status) {
  static thread_local std::string name;
  name = std::string(rplan::error_code_name(static_cast<rplan::ErrorCode>(status)));
  return name.c_str();
}

const char* rp_last_error(void) { return last_error.c_str(); }

void rp_string_free(char* text) { std::free(text); }

rp_status rp_instance_parse(const char* text, rp_instance** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new rp_instance{rplan::parse_instance(text)};
  });
}

rp_status rp_instance_load(const char* path, rp_instance** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new rp_instance{rplan::load_instance(path)};
  });
}

rp_status rp_instance_serialize(const rp_instance* instance, char** out) {
  return guarded([&] {
    need(instance, "instance");
    need(out, "out");
    *out = copy_string(rplan::serialize_instance(instance->value));
  });
}

void rp_instance_free(rp_instance* instance) { delete instance; }

size_t rp_instance_vertex_count(const rp_instance* instance) {
  return instance ? instance->value.vertex_count() : 0;
}

size_t rp_instance_edge_count(const rp_instance* instance) {
  return instance ? instance->value.topology().edge_count() : 0;
}

size_t rp_instance_trap_count(const rp_instance* instance) {
  return instance ? instance->value.traps().count() : 0;
}

int rp_instance_assets(const rp_instance* instance) { return instance ? instance->value.assets() : 0; }

int rp_instance_goal(const rp_instance* instance) { return instance ? instance->value.goal() : 0; }

rp_status rp_plan_parse(const char* text, rp_plan** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new rp_plan{rplan::parse_plan(text)};
  });
}

rp_status rp_plan_load(const char* path, rp_plan** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new rp_plan{rplan::load_plan(path)};
  });
}

rp_status rp_plan_serialize(const rp_plan* plan, char** out) {
  return guarded([&] {
    need(plan, "plan");
    need(out, "out");
    *out = copy_string(rplan::serialize_plan(plan->value));
  });
}

void rp_plan_free(rp_plan* plan) { delete plan; }

size_t rp_plan_asset_count(const rp_plan* plan) { return plan ? plan->value.asset_count() : 0; }

size_t rp_plan_length(const rp_plan* plan) { return plan ? plan->value.length() : 0; }

rp_status rp_validate(const rp_instance* instance, const rp_plan* plan, rp_verdict** out) {
  return guarded([&] {
    need(instance, "instance");
    need(plan, "plan");
    need(out, "out");
    *out = new rp_verdict{rplan::validate_plan(instance->value, plan->value)};
  });
}

int rp_verdict_is_valid(const rp_verdict* verdict) { return verdict && verdict->value.is_valid; }

int rp_verdict_survivors(const rp_verdict* verdict) { return verdict ? verdict->value.survivors : 0; }

size_t rp_verdict_violation_count(const rp_verdict* verdict) {
  return verdict ? verdict->value.violations.size() : 0;
}

int rp_verdict_violation_condition(const rp_verdict* verdict, size_t index) {
  if (!verdict || index >= verdict->value.violations.size()) return 0;
  return verdict->value.violations[index].condition;
}

int rp_verdict_violation_asset(const rp_verdict* verdict, size_t index) {
  if (!verdict || index >= verdict->value.violations.size()) return -1;
  return verdict->value.violations[index].asset;
}

int rp_verdict_violation_round(const rp_verdict* verdict, size_t index) {
  if (!verdict || index >= verdict->value.violations.size()) return -1;
  return verdict->value.violations[index].round;
}

const char* rp_verdict_violation_message(const rp_verdict* verdict, size_t index) {
  if (!verdict || index >= verdict->value.violations.size()) return "";
  return verdict->value.violations[index].message.c_str();
}

void rp_verdict_free(rp_verdict* verdict) { delete verdict; }

void rp_solve_options_init(rp_solve_options* options) {
  if (!options) return;
  const rplan::OracleGuard guard;
  options->algorithm = nullptr;
  options->max_vertices = guard.max_vertices;
  options->max_assets = guard.max_assets;
  options->max_reload_sum = guard.max_reload_sum;
}

rp_status rp_solve(const rp_instance* instance, const rp_solve_options* options, rp_report** out) {
  return guarded([&] {
    need(instance, "instance");
    need(out, "out");
    rplan::SolveOptions solve_options;
    solve_options.oracle = oracle_options(options);
    if (options && options->algorithm && std::strcmp(options->algorithm, "auto") != 0) {
      solve_options.algorithm = rplan::parse_algorithm_tag(options->algorithm);
      if (!solve_options.algorithm) {
        throw rplan::Error(rplan::ErrorCode::kInvalidParameter,
                           std::string("unknown algorithm '") + options->algorithm + "'");
      }
    }
    rplan::SolveReport report = rplan::solve(instance->value, solve_options);
    const std::string name(rplan::algorithm_tag_name(report.algorithm));
    *out = new rp_report{std::move(report), name};
  });
}

rp_status rp_oracle(const rp_instance* instance, const rp_solve_options* options, rp_report** out) {
  return guarded([&] {
    need(instance, "instance");
    need(out, "out");
    rplan::SolveReport report = rplan::oracle_solve(instance->value, oracle_options(options));
    const std::string name(rplan::algorithm_tag_name(report.algorithm));
    *out = new rp_report{std::move(report), name};
  });
}

int rp_report_survivors(const rp_report* report) { return report ? report->value.max_survivors : 0; }

const char* rp_report_algorithm(const rp_report* report) { return report ? report->algorithm.c_str() : ""; }

size_t rp_report_diagnostic_count(const rp_report* report) {
  return report ? report->value.diagnostics.size() : 0;
}

const char* rp_report_diagnostic(const rp_report* report, size_t index) {
  if (!report || index >= report->value.diagnostics.size()) return "";
  return report->value.diagnostics[index].c_str();
}

int rp_report_has_witness(const rp_report* report) { return report && report->value.witness.has_value(); }

rp_status rp_report_witness(const rp_report* report, rp_plan** out) {
  return guarded([&] {
    need(report, "report");
    need(out, "out");
    if (!report->value.witness)
      throw rplan::Error(rplan::ErrorCode::kInvalidParameter, "report has no witness");
    *out = new rp_plan{*report->value.witness};
  });
}

int rp_report_has_stats(const rp_report* report) { return report && report->value.stats.has_value(); }

uint64_t rp_report_states_expanded(const rp_report* report) {
  return report && report->value.stats ? report->value.stats->states_expanded : 0;
}

uint64_t rp_report_states_stored(const rp_report* report) {
  return report && report->value.stats ? report->value.stats->states_stored : 0;
}

void rp_report_free(rp_report* report) { delete report; }

rp_status rp_check_length_bound(const rp_instance* instance, const rp_plan* plan, rp_length_bound* out) {
  return guarded([&] {
    need(instance, "instance");
    need(plan, "plan");
    need(out, "out");
    const rplan::LengthBoundReport report = rplan::check_length_bound(instance->value, plan->value);
    out->bound = report.bound;
    out->length = report.length;
    out->max_gap = 0;
    for (long long gap : report.gaps) out->max_gap = std::max(out->max_gap, gap);
    out->activations = report.activations.size();
    out->flags = report.flags.size();
  });
}

rp_status rp_classify(const rp_instance* instance, rp_class** out) {
  return guarded([&] {
    need(instance, "instance");
    need(out, "out");
    const rplan::TopologyClass cls = rplan::classify(instance->value);
    auto* result = new rp_class;
    result->tag = std::string(rplan::topology_tag_name(cls.tag));
    result->evidence = cls.evidence;
    const rplan::Topology& g = instance->value.topology();
    for (const auto& route : cls.routes) {
      std::string text;
      for (rplan::VertexId v : route) text += (text.empty() ? "" : " ") + g.name(v);
      result->routes.push_back(text);
    }
    for (const auto& route : cls.condensed_routes) {
      std::string text;
      for (int node : route) text += (text.empty() ? "" : " ") + cls.condensed->node_label(instance->value, node);
      result->routes.push_back(text);
    }
    *out = result;
  });
}

const char* rp_class_tag(const rp_class* cls) { return cls ? cls->tag.c_str() : ""; }

size_t rp_class_route_count(const rp_class* cls) { return cls ? cls->routes.size() : 0; }

const char* rp_class_route(const rp_class* cls, size_t index) {
  if (!cls || index >= cls->routes.size()) return "";
  return cls->routes[index].c_str();
}

size_t rp_class_evidence_count(const rp_class* cls) { return cls ? cls->evidence.size() : 0; }

const char* rp_class_evidence(const rp_class* cls, size_t index) {
  if (!cls || index >= cls->evidence.size()) return "";
  return cls->evidence[index].c_str();
}

void rp_class_free(rp_class* cls) { delete cls; }

void rp_gen_options_init(rp_gen_options* options) {
  if (!options) return;
  const rplan::GeneratorOptions defaults;
  options->dry_run = defaults.dry_run;
  options->scale = defaults.scale;
  options->vertex_cap = defaults.vertex_cap;
  options->relax_bounds = defaults.relax_bounds;
}

rp_status rp_gen_batch(long long x, int assets, rp_instance** out) {
  return guarded([&] {
    need(out, "out");
    std::optional<int> m;
    if (assets > 0) m = assets;
    *out = new rp_instance{rplan::batch_instance(x, m)};
  });
}

rp_status rp_gen_rx3c(int universe_size, const int* members, size_t set_count,
                      const rp_gen_options* options, rp_receipt** out) {
  return guarded([&] {
    need(out, "out");
    if (set_count) need(members, "members");
    std::vector<std::vector<int>> sets(set_count);
    for (size_t j = 0; j < set_count; ++j) sets[j].assign(members + 3 * j, members + 3 * j + 3);
    *out = new rp_receipt{rplan::gen_rx3c(universe_size, sets, generator_options(options))};
  });
}

rp_status rp_gen_3partition(const long long* sizes, size_t count, long long bound,
                            const rp_gen_options* options, rp_receipt** out) {
  return guarded([&] {
    need(out, "out");
    if (count) need(sizes, "sizes");
    std::vector<long long> values(sizes, sizes + count);
    *out = new rp_receipt{rplan::gen_3partition(values, bound, generator_options(options))};
  });
}

rp_status rp_gen_random(uint64_t seed, int vertices, double trap_density, int reload_max, int assets,
                        rp_instance** out) {
  return guarded([&] {
    need(out, "out");
    rplan::RandomSpec params;
    params.seed = seed;
    params.vertices = vertices;
    params.trap_density = trap_density;
    params.reload_max = reload_max;
    params.assets = assets;
    *out = new rp_instance{rplan::gen_random(params)};
  });
}

int rp_receipt_consistent(const rp_receipt* receipt) { return receipt && receipt->value.consistent(); }

int rp_receipt_faithful(const rp_receipt* receipt) { return receipt && receipt->value.faithful; }

int rp_receipt_dry_run(const rp_receipt* receipt) { return receipt && receipt->value.dry_run; }

const char* rp_receipt_provenance(const rp_receipt* receipt) {
  return receipt ? receipt->value.provenance.c_str() : "";
}

size_t rp_receipt_item_count(const rp_receipt* receipt) { return receipt ? receipt->value.items.size() : 0; }

const char* rp_receipt_item_name(const rp_receipt* receipt, size_t index) {
  if (!receipt || index >= receipt->value.items.size()) return "";
  return receipt->value.items[index].name.c_str();
}

long long rp_receipt_item_expected(const rp_receipt* receipt, size_t index) {
  if (!receipt || index >= receipt->value.items.size()) return 0;
  return receipt->value.items[index].expected;
}

int rp_receipt_item_actual(const rp_receipt* receipt, size_t index, long long* out) {
  if (!receipt || index >= receipt->value.items.size()) return 0;
  const auto& actual = receipt->value.items[index].actual;
  if (!actual) return 0;
  if (out) *out = *actual;
  return 1;
}

rp_status rp_receipt_instance(const rp_receipt* receipt, rp_instance** out) {
  return guarded([&] {
    need(receipt, "receipt");
    need(out, "out");
    if (!receipt->value.instance)
      throw rplan::Error(rplan::ErrorCode::kInvalidParameter, "dry-run receipt has no instance");
    *out = new rp_instance{*receipt->value.instance};
  });
}

void rp_receipt_free(rp_receipt* receipt) { delete receipt; }

rp_status rp_render_dot(const rp_instance* instance, const rp_plan* plan, char** out) {
  return guarded([&] {
    need(instance, "instance");
    need(out, "out");
    std::optional<rplan::Plan> p;
    if (plan) p = plan->value;
    *out = copy_string(rplan::render_dot(instance->value, p));
  });
}

rp_status rp_render_timeline(const rp_instance* instance, const rp_plan* plan, char** out) {
  return guarded([&] {
    need(instance, "instance");
    need(plan, "plan");
    need(out, "out");
    *out = copy_string(rplan::render_timeline(instance->value, plan->value));
  });
}

void rp_bench_options_init(rp_bench_options* options) {
  if (!options) return;
  const rplan::OracleGuard guard;
  options->algorithms = "auto,exact-oracle";
  options->threads = 0;
  options->timing = 1;
  options->json = 0;
  options->max_vertices = guard.max_vertices;
  options->max_assets = guard.max_assets;
  options->max_reload_sum = guard.max_reload_sum;
}

rp_status rp_bench(const char* directory, const rp_bench_options* options, char** table, int* issues) {
  return guarded([&] {
    need(directory, "directory");
    need(table, "table");
    rp_bench_options defaults;
    rp_bench_options_init(&defaults);
    const rp_bench_options& o = options ? *options : defaults;
    rplan::BenchOptions bench_options;
    bench_options.algorithms.clear();
    std::stringstream list(o.algorithms ? o.algorithms : defaults.algorithms);
    for (std::string name; std::getline(list, name, ',');)
      if (!name.empty()) bench_options.algorithms.push_back(name);
    bench_options.threads = o.threads;
    bench_options.oracle.guard.max_vertices = o.max_vertices;
    bench_options.oracle.guard.max_assets = o.max_assets;
    bench_options.oracle.guard.max_reload_sum = o.max_reload_sum;
    const rplan::BenchTable result = rplan::bench(directory, bench_options);
    *table = copy_string(o.json ? rplan::format_bench_json(result, o.timing != 0)
                                : rplan::format_bench_text(result, o.timing != 0));
    if (issues) *issues = result.issues;
  });
}

}  // extern "C"
