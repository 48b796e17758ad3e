#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "routingplan/routingplan.h"

namespace {

enum Exit { kSuccess = 0, kUsage = 1, kInvalid = 2, kGuard = 3 };

struct Failure {
  int code;
};

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};

using InstancePtr = std::unique_ptr<rp_instance, Deleter<rp_instance, rp_instance_free>>;
using PlanPtr = std::unique_ptr<rp_plan, Deleter<rp_plan, rp_plan_free>>;
using ReportPtr = std::unique_ptr<rp_report, Deleter<rp_report, rp_report_free>>;
using VerdictPtr = std::unique_ptr<rp_verdict, Deleter<rp_verdict, rp_verdict_free>>;
using ClassPtr = std::unique_ptr<rp_class, Deleter<rp_class, rp_class_free>>;
using ReceiptPtr = std::unique_ptr<rp_receipt, Deleter<rp_receipt, rp_receipt_free>>;

int exit_for(rp_status status) {
  switch (status) {
    case RP_GUARD_EXCEEDED:
    case RP_INTRACTABLE_FRAGMENT:
      return kGuard;
    case RP_INVALID_PLAN:
    case RP_OCCUPANCY_CONFLICT:
    case RP_ILLEGAL_EDGE:
    case RP_RETURN_TO_START:
    case RP_NO_MOVEMENT:
    case RP_MOVE_FROM_ABSORBING:
      return kInvalid;
    default:
      return kUsage;
  }
}

void check(rp_status status) {
  if (status == RP_OK) return;
  std::cerr << "error: " << rp_status_name(status) << ": " << rp_last_error() << '\n';
  throw Failure{exit_for(status)};
}

std::string take(char* text) {
  std::string out(text);
  rp_string_free(text);
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "error: cannot write '" << path << "'\n";
    throw Failure{kUsage};
  }
}

InstancePtr load_instance(const std::string& path) {
  rp_instance* raw = nullptr;
  check(rp_instance_load(path.c_str(), &raw));
  return InstancePtr(raw);
}

PlanPtr load_plan(const std::string& path) {
  rp_plan* raw = nullptr;
  check(rp_plan_load(path.c_str(), &raw));
  return PlanPtr(raw);
}

const std::map<std::string, std::string> kAlgoAliases = {
    {"auto", "auto"},           {"path", "path-rws"},     {"star", "star-formula"},
    {"dp", "disjoint-dp"},      {"condensed", "condensed-linear"}, {"exact", "exact-oracle"},
};

std::string algo_name(const std::string& name) {
  auto it = kAlgoAliases.find(name);
  return it == kAlgoAliases.end() ? name : it->second;
}

struct GuardFlags {
  std::size_t max_vertices = 10;
  int max_assets = 8;
  long long max_reload_sum = 12;

  void add(CLI::App* app) {
    app->add_option("--max-vertices", max_vertices, "oracle guard on |V|")->capture_default_str();
    app->add_option("--max-assets", max_assets, "oracle guard on m")->capture_default_str();
    app->add_option("--max-reload-sum", max_reload_sum, "oracle guard on the sum of reloads")
        ->capture_default_str();
  }
  void apply(rp_solve_options& o) const {
    o.max_vertices = max_vertices;
    o.max_assets = max_assets;
    o.max_reload_sum = max_reload_sum;
  }
};

void print_report(const rp_instance* instance, const rp_report* report) {
  const int survivors = rp_report_survivors(report);
  std::cout << "survivors: " << survivors << '\n';
  std::cout << "goal: " << rp_instance_goal(instance) << (survivors >= rp_instance_goal(instance) ? " (met)" : " (missed)")
            << '\n';
  std::cout << "algorithm: " << rp_report_algorithm(report) << '\n';
  if (rp_report_has_stats(report)) {
    std::cout << "states expanded: " << rp_report_states_expanded(report) << '\n';
    std::cout << "states stored: " << rp_report_states_stored(report) << '\n';
  }
  for (std::size_t i = 0; i < rp_report_diagnostic_count(report); ++i)
    std::cout << "note: " << rp_report_diagnostic(report, i) << '\n';
  if (!rp_report_has_witness(report)) std::cout << "witness: none\n";
}

void emit_witness(const rp_instance* instance, const rp_report* report, const std::string& path) {
  if (!rp_report_has_witness(report)) return;
  rp_plan* raw = nullptr;
  check(rp_report_witness(report, &raw));
  PlanPtr plan(raw);
  rp_length_bound bound{};
  check(rp_check_length_bound(instance, plan.get(), &bound));
  std::cout << "witness length: " << bound.length << '\n';
  std::cout << "activation gaps: max " << bound.max_gap << ", bound " << bound.bound << ", flags "
            << bound.flags << '\n';
  if (!path.empty()) {
    char* text = nullptr;
    check(rp_plan_serialize(plan.get(), &text));
    write_file(path, take(text));
  }
}

std::vector<long long> parse_numbers(const std::string& text, char sep) {
  std::vector<long long> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, sep);) {
    if (item.empty()) continue;
    std::size_t used = 0;
    long long value = 0;
    try {
      value = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) {
      std::cerr << "error: '" << item << "' is not an integer\n";
      throw Failure{kUsage};
    }
    out.push_back(value);
  }
  return out;
}

void print_receipt(const rp_receipt* receipt, std::ostream& out, const char* lead) {
  out << lead << "provenance: " << rp_receipt_provenance(receipt) << '\n';
  out << lead << "faithful: " << (rp_receipt_faithful(receipt) ? "yes" : "NON-FAITHFUL") << '\n';
  out << lead << "dry run: " << (rp_receipt_dry_run(receipt) ? "yes" : "no") << '\n';
  for (std::size_t i = 0; i < rp_receipt_item_count(receipt); ++i) {
    long long actual = 0;
    const bool known = rp_receipt_item_actual(receipt, i, &actual);
    const long long expected = rp_receipt_item_expected(receipt, i);
    out << lead << rp_receipt_item_name(receipt, i) << ": expected " << expected << ", actual "
        << (known ? std::to_string(actual) : std::string("?"))
        << (known && actual == expected ? "" : "  MISMATCH") << '\n';
  }
  out << lead << "consistent: " << (rp_receipt_consistent(receipt) ? "yes" : "no") << '\n';
}

void emit_instance(const rp_instance* instance, const std::string& path, const std::string& header) {
  char* text = nullptr;
  check(rp_instance_serialize(instance, &text));
  const std::string body = header + take(text);
  if (path.empty()) {
    std::cout << body;
  } else {
    write_file(path, body);
  }
}

void emit_receipt(rp_receipt* receipt, const std::string& path) {
  if (rp_receipt_dry_run(receipt)) {
    print_receipt(receipt, std::cout, "");
  } else {
    rp_instance* raw = nullptr;
    check(rp_receipt_instance(receipt, &raw));
    InstancePtr instance(raw);
    std::ostringstream header;
    print_receipt(receipt, header, "# ");
    emit_instance(instance.get(), path, header.str());
    if (!path.empty()) print_receipt(receipt, std::cout, "");
  }
  if (!rp_receipt_consistent(receipt)) throw Failure{kInvalid};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Routing plans through graphs with reloading traps"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(rp_version()));

  // solve
  auto* solve = app.add_subcommand("solve", "maximum number of assets that can reach t");
  std::string solve_file, solve_algo = "auto", solve_witness;
  GuardFlags solve_guard;
  solve->add_option("file", solve_file, "instance file")->required();
  solve->add_option("--algo", solve_algo, "auto|path|star|dp|condensed|exact")->capture_default_str();
  solve->add_option("--witness", solve_witness, "write the witness plan here");
  solve_guard.add(solve);

  // validate
  auto* validate = app.add_subcommand("validate", "check a plan against the validity conditions");
  std::string validate_instance, validate_plan;
  validate->add_option("instance", validate_instance)->required();
  validate->add_option("plan", validate_plan)->required();

  // oracle
  auto* oracle = app.add_subcommand("oracle", "exact optimum by exhaustive search (small instances)");
  std::string oracle_file, oracle_witness;
  GuardFlags oracle_guard;
  oracle->add_option("file", oracle_file)->required();
  oracle->add_option("--witness", oracle_witness, "write the witness plan here");
  oracle_guard.add(oracle);

  // classify
  auto* classify = app.add_subcommand("classify", "topology class and the evidence for it");
  std::string classify_file;
  classify->add_option("file", classify_file)->required();

  // generate
  auto* generate = app.add_subcommand(
      "generate",
      "emit instances: batch gadget, RX3C and 3-Partition constructions, random instances.\n"
      "The APX-hardness construction is not generated.");
  generate->require_subcommand(1);
  std::string gen_out;
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("-o,--output", gen_out, "write the instance here instead of stdout");
  };

  auto* gen_batch = generate->add_subcommand("batch", "standalone batch gadget B(x) between s and t");
  long long batch_x = 0;
  int batch_assets = 0;
  gen_batch->add_option("x", batch_x)->required();
  gen_batch->add_option("--assets", batch_assets, "defaults to 2x+2");
  add_output(gen_batch);

  rp_gen_options gen_options;
  rp_gen_options_init(&gen_options);
  bool gen_dry = false, gen_relax = false;
  auto add_gen_flags = [&](CLI::App* sub) {
    sub->add_flag("--dry-run", gen_dry, "report counts without building the graph");
    sub->add_option("--scale", gen_options.scale, "shrink the limiting constant (NON-FAITHFUL)");
    sub->add_option("--vertex-cap", gen_options.vertex_cap)->capture_default_str();
    add_output(sub);
  };

  auto* gen_rx3c = generate->add_subcommand("rx3c", "hardness construction from an RX3C instance");
  std::string rx3c_sets;
  gen_rx3c->add_option("--sets", rx3c_sets, "sets as 1,2,3;1,2,3;1,2,3 over elements 1..3N")->required();
  add_gen_flags(gen_rx3c);

  auto* gen_3part = generate->add_subcommand("3part", "tree construction from a 3-Partition instance");
  std::string part_sizes;
  long long part_bound = 0;
  gen_3part->add_option("--sizes", part_sizes, "element sizes, comma separated")->required();
  gen_3part->add_option("--bound", part_bound, "the target sum T")->required();
  gen_3part->add_flag("--relax-bounds", gen_relax, "accept T/4 <= s <= T/2");
  add_gen_flags(gen_3part);

  auto* gen_random = generate->add_subcommand("random", "seeded random connected instance");
  unsigned long long rnd_seed = 0;
  int rnd_vertices = 6, rnd_reload = 3, rnd_assets = 3;
  double rnd_density = 0.3;
  gen_random->add_option("--seed", rnd_seed)->capture_default_str();
  gen_random->add_option("--vertices", rnd_vertices, "including s and t")->capture_default_str();
  gen_random->add_option("--density", rnd_density, "trap probability per inner vertex")->capture_default_str();
  gen_random->add_option("--reload-max", rnd_reload)->capture_default_str();
  gen_random->add_option("--assets", rnd_assets)->capture_default_str();
  add_output(gen_random);

  // render
  auto* render = app.add_subcommand("render", "DOT graph and ASCII timeline");
  std::string render_instance, render_plan, render_dot;
  bool render_timeline = false;
  render->add_option("instance", render_instance)->required();
  render->add_option("plan", render_plan);
  render->add_option("--dot", render_dot, "write DOT here (default: stdout)");
  render->add_flag("--timeline", render_timeline, "print the per-round timeline (needs a plan)");

  // bench
  auto* bench = app.add_subcommand("bench", "run solvers over a corpus of .inst files");
  std::string bench_dir, bench_algos = "auto,exact";
  bool bench_json = false, bench_no_timing = false;
  unsigned bench_threads = 0;
  GuardFlags bench_guard;
  bench->add_option("dir", bench_dir)->required();
  bench->add_option("--algos", bench_algos, "comma separated algorithm list")->capture_default_str();
  bench->add_flag("--json", bench_json, "machine-readable output");
  bench->add_flag("--no-timing", bench_no_timing, "omit wall-clock times");
  bench->add_option("--threads", bench_threads, "0 = one per core")->capture_default_str();
  bench_guard.add(bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (*solve) {
      InstancePtr instance = load_instance(solve_file);
      rp_solve_options options;
      rp_solve_options_init(&options);
      const std::string algo = algo_name(solve_algo);
      options.algorithm = algo.c_str();
      solve_guard.apply(options);
      rp_report* raw = nullptr;
      check(rp_solve(instance.get(), &options, &raw));
      ReportPtr report(raw);
      print_report(instance.get(), report.get());
      emit_witness(instance.get(), report.get(), solve_witness);
      return kSuccess;
    }

    if (*validate) {
      InstancePtr instance = load_instance(validate_instance);
      PlanPtr plan = load_plan(validate_plan);
      rp_verdict* raw = nullptr;
      check(rp_validate(instance.get(), plan.get(), &raw));
      VerdictPtr verdict(raw);
      if (rp_verdict_is_valid(verdict.get())) {
        std::cout << "valid: yes\n";
        std::cout << "survivors: " << rp_verdict_survivors(verdict.get()) << '\n';
        std::cout << "length: " << rp_plan_length(plan.get()) << '\n';
        return kSuccess;
      }
      std::cout << "valid: no\n";
      for (std::size_t i = 0; i < rp_verdict_violation_count(verdict.get()); ++i) {
        std::cout << "condition " << rp_verdict_violation_condition(verdict.get(), i);
        if (rp_verdict_violation_asset(verdict.get(), i) >= 0)
          std::cout << ", asset " << rp_verdict_violation_asset(verdict.get(), i);
        if (rp_verdict_violation_round(verdict.get(), i) >= 0)
          std::cout << ", round " << rp_verdict_violation_round(verdict.get(), i);
        std::cout << ": " << rp_verdict_violation_message(verdict.get(), i) << '\n';
      }
      return kInvalid;
    }

    if (*oracle) {
      InstancePtr instance = load_instance(oracle_file);
      rp_solve_options options;
      rp_solve_options_init(&options);
      oracle_guard.apply(options);
      rp_report* raw = nullptr;
      check(rp_oracle(instance.get(), &options, &raw));
      ReportPtr report(raw);
      print_report(instance.get(), report.get());
      emit_witness(instance.get(), report.get(), oracle_witness);
      return kSuccess;
    }

    if (*classify) {
      InstancePtr instance = load_instance(classify_file);
      rp_class* raw = nullptr;
      check(rp_classify(instance.get(), &raw));
      ClassPtr cls(raw);
      std::cout << "class: " << rp_class_tag(cls.get()) << '\n';
      for (std::size_t i = 0; i < rp_class_evidence_count(cls.get()); ++i)
        std::cout << "evidence: " << rp_class_evidence(cls.get(), i) << '\n';
      for (std::size_t i = 0; i < rp_class_route_count(cls.get()); ++i)
        std::cout << "route " << i << ": " << rp_class_route(cls.get(), i) << '\n';
      return kSuccess;
    }

    if (*generate) {
      gen_options.dry_run = gen_dry;
      gen_options.relax_bounds = gen_relax;
      if (*gen_batch) {
        rp_instance* raw = nullptr;
        check(rp_gen_batch(batch_x, batch_assets, &raw));
        InstancePtr instance(raw);
        emit_instance(instance.get(), gen_out, "# batch gadget B(" + std::to_string(batch_x) + ")\n");
        return kSuccess;
      }
      if (*gen_random) {
        rp_instance* raw = nullptr;
        check(rp_gen_random(rnd_seed, rnd_vertices, rnd_density, rnd_reload, rnd_assets, &raw));
        InstancePtr instance(raw);
        emit_instance(instance.get(), gen_out, "# random instance, seed " + std::to_string(rnd_seed) + "\n");
        return kSuccess;
      }
      rp_receipt* raw = nullptr;
      if (*gen_rx3c) {
        std::vector<int> members;
        std::size_t sets = 0;
        std::stringstream in(rx3c_sets);
        for (std::string set; std::getline(in, set, ';');) {
          if (set.empty()) continue;
          const auto values = parse_numbers(set, ',');
          if (values.size() != 3) {
            std::cerr << "error: set '" << set << "' does not have three elements\n";
            return kUsage;
          }
          for (long long v : values) members.push_back(static_cast<int>(v));
          ++sets;
        }
        check(rp_gen_rx3c(static_cast<int>(sets), members.data(), sets, &gen_options, &raw));
      } else {
        const auto sizes = parse_numbers(part_sizes, ',');
        check(rp_gen_3partition(sizes.data(), sizes.size(), part_bound, &gen_options, &raw));
      }
      ReceiptPtr receipt(raw);
      emit_receipt(receipt.get(), gen_out);
      return kSuccess;
    }

    if (*render) {
      InstancePtr instance = load_instance(render_instance);
      PlanPtr plan;
      if (!render_plan.empty()) plan = load_plan(render_plan);
      char* dot = nullptr;
      check(rp_render_dot(instance.get(), plan.get(), &dot));
      const std::string dot_text = take(dot);
      if (!render_dot.empty()) {
        write_file(render_dot, dot_text);
      } else if (!render_timeline) {
        std::cout << dot_text;
      }
      if (render_timeline) {
        if (!plan) {
          std::cerr << "error: --timeline needs a plan\n";
          return kUsage;
        }
        char* timeline = nullptr;
        const rp_status status = rp_render_timeline(instance.get(), plan.get(), &timeline);
        if (status == RP_INVALID_PARAMETER) {
          std::cerr << "note: " << rp_last_error() << "; only DOT is emitted\n";
          if (render_dot.empty()) std::cout << dot_text;
        } else {
          check(status);
          std::cout << take(timeline);
        }
      }
      return kSuccess;
    }

    if (*bench) {
      std::string algos;
      std::stringstream in(bench_algos);
      for (std::string name; std::getline(in, name, ',');) {
        if (name.empty()) continue;
        algos += (algos.empty() ? "" : ",") + algo_name(name);
      }
      rp_bench_options options;
      rp_bench_options_init(&options);
      options.algorithms = algos.c_str();
      options.threads = bench_threads;
      options.timing = bench_no_timing ? 0 : 1;
      options.json = bench_json ? 1 : 0;
      options.max_vertices = bench_guard.max_vertices;
      options.max_assets = bench_guard.max_assets;
      options.max_reload_sum = bench_guard.max_reload_sum;
      char* table = nullptr;
      int issues = 0;
      check(rp_bench(bench_dir.c_str(), &options, &table, &issues));
      std::cout << take(table);
      return issues ? kInvalid : kSuccess;
    }
  } catch (const Failure& f) {
    return f.code;
  }
  return kUsage;
}
