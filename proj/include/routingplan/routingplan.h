#ifndef ROUTINGPLAN_H
#define ROUTINGPLAN_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define RP_API __declspec(dllexport)
#else
#define RP_API __attribute__((visibility("default")))
#endif

/* Values match the library's internal error codes. */
typedef enum rp_status {
  RP_OK = 0,
  RP_SYNTAX_ERROR = 1,
  RP_TRAP_ON_TERMINAL = 2,
  RP_ZERO_RELOAD = 3,
  RP_GOAL_EXCEEDS_ASSETS = 4,
  RP_DANGLING_EDGE = 5,
  RP_START_EQUALS_TARGET = 6,
  RP_SELF_LOOP = 7,
  RP_DUPLICATE_EDGE = 8,
  RP_MISSING_FIELD = 9,
  RP_NO_ASSETS = 10,
  RP_RESERVED_NAME = 11,
  RP_INVALID_PLAN = 20,
  RP_OCCUPANCY_CONFLICT = 21,
  RP_ILLEGAL_EDGE = 22,
  RP_RETURN_TO_START = 23,
  RP_NO_MOVEMENT = 24,
  RP_MOVE_FROM_ABSORBING = 25,
  RP_NOT_A_PATH = 30,
  RP_NOT_A_STAR = 31,
  RP_NOT_DISJOINT_PATHS = 32,
  RP_NOT_CONDENSED_LINEAR = 33,
  RP_INTRACTABLE_FRAGMENT = 34,
  RP_GUARD_EXCEEDED = 35,
  RP_INVALID_PARAMETER = 40,
  RP_NOT_RX3C = 41,
  RP_NOT_3PARTITION = 42,
  RP_MATERIALIZATION_TOO_LARGE = 43,
  RP_IO_ERROR = 50,
  RP_INTERNAL = 99
} rp_status;

typedef struct rp_instance rp_instance;
typedef struct rp_plan rp_plan;
typedef struct rp_verdict rp_verdict;
typedef struct rp_report rp_report;
typedef struct rp_class rp_class;
typedef struct rp_receipt rp_receipt;

RP_API const char* rp_version(void);
RP_API const char* rp_status_name(rp_status status);
/* Message of the last failing call on this thread; "" if none. */
RP_API const char* rp_last_error(void);
/* Every char* handed out through an out parameter is released here. */
RP_API void rp_string_free(char* text);

/* Instances */
RP_API rp_status rp_instance_parse(const char* text, rp_instance** out);
RP_API rp_status rp_instance_load(const char* path, rp_instance** out);
RP_API rp_status rp_instance_serialize(const rp_instance* instance, char** out);
RP_API void rp_instance_free(rp_instance* instance);
RP_API size_t rp_instance_vertex_count(const rp_instance* instance);
RP_API size_t rp_instance_edge_count(const rp_instance* instance);
RP_API size_t rp_instance_trap_count(const rp_instance* instance);
RP_API int rp_instance_assets(const rp_instance* instance);
RP_API int rp_instance_goal(const rp_instance* instance);

/* Plans */
RP_API rp_status rp_plan_parse(const char* text, rp_plan** out);
RP_API rp_status rp_plan_load(const char* path, rp_plan** out);
RP_API rp_status rp_plan_serialize(const rp_plan* plan, char** out);
RP_API void rp_plan_free(rp_plan* plan);
RP_API size_t rp_plan_asset_count(const rp_plan* plan);
RP_API size_t rp_plan_length(const rp_plan* plan);

/* Validation. RP_INVALID_PLAN only when the plan does not fit the instance
   at all; violations of the validity conditions are reported in the
   verdict. */
RP_API rp_status rp_validate(const rp_instance* instance, const rp_plan* plan, rp_verdict** out);
RP_API int rp_verdict_is_valid(const rp_verdict* verdict);
RP_API int rp_verdict_survivors(const rp_verdict* verdict);
RP_API size_t rp_verdict_violation_count(const rp_verdict* verdict);
RP_API int rp_verdict_violation_condition(const rp_verdict* verdict, size_t index);
RP_API int rp_verdict_violation_asset(const rp_verdict* verdict, size_t index);
RP_API int rp_verdict_violation_round(const rp_verdict* verdict, size_t index);
RP_API const char* rp_verdict_violation_message(const rp_verdict* verdict, size_t index);
RP_API void rp_verdict_free(rp_verdict* verdict);

/* Solving */
typedef struct rp_solve_options {
  const char* algorithm; /* NULL or "auto", or an algorithm name such as "path-rws" */
  size_t max_vertices;   /* oracle guard */
  int max_assets;
  long long max_reload_sum;
} rp_solve_options;

RP_API void rp_solve_options_init(rp_solve_options* options);
RP_API rp_status rp_solve(const rp_instance* instance, const rp_solve_options* options, rp_report** out);
/* Exact search only; RP_GUARD_EXCEEDED outside the guard. */
RP_API rp_status rp_oracle(const rp_instance* instance, const rp_solve_options* options, rp_report** out);
RP_API int rp_report_survivors(const rp_report* report);
RP_API const char* rp_report_algorithm(const rp_report* report);
RP_API size_t rp_report_diagnostic_count(const rp_report* report);
RP_API const char* rp_report_diagnostic(const rp_report* report, size_t index);
RP_API int rp_report_has_witness(const rp_report* report);
/* Copy of the witness; RP_INVALID_PARAMETER when there is none. */
RP_API rp_status rp_report_witness(const rp_report* report, rp_plan** out);
RP_API int rp_report_has_stats(const rp_report* report);
RP_API uint64_t rp_report_states_expanded(const rp_report* report);
RP_API uint64_t rp_report_states_stored(const rp_report* report);
RP_API void rp_report_free(rp_report* report);

typedef struct rp_length_bound {
  long long bound;  /* (2m + n)^2 */
  long long length;
  long long max_gap; /* largest gap between consecutive trap activations, 0 if fewer than two */
  size_t activations;
  size_t flags;      /* gaps at or above the bound */
} rp_length_bound;

RP_API rp_status rp_check_length_bound(const rp_instance* instance, const rp_plan* plan, rp_length_bound* out);

/* Classification */
RP_API rp_status rp_classify(const rp_instance* instance, rp_class** out);
RP_API const char* rp_class_tag(const rp_class* cls);
RP_API size_t rp_class_route_count(const rp_class* cls);
/* Space separated vertex ids of one route. */
RP_API const char* rp_class_route(const rp_class* cls, size_t index);
RP_API size_t rp_class_evidence_count(const rp_class* cls);
RP_API const char* rp_class_evidence(const rp_class* cls, size_t index);
RP_API void rp_class_free(rp_class* cls);

/* Generators */
typedef struct rp_gen_options {
  int dry_run;
  double scale;        /* 1 = faithful */
  long long vertex_cap;
  int relax_bounds;    /* T/4 <= s <= T/2 instead of strict bounds */
} rp_gen_options;

RP_API void rp_gen_options_init(rp_gen_options* options);
/* assets <= 0 selects 2x + 2. */
RP_API rp_status rp_gen_batch(long long x, int assets, rp_instance** out);
/* members: 3 * set_count element numbers in 1..universe_size. */
RP_API rp_status rp_gen_rx3c(int universe_size, const int* members, size_t set_count,
                             const rp_gen_options* options, rp_receipt** out);
RP_API rp_status rp_gen_3partition(const long long* sizes, size_t count, long long bound,
                                   const rp_gen_options* options, rp_receipt** out);
RP_API rp_status rp_gen_random(uint64_t seed, int vertices, double trap_density, int reload_max,
                               int assets, rp_instance** out);

RP_API int rp_receipt_consistent(const rp_receipt* receipt);
RP_API int rp_receipt_faithful(const rp_receipt* receipt);
RP_API int rp_receipt_dry_run(const rp_receipt* receipt);
RP_API const char* rp_receipt_provenance(const rp_receipt* receipt);
RP_API size_t rp_receipt_item_count(const rp_receipt* receipt);
RP_API const char* rp_receipt_item_name(const rp_receipt* receipt, size_t index);
RP_API long long rp_receipt_item_expected(const rp_receipt* receipt, size_t index);
/* Returns 1 and stores the recomputed value, or 0 when it is unknown. */
RP_API int rp_receipt_item_actual(const rp_receipt* receipt, size_t index, long long* out);
/* Copy of the emitted instance; RP_INVALID_PARAMETER after a dry run. */
RP_API rp_status rp_receipt_instance(const rp_receipt* receipt, rp_instance** out);
RP_API void rp_receipt_free(rp_receipt* receipt);

/* Rendering; plan may be NULL for DOT. */
RP_API rp_status rp_render_dot(const rp_instance* instance, const rp_plan* plan, char** out);
RP_API rp_status rp_render_timeline(const rp_instance* instance, const rp_plan* plan, char** out);

/* Benchmark over the .inst files of a directory. */
typedef struct rp_bench_options {
  const char* algorithms; /* comma separated, default "auto,exact-oracle" */
  unsigned threads;       /* 0 = hardware concurrency */
  int timing;             /* include wall-clock column */
  int json;               /* JSON instead of aligned text */
  size_t max_vertices;
  int max_assets;
  long long max_reload_sum;
} rp_bench_options;

RP_API void rp_bench_options_init(rp_bench_options* options);
RP_API rp_status rp_bench(const char* directory, const rp_bench_options* options, char** table,
                          int* issues);

#ifdef __cplusplus
}
#endif

#endif
