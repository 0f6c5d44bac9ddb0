/* C interface to the sandlab engines.
 *
 * Every object is an opaque handle released by its *_free function. Calls
 * return a sandlab_status; on failure sandlab_last_error() describes the
 * problem for the calling thread. Strings returned through char** are owned
 * by the caller and released with sandlab_string_free.
 */
#ifndef SANDLAB_SANDLAB_H
#define SANDLAB_SANDLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(SANDLAB_BUILDING_LIBRARY)
#define SANDLAB_API __attribute__((visibility("default")))
#else
#define SANDLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sandlab_status {
  SANDLAB_OK = 0,
  SANDLAB_ERR_NEGATIVE_VALUE = 1,
  SANDLAB_ERR_PARSE = 2,
  SANDLAB_ERR_MULTIPLE_ORIGINS = 3,
  SANDLAB_ERR_UNREPRESENTABLE = 4,
  SANDLAB_ERR_INAPPLICABLE_MOVE = 5,
  SANDLAB_ERR_NEGATIVITY_WITNESS = 6,
  SANDLAB_ERR_NOT_ORDERED_PARTITION = 7,
  SANDLAB_ERR_BOUND_EXCEEDED = 8,
  SANDLAB_ERR_INVALID_RULE = 9,
  SANDLAB_ERR_INVALID_ARGUMENT = 10,
  SANDLAB_ERR_NULL_ARGUMENT = 11,
  SANDLAB_ERR_INTERNAL = 12
} sandlab_status;

typedef struct sandlab_config sandlab_config;
typedef struct sandlab_rule sandlab_rule;
typedef struct sandlab_trace sandlab_trace;
typedef struct sandlab_digraph sandlab_digraph;
typedef struct sandlab_decomposition sandlab_decomposition;

/* Move-rule bits for sandlab_policy.rules. */
enum {
  SANDLAB_VR_D = 1 << 0,
  SANDLAB_VR_S = 1 << 1,
  SANDLAB_HR_D = 1 << 2,
  SANDLAB_HR_S = 1 << 3,
  SANDLAB_BT_D = 1 << 4,
  SANDLAB_BT_S = 1 << 5,
  SANDLAB_ALL_RULES = 0x3f
};

typedef enum sandlab_hr_convention {
  SANDLAB_HR_NO_HEIGHT_ONE = 0,
  SANDLAB_HR_SUMMARY_STRICT = 1,
  SANDLAB_HR_OFF = 2
} sandlab_hr_convention;

typedef struct sandlab_policy {
  uint8_t rules;
  sandlab_hr_convention hr_convention;
  int64_t bt_height_floor;
  int quotient_translations;
} sandlab_policy;

/* ---- errors and strings ---- */

SANDLAB_API const char* sandlab_version(void);
SANDLAB_API const char* sandlab_status_name(sandlab_status status);
/* Message of the last failed call on this thread; "" if none. */
SANDLAB_API const char* sandlab_last_error(void);
/* Byte offset of the last parse error, -1 otherwise. */
SANDLAB_API int64_t sandlab_last_error_offset(void);
SANDLAB_API void sandlab_string_free(char* s);

/* ---- configurations ---- */

SANDLAB_API sandlab_status sandlab_config_parse(const char* literal, sandlab_config** out);
SANDLAB_API sandlab_status sandlab_config_from_values(const int64_t* values, size_t len,
                                                      int64_t offset, sandlab_config** out);
SANDLAB_API void sandlab_config_free(sandlab_config* c);
SANDLAB_API sandlab_status sandlab_config_literal(const sandlab_config* c, char** out);
SANDLAB_API int64_t sandlab_config_total(const sandlab_config* c);
SANDLAB_API int64_t sandlab_config_offset(const sandlab_config* c);
SANDLAB_API size_t sandlab_config_length(const sandlab_config* c);
/* Copies min(len, cap) stored values into buf. */
SANDLAB_API size_t sandlab_config_values(const sandlab_config* c, int64_t* buf, size_t cap);
SANDLAB_API int sandlab_config_equal(const sandlab_config* a, const sandlab_config* b);
SANDLAB_API int sandlab_config_is_gk_stable(const sandlab_config* c);
SANDLAB_API int sandlab_config_is_fp_stable(const sandlab_config* c);

/* ---- parallel rules ---- */

/* kind: gk, fp, height, sm1, gen1g, gen1g-prime, const-g1. Empty arrays
 * select the kind's defaults. */
SANDLAB_API sandlab_status sandlab_rule_create(const char* kind, const int64_t* neighborhood,
                                               size_t neighborhood_len,
                                               const int64_t* distribution,
                                               size_t distribution_len, sandlab_rule** out);
SANDLAB_API void sandlab_rule_free(sandlab_rule* r);
SANDLAB_API int64_t sandlab_rule_threshold(const sandlab_rule* r);

/* One step on a configuration (not for the height rule). */
SANDLAB_API sandlab_status sandlab_step(const sandlab_rule* r, const sandlab_config* c,
                                        sandlab_config** out);

/* Orbit from a literal; height-rule literals may hold negative entries.
 * max_steps == 0 selects the default cap. */
SANDLAB_API sandlab_status sandlab_orbit_run(const sandlab_rule* r, const char* init_literal,
                                             size_t max_steps, sandlab_trace** out);
SANDLAB_API void sandlab_trace_free(sandlab_trace* t);
SANDLAB_API size_t sandlab_trace_length(const sandlab_trace* t);
SANDLAB_API int sandlab_trace_reached_equilibrium(const sandlab_trace* t);
/* -1 when the step cap was hit. */
SANDLAB_API int64_t sandlab_trace_transient_time(const sandlab_trace* t);
SANDLAB_API int64_t sandlab_trace_total(const sandlab_trace* t, size_t step);
SANDLAB_API sandlab_status sandlab_trace_state_literal(const sandlab_trace* t, size_t step,
                                                       char** out);
SANDLAB_API sandlab_status sandlab_trace_to_json(const sandlab_trace* t, char** out);
SANDLAB_API sandlab_status sandlab_trace_to_table(const sandlab_trace* t, char** out);
SANDLAB_API sandlab_status sandlab_trace_from_json(const char* json, sandlab_trace** out);
SANDLAB_API int sandlab_trace_equal(const sandlab_trace* a, const sandlab_trace* b);

/* ---- sequential rules ---- */

SANDLAB_API sandlab_policy sandlab_policy_default(void);
/* "vr_d,hr_s", "vr", "all", ... */
SANDLAB_API sandlab_status sandlab_rules_parse(const char* text, uint8_t* out);

SANDLAB_API sandlab_status sandlab_digraph_explore(const sandlab_config* root,
                                                   const sandlab_policy* policy,
                                                   size_t node_cap, sandlab_digraph** out);
SANDLAB_API void sandlab_digraph_free(sandlab_digraph* d);
SANDLAB_API size_t sandlab_digraph_node_count(const sandlab_digraph* d);
SANDLAB_API size_t sandlab_digraph_edge_count(const sandlab_digraph* d);
SANDLAB_API size_t sandlab_digraph_equilibrium_count(const sandlab_digraph* d);
SANDLAB_API int sandlab_digraph_truncated(const sandlab_digraph* d);
SANDLAB_API sandlab_status sandlab_digraph_equilibrium_literal(const sandlab_digraph* d,
                                                               size_t i, char** out);
/* Number of root-to-equilibrium paths and their distinct lengths (up to
 * cap lengths copied). Fails on a cyclic digraph. */
SANDLAB_API sandlab_status sandlab_digraph_maximal_paths(const sandlab_digraph* d,
                                                         uint64_t* path_count,
                                                         size_t* lengths, size_t cap,
                                                         size_t* n_lengths);
/* Simple root-to-target paths, one per line as "VRd@0 VRd@1". */
SANDLAB_API sandlab_status sandlab_digraph_paths(const sandlab_digraph* d,
                                                 const sandlab_config* target, size_t max_paths,
                                                 char** out);
SANDLAB_API sandlab_status sandlab_digraph_to_dot(const sandlab_digraph* d, char** out);
SANDLAB_API sandlab_status sandlab_digraph_to_json(const sandlab_digraph* d, char** out);

/* depth_cap == 0 selects 2 N^2. */
SANDLAB_API sandlab_status sandlab_decompose(const sandlab_config* source,
                                             const sandlab_config* target,
                                             const sandlab_policy* policy, size_t depth_cap,
                                             size_t max_paths, sandlab_decomposition** out);
SANDLAB_API void sandlab_decomposition_free(sandlab_decomposition* r);
SANDLAB_API int sandlab_decomposition_reachable(const sandlab_decomposition* r);
SANDLAB_API int sandlab_decomposition_budget_exceeded(const sandlab_decomposition* r);
SANDLAB_API size_t sandlab_decomposition_explored(const sandlab_decomposition* r);
SANDLAB_API size_t sandlab_decomposition_path_count(const sandlab_decomposition* r);
SANDLAB_API sandlab_status sandlab_decomposition_path(const sandlab_decomposition* r, size_t i,
                                                      char** out);

/* Reachability under VR, VR+HR, VR+HR+BT. reachable[i] and
 * budget_exceeded[i] are filled for the three families in that order;
 * report receives a printable table. */
SANDLAB_API sandlab_status sandlab_necessity(const sandlab_config* source,
                                             const sandlab_config* target, size_t depth_cap,
                                             int reachable[3], int budget_exceeded[3],
                                             char** report);

/* ---- verification suites ---- */

/* suite: conservation, nn, shapes, commutation, partitions. n_max < 0 uses
 * the suite default. */
SANDLAB_API sandlab_status sandlab_verify(const char* suite, int64_t n_max, uint64_t seed,
                                          int* passed, char** report);

#ifdef __cplusplus
}
#endif

#endif /* SANDLAB_SANDLAB_H */
