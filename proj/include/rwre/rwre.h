#ifndef RWRE_RWRE_H
#define RWRE_RWRE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RWRE_API __declspec(dllexport)
#else
#define RWRE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every function returning rwre_status leaves a message for
 * rwre_last_error() on failure (per thread). Output arguments are written
 * only on success. Strings returned through char** are owned by the caller
 * and released with rwre_string_free. */
typedef enum rwre_status {
  RWRE_OK = 0,
  RWRE_INVALID_ARGUMENT = 1,
  RWRE_SITE_BUDGET_EXCEEDED = 2,
  RWRE_ATTEMPTS_EXHAUSTED = 3,
  RWRE_IO_ERROR = 4,
  RWRE_INTERNAL_ERROR = 5
} rwre_status;

RWRE_API const char* rwre_last_error(void);
RWRE_API const char* rwre_status_name(rwre_status status);
RWRE_API const char* rwre_version(void);
RWRE_API void rwre_string_free(char* s);

RWRE_API uint64_t rwre_derive_seed(uint64_t base, uint64_t stream, uint64_t index);

/* ---- environments ---- */

typedef struct rwre_env rwre_env;

RWRE_API rwre_status rwre_env_two_point(double w, double M, uint64_t seed, rwre_env** out);
RWRE_API rwre_status rwre_env_symmetric_uniform(double delta, uint64_t seed, rwre_env** out);
/* {"family": "two_point", "params": {"w": .., "M": ..}, "seed": ..} */
RWRE_API rwre_status rwre_env_from_json(const char* json, rwre_env** out);
RWRE_API rwre_status rwre_env_to_json(const rwre_env* env, char** out);
RWRE_API void rwre_env_free(rwre_env* env);

RWRE_API rwre_status rwre_env_omega(const rwre_env* env, int64_t x, double* out);
/* Writes V(lo..hi) into out[0 .. hi-lo]; requires lo <= 0 <= hi. */
RWRE_API rwre_status rwre_env_potential(const rwre_env* env, int64_t lo, int64_t hi, double* out);
RWRE_API rwre_status rwre_mixing_probability(double w, double M, double* out);

/* ---- walks ---- */

typedef enum rwre_chain { RWRE_HALF_LINE = 0, RWRE_FULL_LINE = 1, RWRE_REFLECTED_BOX = 2 } rwre_chain;

typedef struct rwre_walk_config {
  int chain; /* rwre_chain */
  int64_t box;
  int64_t start;
  uint64_t steps;
  uint64_t seed;
} rwre_walk_config;

typedef struct rwre_field rwre_field;

typedef struct rwre_field_summary {
  uint64_t steps;
  int64_t position;
  int64_t lo;
  int64_t hi;
  uint64_t total;
  uint64_t max_count;
  uint64_t sum_of_squares;
} rwre_field_summary;

RWRE_API rwre_status rwre_walk_run(const rwre_env* env, const rwre_walk_config* cfg, rwre_field** out);
RWRE_API void rwre_field_free(rwre_field* field);
RWRE_API rwre_status rwre_field_summarize(const rwre_field* field, rwre_field_summary* out);
RWRE_API rwre_status rwre_field_count(const rwre_field* field, int64_t x, uint64_t* out);
/* "x,count" rows for positive counts, preceded by a schema comment and header. */
RWRE_API rwre_status rwre_field_csv(const rwre_field* field, char** out);

/* *hit = 0 when the cap is reached first. */
RWRE_API rwre_status rwre_hitting_time(const rwre_env* env, const rwre_walk_config* cfg, int64_t target,
                                       uint64_t cap, int* hit, uint64_t* time);
/* out[k] = P[xi(n, x) = k], k = 0..n+1 (n + 2 entries); n <= 24. */
RWRE_API rwre_status rwre_exact_localtime(const rwre_env* env, const rwre_walk_config* cfg, int64_t x, uint64_t n,
                                          double* out);

/* ---- valleys ---- */

typedef struct rwre_half_line_valley {
  double n;
  double threshold;
  int64_t b;
  int64_t c;
} rwre_half_line_valley;

typedef struct rwre_valley {
  double n;
  double threshold;
  int64_t a;
  int64_t b;
  int64_t c;
  double depth;
  uint64_t candidates;
} rwre_valley;

/* budget = 0 selects the default of 1e7 sites. */
RWRE_API rwre_status rwre_find_cn_bn(const rwre_env* env, double n, uint64_t budget, rwre_half_line_valley* out);
RWRE_API rwre_status rwre_find_minimal_valley(const rwre_env* env, double n, uint64_t budget, rwre_valley* out);

/* ---- closed forms ---- */

RWRE_API rwre_status rwre_limsup_constant(double M, double w, double* out);
RWRE_API rwre_status rwre_nu_bar(double M, double w, int site, double* out);
RWRE_API rwre_status rwre_nu_bar_K(double M, double w, int64_t K, double* out);
RWRE_API rwre_status rwre_hitting_prob(const rwre_env* env, int64_t b, int64_t y, int64_t i, double* out);
RWRE_API rwre_status rwre_gamma_n(const rwre_env* env, int64_t b, int64_t c, double* out);

/* ---- experiments ---- */

typedef struct rwre_functional_sample {
  uint64_t n;
  double sup;
  double sumsq;
  double l1;
  int64_t b;
  int64_t c;
} rwre_functional_sample;

RWRE_API rwre_status rwre_profile_check(const rwre_env* env, uint64_t n, uint64_t walk_seed, uint64_t budget,
                                        rwre_functional_sample* out);

/* Plan: environment family fields plus "horizon", "checkpoints",
 * "replicas", "seed", optional "threads". Report is JSON. */
RWRE_API rwre_status rwre_limsup(const char* plan_json, char** report_json);

/* Plan: environment family fields plus "n_grid", "replicas", "seed",
 * optional "radius", "max_attempts", "site_budget", "threads",
 * "output_prefix". Report is JSON. */
RWRE_API rwre_status rwre_converge(const char* plan_json, char** report_json);

/* Report is JSON; "passed" is true when no violation occurs at x = 0. */
RWRE_API rwre_status rwre_dominance(double w, double M, uint64_t max_n, uint64_t instances, uint64_t seed,
                                    int64_t radius, char** report_json);

#ifdef __cplusplus
}
#endif

#endif
