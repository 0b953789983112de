/*
 * C interface to libradlehmer.
 *
 * Every fallible call returns an rl_status. On failure a human-readable
 * message for the calling thread is available from rl_last_error() until the
 * next failing call on that thread. Handles (rl_spf_table, rl_report,
 * rl_pair_list) are opaque, immutable after creation, and owned by the caller,
 * who releases them with the matching *_destroy function.
 *
 * Boolean results are reported as int (0 or 1).
 */
#ifndef RADLEHMER_H
#define RADLEHMER_H

#include <stddef.h>
#include <stdint.h>

#if defined(RADLEHMER_BUILDING_LIBRARY)
#define RL_API __attribute__((visibility("default")))
#else
#define RL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rl_status {
    RL_OK = 0,
    RL_INVALID_ARGUMENT = 1,
    RL_BUDGET_EXCEEDED = 2,
    RL_OVERFLOW = 3,
    RL_DOMAIN_ERROR = 4,
    RL_INTERNAL_ERROR = 5
} rl_status;

RL_API const char* rl_last_error(void);
RL_API const char* rl_status_string(rl_status status);

/* Bytes; honours RADLEHMER_MEMORY_BUDGET. Functions taking a memory_budget
 * argument treat 0 as this default. */
RL_API uint64_t rl_default_memory_budget(void);

/* ---- arithmetic ------------------------------------------------------ */

typedef struct rl_spf_table rl_spf_table;

RL_API rl_status rl_spf_table_create(uint64_t limit, uint64_t memory_budget, rl_spf_table** out);
RL_API void rl_spf_table_destroy(rl_spf_table* table);
RL_API uint64_t rl_spf_table_limit(const rl_spf_table* table);
RL_API rl_status rl_spf_table_spf(const rl_spf_table* table, uint64_t n, uint64_t* out);

typedef struct rl_prime_power {
    uint64_t prime;
    uint32_t exponent;
} rl_prime_power;

/* No integer below 2^64 has more than 15 distinct prime factors. */
#define RL_MAX_FACTORS 15

RL_API rl_status rl_is_prime(uint64_t n, int* out);
/* `table` may be NULL. Fails with RL_INVALID_ARGUMENT for n = 0 or when
 * capacity is too small. */
RL_API rl_status rl_factorize(uint64_t n, const rl_spf_table* table, rl_prime_power* factors, size_t capacity,
                              size_t* count);
RL_API rl_status rl_rad(uint64_t n, uint64_t* out);
RL_API rl_status rl_euler_phi(uint64_t n, uint64_t* out);
RL_API rl_status rl_carmichael_lambda(uint64_t n, uint64_t* out);
RL_API rl_status rl_kappa(uint64_t n, uint64_t* out);
/* exp(log x * logloglog x / loglog x); RL_DOMAIN_ERROR for x < 20. */
RL_API rl_status rl_bound_L(double x, double* out);

/* ---- classification -------------------------------------------------- */

typedef struct rl_classification {
    uint64_t n;
    int is_prime;
    int is_composite;
    uint32_t omega;
    int squarefree;
    uint64_t phi;
    uint64_t lambda;
    uint64_t kappa;
    int satisfies_kappa_condition;
    int in_K;
    int is_carmichael;
    int is_lehmer;
    /* Minimal k with phi(n) | (n-1)^k, or 0 when no such k exists. */
    uint32_t lehmer_order;
} rl_classification;

RL_API rl_status rl_classify(uint64_t n, const rl_spf_table* table, rl_classification* out);
RL_API rl_status rl_is_k_member(uint64_t n, const rl_spf_table* table, int* out);
RL_API rl_status rl_is_carmichael_korselt(uint64_t n, const rl_spf_table* table, int* out);
RL_API rl_status rl_is_carmichael_lambda(uint64_t n, const rl_spf_table* table, int* out);
RL_API rl_status rl_is_lehmer(uint64_t n, const rl_spf_table* table, int* out);
/* *out = 0 when no order exists. */
RL_API rl_status rl_lehmer_order(uint64_t n, const rl_spf_table* table, uint32_t* out);
RL_API rl_status rl_k2_pair_check(uint64_t p, uint64_t q, int* out);
RL_API rl_status rl_is_squarefull(uint64_t n, const rl_spf_table* table, int* out);
RL_API rl_status rl_squarefull_from_seed(uint64_t d, uint64_t* out);

/* ---- counting ---------------------------------------------------------- */

typedef enum rl_class_kind {
    RL_CLASS_K = 0,
    RL_CLASS_CARMICHAEL = 1,
    RL_CLASS_LEHMER = 2,
    RL_CLASS_K_LEHMER = 3, /* param = k >= 1 */
    RL_CLASS_K_D = 4,      /* param = d >= 2 */
    RL_CLASS_SQUAREFULL = 5,
    RL_CLASS_PRIMES = 6
} rl_class_kind;

typedef struct rl_class {
    rl_class_kind kind;
    uint32_t param;
} rl_class;

/* Accepts K, carmichael, lehmer, klehmer:<k>, kd:<d>, squarefull, primes. */
RL_API rl_status rl_class_parse(const char* text, rl_class* out);
/* Writes the canonical name, NUL-terminated; RL_INVALID_ARGUMENT if it does
 * not fit. */
RL_API rl_status rl_class_name(rl_class cls, char* buffer, size_t capacity);

/* Integers lo <= n < hi, processed in segments of segment_size
 * (0 selects the default of 10^6). */
typedef struct rl_plan {
    uint64_t lo;
    uint64_t hi;
    uint64_t segment_size;
} rl_plan;

typedef void (*rl_progress_fn)(size_t segments_done, size_t segments_total, void* user);

typedef struct rl_run_options {
    uint32_t workers;       /* 0 or 1: single-threaded */
    uint64_t memory_budget; /* 0: default */
    rl_progress_fn progress; /* may be NULL; called on the calling thread */
    void* progress_user;
} rl_run_options;

/* Holds one counting series per class over shared thresholds. */
typedef struct rl_report rl_report;

/* Thresholds ascending within [plan.lo, plan.hi). options may be NULL. */
RL_API rl_status rl_count(const rl_plan* plan, const rl_class* classes, size_t n_classes, const uint64_t* thresholds,
                          size_t n_thresholds, const rl_run_options* options, rl_report** out);
/* k-Lehmer counts together with L_k(x) + pi(x) + 1 totals. plan.lo must be 2. */
RL_API rl_status rl_count_k_lehmer_totals(const rl_plan* plan, uint32_t k, const uint64_t* thresholds,
                                          size_t n_thresholds, const rl_run_options* options, rl_report** out);
/* Squarefull counts with count / sqrt(x) ratios and the zeta(3/2)/zeta(3)
 * constant. */
RL_API rl_status rl_count_squarefull(const uint64_t* thresholds, size_t n_thresholds, uint64_t memory_budget,
                                     rl_report** out);
/* Two-prime K-members up to x via rad(p-1) buckets; the report carries the
 * non-normative growth bound. */
RL_API rl_status rl_k2_pair_scan(uint64_t x, uint64_t memory_budget, rl_report** out);

RL_API void rl_report_destroy(rl_report* report);
RL_API size_t rl_report_class_count(const rl_report* report);
RL_API rl_class rl_report_class(const rl_report* report, size_t class_index);
RL_API size_t rl_report_threshold_count(const rl_report* report);
/* Out-of-range indices return 0. */
RL_API uint64_t rl_report_threshold(const rl_report* report, size_t index);
RL_API uint64_t rl_report_count(const rl_report* report, size_t class_index, size_t index);
/* Returns 1 and writes *out when the series carries totals, else 0. */
RL_API int rl_report_total(const rl_report* report, size_t class_index, size_t index, uint64_t* out);
/* Returns 1 and writes *out for squarefull reports, else 0. */
RL_API int rl_report_ratio(const rl_report* report, size_t index, double* out);
RL_API int rl_report_constant(const rl_report* report, double* out);
/* Returns 1 and writes *out for pair-scan reports, else 0. */
RL_API int rl_report_bound(const rl_report* report, double* out);
RL_API double rl_report_elapsed_seconds(const rl_report* report);

/* Return nonzero to continue, zero to stop early. */
typedef int (*rl_member_fn)(const rl_classification* member, void* user);

/* Members of `cls` in [plan.lo, plan.hi), ascending. */
RL_API rl_status rl_list_members(const rl_plan* plan, rl_class cls, const rl_run_options* options, rl_member_fn emit,
                                 void* user);

/* ---- constructions and diagnostics ------------------------------------- */

typedef struct rl_prime_pair {
    uint64_t m;
    uint64_t p; /* m + 1 */
    uint64_t q; /* 2m + 1 */
    uint64_t product;
    int member;
} rl_prime_pair;

typedef struct rl_pair_list rl_pair_list;

RL_API rl_status rl_prime_pair_construction(uint64_t limit_m, rl_pair_list** out);
RL_API void rl_pair_list_destroy(rl_pair_list* list);
RL_API size_t rl_pair_list_size(const rl_pair_list* list);
RL_API size_t rl_pair_list_verified(const rl_pair_list* list);
/* Out-of-range index yields a zeroed pair. */
RL_API rl_prime_pair rl_pair_list_get(const rl_pair_list* list, size_t index);

typedef struct rl_bound_row {
    uint64_t x;
    uint64_t K;
    uint64_t C;
    uint64_t K2;
    uint64_t L2;
    double K_over_C; /* +inf when C = 0 */
    int64_t K_minus_C;
    double x_over_L;
    double kd2_bound;
    double kd3_bound;
    double k2_bound;
    double lk2_bound;
    double lk3_bound;
} rl_bound_row;

/* Rows for the distinct x values in ascending order; `rows` needs room for
 * n_xs entries. */
RL_API rl_status rl_bound_report(const uint64_t* xs, size_t n_xs, uint64_t segment_size,
                                 const rl_run_options* options, rl_bound_row* rows, size_t* n_rows);

RL_API double rl_squarefull_constant(void);

#ifdef __cplusplus
}
#endif

#endif /* RADLEHMER_H */
