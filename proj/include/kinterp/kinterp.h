/* C interface to the kinterp library.
 *
 * Every function returns a kinterp_status. On failure the message is kept
 * per thread and can be read with kinterp_last_error() until the next call.
 * Handles are opaque and owned by the caller; free them with the matching
 * *_free function. Strings returned through char** are freed with
 * kinterp_string_free. */
#ifndef KINTERP_KINTERP_H
#define KINTERP_KINTERP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define KINTERP_API __declspec(dllexport)
#else
#define KINTERP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kinterp_status {
  KINTERP_OK = 0,
  KINTERP_E_ARGUMENT = 1,
  KINTERP_E_DOMAIN = 2,
  KINTERP_E_USAGE = 3,
  KINTERP_E_IO = 4,
  KINTERP_E_INTERNAL = 5
} kinterp_status;

typedef enum kinterp_result { KINTERP_PASS = 0, KINTERP_FAIL = 1, KINTERP_SKIP = 2 } kinterp_result;

typedef struct kinterp_config kinterp_config;
typedef struct kinterp_report kinterp_report;
typedef struct kinterp_profile kinterp_profile;
typedef struct kinterp_function kinterp_function;
typedef struct kinterp_operator kinterp_operator;

KINTERP_API const char* kinterp_last_error(void);
KINTERP_API const char* kinterp_version(void);
KINTERP_API void kinterp_string_free(char* s);

/* ---- run configuration ---- */
KINTERP_API kinterp_status kinterp_config_new(kinterp_config** out);
KINTERP_API void kinterp_config_free(kinterp_config* cfg);
KINTERP_API kinterp_status kinterp_config_set_seed(kinterp_config* cfg, uint64_t seed);
KINTERP_API kinterp_status kinterp_config_set_grid(kinterp_config* cfg, double t_min, int points_per_octave);
KINTERP_API kinterp_status kinterp_config_set_workers(kinterp_config* cfg, size_t workers);
KINTERP_API kinterp_status kinterp_config_set_timestamp(kinterp_config* cfg, int enabled);
/* Lattice spec "t^-a*(1-ln t)^-b; q=Q; domain=(0,1]" for the baseq suite. */
KINTERP_API kinterp_status kinterp_config_add_lattice(kinterp_config* cfg, const char* spec);
/* path NULL keeps the built-in baseline file; enabled 0 skips the comparison. */
KINTERP_API kinterp_status kinterp_config_set_baselines(kinterp_config* cfg, const char* path, int enabled);

/* ---- suites and reports ---- */
KINTERP_API size_t kinterp_suite_count(void);
KINTERP_API const char* kinterp_suite_name(size_t i);
KINTERP_API kinterp_status kinterp_run_suite(const char* name, const kinterp_config* cfg, kinterp_report** out);
KINTERP_API void kinterp_report_free(kinterp_report* r);
KINTERP_API kinterp_status kinterp_report_result(const kinterp_report* r, kinterp_result* out);
KINTERP_API kinterp_status kinterp_report_runtime(const kinterp_report* r, double* seconds);
KINTERP_API size_t kinterp_report_assertion_count(const kinterp_report* r);
/* Borrowed name pointer, valid while the report lives. */
KINTERP_API kinterp_status kinterp_report_assertion(const kinterp_report* r, size_t i, const char** name, double* value,
                                                    double* bound, int* pass);
/* format: "json", "csv" or "text". One json object for n == 1, an array otherwise. */
KINTERP_API kinterp_status kinterp_report_emit(const kinterp_report* const* reports, size_t n, const char* format,
                                               char** out);
KINTERP_API kinterp_status kinterp_report_parse_json(const char* text, kinterp_report** out);
KINTERP_API kinterp_status kinterp_baseline_json(const kinterp_report* const* reports, size_t n, char** out);
/* 0 when no report failed, 1 otherwise. */
KINTERP_API int kinterp_exit_code(const kinterp_report* const* reports, size_t n);

/* ---- corpus ---- */
/* families: comma separated subset of power,log-power,step,random-concave,sequence,operator;
 * NULL or "" means all. Writes one CSV per family into dir. */
KINTERP_API kinterp_status kinterp_corpus_gen(uint64_t seed, const char* families, size_t count, double t_min,
                                              int points_per_octave, const char* dir);

/* ---- K-functional profiles ---- */
/* Piecewise-linear profile through (t[i], k[i]), t increasing. Must be
 * nondecreasing and concave. */
KINTERP_API kinterp_status kinterp_profile_new(const double* t, const double* k, size_t n, kinterp_profile** out);
KINTERP_API void kinterp_profile_free(kinterp_profile* p);
KINTERP_API kinterp_status kinterp_profile_eval(const kinterp_profile* p, double t, double* out);
/* Phi_{theta,q} norm; q may be INFINITY. */
KINTERP_API kinterp_status kinterp_profile_norm(const kinterp_profile* p, double theta, double q, int normalized,
                                                int restricted, double* out);
/* |K|_F for a lattice spec on a grid (t_min, ppo). divergent may be NULL. */
KINTERP_API kinterp_status kinterp_profile_lattice_norm(const kinterp_profile* p, const char* lattice, double t_min,
                                                        int points_per_octave, double* out, int* divergent);
/* |t |a|_{theta(t),q}|_F, the extrapolation norm built from restricted norms. */
KINTERP_API kinterp_status kinterp_profile_extrap_norm(const kinterp_profile* p, const char* lattice, double q,
                                                       double t_min, int points_per_octave, double* out,
                                                       int* divergent);

/* ---- functions on [0,1] through their decreasing rearrangement ---- */
/* Cells [t[i], t[i+1]) carry value v[i]; the last cell ends at 1. t[0] >= 0. */
KINTERP_API kinterp_status kinterp_function_new(const double* t, const double* v, size_t n, kinterp_function** out);
KINTERP_API void kinterp_function_free(kinterp_function* f);
KINTERP_API kinterp_status kinterp_function_k_lp(const kinterp_function* f, double t, double p, double* out);
KINTERP_API kinterp_status kinterp_function_grand_def(const kinterp_function* f, double p, double alpha, double* out);
KINTERP_API kinterp_status kinterp_function_grand_fk(const kinterp_function* f, double p, double alpha, double* out);
KINTERP_API kinterp_status kinterp_function_llogl(const kinterp_function* f, double alpha, double* out, int* divergent);

/* ---- compact operators ---- */
/* Rows "re,im;re,im;..." one per line. */
KINTERP_API kinterp_status kinterp_operator_parse(const char* text, kinterp_operator** out);
KINTERP_API kinterp_status kinterp_operator_volterra(size_t n, kinterp_operator** out);
KINTERP_API void kinterp_operator_free(kinterp_operator* m);
KINTERP_API size_t kinterp_operator_dim(const kinterp_operator* m);
/* Copies up to cap singular values, nonincreasing; *count gets the total. */
KINTERP_API kinterp_status kinterp_operator_s_numbers(const kinterp_operator* m, double* out, size_t cap, size_t* count);
KINTERP_API kinterp_status kinterp_operator_schatten(const kinterp_operator* m, double p, double* out);
KINTERP_API kinterp_status kinterp_operator_matsaev(const kinterp_operator* m, double alpha, double* out);

#ifdef __cplusplus
}
#endif

#endif /* KINTERP_KINTERP_H */
