#ifndef PRANK_PRANK_H
#define PRANK_PRANK_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define PRANK_API __declspec(dllexport)
#else
#define PRANK_API __attribute__((visibility("default")))
#endif

typedef enum prank_status {
  PRANK_OK = 0,
  PRANK_E_INVALID_ARGUMENT = 1,
  PRANK_E_PARSE = 2,
  PRANK_E_SIZE_LIMIT = 3,
  PRANK_E_UNKNOWN_TUPLE = 4,
  PRANK_E_PROBABILITY_CONSTRAINT = 5,
  PRANK_E_INVALID_MODEL = 6,
  PRANK_E_INVALID_TREE = 7,
  PRANK_E_DEGREE_BOUND_EXCEEDED = 8,
  PRANK_E_CONFIG = 9,
  PRANK_E_ZERO_PROBABILITY = 10,
  PRANK_E_INCONSISTENT_POTENTIALS = 11,
  PRANK_E_SHAPE = 12,
  PRANK_E_MISMATCHED_K = 13,
  PRANK_E_UNSUPPORTED_MODEL = 14,
  PRANK_E_DEGENERATE_SAMPLE = 15,
  PRANK_E_INTERNAL = 99
} prank_status;

typedef struct prank_model prank_model;
typedef struct prank_result prank_result;
typedef struct prank_mixture prank_mixture;

/* Message of the last failed call on this thread ("" when none). */
PRANK_API const char* prank_last_error(void);
PRANK_API const char* prank_status_name(prank_status status);

/* Strings and arrays returned by the library. */
PRANK_API void prank_free(void* p);

/* Models */
PRANK_API prank_status prank_model_from_arrays(const int64_t* ids, const double* scores,
                                               const double* probs, size_t n, prank_model** out);
PRANK_API prank_status prank_model_load_relation(const char* csv_path, prank_model** out);
PRANK_API prank_status prank_model_load_tree(const char* json_path, prank_model** out);
/* scores_csv may be NULL when the junction file carries scores. */
PRANK_API prank_status prank_model_load_junction(const char* json_path, const char* scores_csv,
                                                 prank_model** out);
/* kind: IND, XOR, LOW, MED or HIGH. */
PRANK_API prank_status prank_model_generate(const char* kind, size_t n, uint64_t seed,
                                            prank_model** out);
/* Relation CSV, tree JSON or junction JSON depending on the model kind. */
PRANK_API prank_status prank_model_save(const prank_model* m, const char* path);
/* Submodel over the given ids. */
PRANK_API prank_status prank_model_restrict(const prank_model* m, const int64_t* ids, size_t n,
                                            prank_model** out);
PRANK_API void prank_model_free(prank_model* m);

PRANK_API const char* prank_model_kind(const prank_model* m); /* "ind", "andxor", "junction" */
PRANK_API size_t prank_model_size(const prank_model* m);
/* Tuple ids in ranking order; *ids is freed with prank_free. */
PRANK_API prank_status prank_model_ids(const prank_model* m, int64_t** ids, size_t* n);
/* Number of structural violations; *report (one per line) is freed with prank_free. */
PRANK_API prank_status prank_model_validate(const prank_model* m, size_t* violations,
                                            char** report);
/* Tree height; 1 for independent relations. */
PRANK_API prank_status prank_model_height(const prank_model* m, int* height);

/* Ranking. spec: "prfe:<re>[:<im>]", "pt:<h>", "prfw:<w1>;<w2>;...", "urank",
 * "erank", "escore" or "kselection". */
PRANK_API prank_status prank_rank(const prank_model* m, const char* spec, size_t k,
                                  prank_result** out);
PRANK_API prank_status prank_rank_weights(const prank_model* m, const double* weights, size_t h,
                                          size_t k, prank_result** out);
PRANK_API prank_status prank_rank_mixture(const prank_model* m, const prank_mixture* mix,
                                          size_t k, prank_result** out);
PRANK_API size_t prank_result_size(const prank_result* r);
PRANK_API prank_status prank_result_entry(const prank_result* r, size_t i, int64_t* id, double* re,
                                          double* im);
PRANK_API void prank_result_free(prank_result* r);
/* Normalized Kendall distance between two results of equal length. */
PRANK_API prank_status prank_kendall(const prank_result* a, const prank_result* b, double* out);

/* Rank distribution row for a tuple: probs[j] = Pr(r = j + 1), len entries. */
PRANK_API prank_status prank_rank_distribution(const prank_model* m, int64_t id, double** probs,
                                               size_t* len);

/* Fast paths against the possible-worlds enumerator. *report is a CSV table. */
PRANK_API prank_status prank_oracle_check(const prank_model* m, double* max_dev, char** report);

/* Approximation. fn: "step:<h>", "delta:<j>", "linear:<N>", "discount:<N>",
 * "prfe:<alpha>:<N>" or "tabulated:<w1>;<w2>;...". N = 0 derives the domain. */
typedef struct prank_approx_config {
  size_t L;
  size_t a;
  double b;
  double eps;
  size_t N;
} prank_approx_config;

PRANK_API prank_approx_config prank_approx_default(void);
PRANK_API prank_status prank_approx(const char* fn, const prank_approx_config* cfg,
                                    prank_mixture** out);
PRANK_API prank_status prank_mixture_load(const char* path, prank_mixture** out);
PRANK_API prank_status prank_mixture_save(const prank_mixture* mix, const char* path);
PRANK_API size_t prank_mixture_size(const prank_mixture* mix);
PRANK_API prank_status prank_mixture_term(const prank_mixture* mix, size_t i, double* re_u,
                                          double* im_u, double* re_alpha, double* im_alpha);
PRANK_API prank_status prank_mixture_eval(const prank_mixture* mix, double i, double* re,
                                          double* im);
/* Max and mean |ω(i) - mixture(i)| over i = 1..n for the weight function fn. */
PRANK_API prank_status prank_mixture_residual(const prank_mixture* mix, const char* fn, size_t n,
                                              double* max_abs, double* mean_abs);
PRANK_API void prank_mixture_free(prank_mixture* mix);

/* Learning. order holds the target ranking of the sample, best first. */
PRANK_API prank_status prank_read_preferences(const char* csv_path, int64_t** order, size_t* n);
PRANK_API prank_status prank_write_preferences(const char* csv_path, const int64_t* order,
                                               size_t n);
PRANK_API prank_status prank_learn_alpha(const prank_model* sample, const int64_t* order, size_t n,
                                         double tol, double* alpha, double* distance);
/* h = 0 uses the sample size. weights receives h values (freed with prank_free). */
PRANK_API prank_status prank_learn_weights(const prank_model* sample, const int64_t* order,
                                           size_t n, size_t h, double reg, size_t epochs,
                                           uint64_t seed, double** weights, size_t* h_out,
                                           double* final_loss);

#ifdef __cplusplus
}
#endif

#endif
