#ifndef KSP_KSP_H
#define KSP_KSP_H

/* C interface to the k-Set Packing toolkit.
 *
 * Objects are opaque handles created by ksp_*_read/gen/... functions and
 * released with the matching ksp_*_free. Every fallible call returns a
 * ksp_status; on failure ksp_last_error() describes the problem (the
 * message is per thread and stays valid until the next failing call on the
 * same thread). Set indices, vertices and edges are 0-based here; files use
 * 1-based ids. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define KSP_API __declspec(dllexport)
#else
#define KSP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ksp_status {
  KSP_OK = 0,
  KSP_ERR_INVALID_ARGUMENT = 1,
  KSP_ERR_PARSE = 2,
  KSP_ERR_PRECONDITION = 3,
  KSP_ERR_SIZE_LIMIT = 4,
  KSP_ERR_BUDGET = 5,
  KSP_ERR_VERIFICATION = 6,
  KSP_ERR_IO = 7,
  KSP_ERR_INTERNAL = 8
} ksp_status;

typedef struct ksp_family ksp_family;
typedef struct ksp_result ksp_result;
typedef struct ksp_reduction ksp_reduction;
typedef struct ksp_mgraph ksp_mgraph;
typedef struct ksp_tree ksp_tree;

KSP_API const char* ksp_last_error(void);
KSP_API const char* ksp_status_name(ksp_status status);

/* ---- set families ---- */

KSP_API ksp_status ksp_family_read(const char* path, ksp_family** out);
KSP_API ksp_status ksp_family_parse(const char* text, ksp_family** out);
/* Sets are given as a flat element array split by `sizes`. */
KSP_API ksp_status ksp_family_create(int n_elements, int k, int n_sets,
                                     const int* sizes, const int* elements,
                                     ksp_family** out);
KSP_API ksp_status ksp_family_write(const ksp_family* family, const char* path);
KSP_API ksp_status ksp_family_gen_random(int n_elements, int n_sets, int k,
                                         uint64_t seed, ksp_family** out);
/* `planted` (may be NULL) receives the planted matching size m. */
KSP_API ksp_status ksp_family_gen_3dm(int m, int noise, uint64_t seed,
                                      ksp_family** out, int* planted);
KSP_API void ksp_family_free(ksp_family* family);

KSP_API int ksp_family_num_elements(const ksp_family* family);
KSP_API int ksp_family_num_sets(const ksp_family* family);
KSP_API int ksp_family_k(const ksp_family* family);
/* Size of set `index`; if `elements` is non-NULL, up to `capacity` element
 * ids are copied into it. Returns -1 for a bad index. */
KSP_API int ksp_family_set(const ksp_family* family, int index, int* elements,
                           int capacity);

/* ---- solving ---- */

typedef enum ksp_mode {
  KSP_MODE_GREEDY = 0,
  KSP_MODE_EXACT = 1,
  KSP_MODE_SWAP = 2, /* exhaustive swaps of size <= r */
  KSP_MODE_PWLS = 3  /* color-coding swaps of size <= r, pathwidth <= pw */
} ksp_mode;

typedef struct ksp_solve_options {
  ksp_mode mode;
  int r;
  int pw;
  int64_t trials;         /* 0: derived from delta per swap size */
  uint64_t seed;
  double delta;           /* failure probability per search */
  double budget_seconds;  /* 0: unlimited */
  int64_t iteration_cap;  /* 0: unlimited */
} ksp_solve_options;

KSP_API void ksp_solve_options_init(ksp_solve_options* options);
/* A budget-terminated run still returns KSP_OK; check
 * ksp_result_budget_terminated. */
KSP_API ksp_status ksp_solve(const ksp_family* family,
                             const ksp_solve_options* options,
                             ksp_result** out);
KSP_API void ksp_result_free(ksp_result* result);

KSP_API int ksp_result_size(const ksp_result* result);
KSP_API const int* ksp_result_members(const ksp_result* result);
KSP_API int ksp_result_start_size(const ksp_result* result);
KSP_API int ksp_result_num_swaps(const ksp_result* result);
KSP_API int ksp_result_budget_terminated(const ksp_result* result);
KSP_API int64_t ksp_result_trials(const ksp_result* result);
KSP_API ksp_status ksp_result_write_certificate(const ksp_result* result,
                                                const char* path);
KSP_API ksp_status ksp_result_write_trace(const ksp_result* result,
                                          const char* path);

/* Reads a certificate and checks it is a packing of `family`.
 * KSP_ERR_VERIFICATION when two listed sets intersect. */
KSP_API ksp_status ksp_verify_certificate(const ksp_family* family,
                                          const char* path, int* size);
/* Replays a trace file and checks it ends at the certificate's packing. */
KSP_API ksp_status ksp_verify_trace(const ksp_family* family,
                                    const char* trace_path,
                                    const char* certificate_path);

/* Exact optimum with a time budget. `finished` is set to 0 when the budget
 * ran out and `size` is only the best packing found. */
KSP_API ksp_status ksp_exact_size(const ksp_family* family,
                                  double budget_seconds, int* size,
                                  int* finished);

typedef struct ksp_parameters {
  int r;
  int pw;
  char warning[256];
} ksp_parameters;

KSP_API ksp_status ksp_suggest_parameters(int k, double eps, int n_sets,
                                          ksp_parameters* out);

/* ---- hardness reduction ---- */

KSP_API ksp_status ksp_reduction_from_mcc(const char* path,
                                          ksp_reduction** out);
KSP_API void ksp_reduction_free(ksp_reduction* reduction);
/* Borrowed; valid while the reduction lives. */
KSP_API const ksp_family* ksp_reduction_family(const ksp_reduction* reduction);
KSP_API int ksp_reduction_f0_size(const ksp_reduction* reduction);
KSP_API int ksp_reduction_padded_k(const ksp_reduction* reduction);
KSP_API ksp_status ksp_reduction_write_map(const ksp_reduction* reduction,
                                           const char* path);
/* Clique read off a perfect packing of the reduced family. `vertices`
 * must hold ksp_reduction_padded_k entries; `count` receives the size. */
KSP_API ksp_status ksp_reduction_extract(const ksp_reduction* reduction,
                                         const ksp_result* packing,
                                         int* vertices, int* count);

typedef struct ksp_reduction_report {
  int64_t universe;
  int sets;
  int f0_size;
  int padded_k;
  int cliques;
  int witnesses_ok;
  int max_symmetric_difference;
  int exact_finished;
  int optimum;
  int perfect;
  int extraction_ok;
  char failure[256];
} ksp_reduction_report;

/* Round trip on a colored graph file. KSP_ERR_VERIFICATION if the report
 * shows an inconsistency, KSP_ERR_BUDGET if the exact solve did not finish. */
KSP_API ksp_status ksp_check_reduction(const char* mcc_path,
                                       double budget_seconds,
                                       ksp_reduction_report* report);

/* ---- bounded trees in labeled multigraphs ---- */

KSP_API ksp_status ksp_mgraph_read(const char* path, ksp_mgraph** out);
KSP_API ksp_status ksp_mgraph_random(int n, int gamma, uint64_t seed,
                                     ksp_mgraph** out);
KSP_API ksp_status ksp_mgraph_write(const ksp_mgraph* graph, const char* path);
KSP_API void ksp_mgraph_free(ksp_mgraph* graph);
KSP_API int ksp_mgraph_num_vertices(const ksp_mgraph* graph);
KSP_API int ksp_mgraph_num_edges(const ksp_mgraph* graph);

KSP_API ksp_status ksp_tree_find(const ksp_mgraph* graph, ksp_tree** out);
KSP_API void ksp_tree_free(ksp_tree* tree);
KSP_API ksp_status ksp_tree_write(const ksp_tree* tree, const char* path);

typedef struct ksp_tree_report {
  int vertices;
  int edges;
  int width;
  int width_limit;
  double vertex_limit;
  int beta;
  int checks_passed; /* all decomposition checks hold */
} ksp_tree_report;

KSP_API ksp_status ksp_tree_report_get(const ksp_tree* tree,
                                       ksp_tree_report* out);
/* KSP_ERR_VERIFICATION with the failed check in ksp_last_error(). */
KSP_API ksp_status ksp_tree_verify(const ksp_mgraph* graph,
                                   const char* certificate_path);

#ifdef __cplusplus
}
#endif

#endif
