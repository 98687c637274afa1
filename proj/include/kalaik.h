// Copyright 2026 The kalaik Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KALAIK_H
#define KALAIK_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(KALAIK_BUILDING_LIBRARY)
#define KALAIK_API __declspec(dllexport)
#else
#define KALAIK_API __declspec(dllimport)
#endif
#else
#define KALAIK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct kk_state kk_state;
typedef struct kk_report kk_report;

typedef enum kk_status {
  KK_OK = 0,
  KK_ERR_VALIDATION = 1,
  KK_ERR_CAPACITY = 2,
  KK_ERR_UNSUPPORTED = 3,
  KK_ERR_INTERNAL = 4,
  KK_ERR_NULL_ARG = 5
} kk_status;

typedef struct kk_solver_config {
  int max_iterations;
  double target_gap;
  double step_size;
  int dykstra_rounds;
  uint64_t seed;
  int stall_iterations;
  int refine_cuts;
} kk_solver_config;

/* Fills `cfg` with the library defaults. */
KALAIK_API void kk_solver_config_init(kk_solver_config* cfg);

/* Message of the last failed call on this thread, or "" after a success. */
KALAIK_API const char* kk_last_error(void);
KALAIK_API const char* kk_version(void);
KALAIK_API const char* kk_status_name(kk_status status);

/* States. Every constructor writes a new handle to *out on KK_OK. */
KALAIK_API kk_status kk_state_werner(double p, kk_state** out);
KALAIK_API kk_status kk_state_bell_pairs(int pairs, kk_state** out);
KALAIK_API kk_status kk_state_w(int n, kk_state** out);
KALAIK_API kk_status kk_state_w_reduced(int n, int k, kk_state** out);
KALAIK_API kk_status kk_state_cluster_path(int n, kk_state** out);
KALAIK_API kk_status kk_state_grid_pairs(int rows, int cols, double p, kk_state** out);
KALAIK_API kk_status kk_state_phase_cat(int n, double phi, kk_state** out);
/* Row-major real and imaginary parts of a D x D matrix, D = prod(dims).
   `im` may be NULL for a real matrix. */
KALAIK_API kk_status kk_state_from_matrix(const int* dims, int n_sites, const double* re, const double* im,
                                          kk_state** out);
KALAIK_API kk_status kk_state_tensor(const kk_state* a, const kk_state* b, kk_state** out);
KALAIK_API kk_status kk_state_partial_trace(const kk_state* state, const int* keep, int n_keep, kk_state** out);
KALAIK_API void kk_state_free(kk_state* state);
KALAIK_API int kk_state_sites(const kk_state* state);
KALAIK_API size_t kk_state_dim(const kk_state* state);
/* Copies the matrix into caller buffers of dim*dim doubles each. */
KALAIK_API kk_status kk_state_matrix(const kk_state* state, double* re, double* im);

/* Quantities. A cut is given by the mask of the sites in A. */
KALAIK_API kk_status kk_negativity(const kk_state* state, uint64_t a_mask, double* out);
KALAIK_API kk_status kk_w_negativity(int n, int k, int j, double* out);
KALAIK_API kk_status kk_ppt_distance(const kk_state* state, uint64_t a_mask, const kk_solver_config* cfg,
                                     double* lower, double* upper, int* converged);
KALAIK_API kk_status kk_trace_distance(const kk_state* a, const kk_state* b, double* out);
KALAIK_API kk_status kk_count_connected(int rows, int cols, uint64_t* out);
KALAIK_API kk_status kk_k_w_lower(int n, double* out);

/* Reports. `cfg` may be NULL for defaults; `params_json` may be NULL. */
/* k <= 0 or j <= 0 selects every valid value. */
KALAIK_API kk_status kk_report_wneg(int n, int k, int j, kk_report** out);
KALAIK_API kk_status kk_report_wk(int n, kk_report** out);
KALAIK_API kk_status kk_report_kmeasure(const kk_state* state, const char* label, const char* params_json,
                                        const kk_solver_config* cfg, int include_full_set, int workers,
                                        kk_report** out);
KALAIK_API kk_status kk_report_gridk(int rows, int cols, double p, int verify, const kk_solver_config* cfg,
                                     kk_report** out);
KALAIK_API kk_status kk_report_count(int rows, int cols, kk_report** out);
KALAIK_API kk_status kk_report_sepdist(const kk_state* state, uint64_t a_mask, const char* label,
                                       const char* params_json, const kk_solver_config* cfg, kk_report** out);
KALAIK_API kk_status kk_report_catphase(int n, const double* phis, int count, kk_report** out);

/* Strings stay valid until kk_report_free. */
KALAIK_API const char* kk_report_json(const kk_report* report);
KALAIK_API const char* kk_report_csv(const kk_report* report);
KALAIK_API int kk_report_converged(const kk_report* report);
KALAIK_API void kk_report_free(kk_report* report);

#ifdef __cplusplus
}
#endif

#endif
