/*
 * Copyright (c) 2026 The conelab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CONELAB_CONELAB_H
#define CONELAB_CONELAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(CONELAB_BUILDING)
#    define CONELAB_API __declspec(dllexport)
#  else
#    define CONELAB_API __declspec(dllimport)
#  endif
#else
#  define CONELAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every call returns a status; on failure conelab_last_error() holds the
   message for the calling thread until its next failing call. */
typedef enum conelab_status {
  CONELAB_OK = 0,
  CONELAB_E_RANGE = 1,        /* k outside [1, n], bad dimension */
  CONELAB_E_DOMAIN = 2,       /* argument outside the domain of the map */
  CONELAB_E_NUMERIC = 3,      /* solver or optimiser failed to converge */
  CONELAB_E_CONFIG = 4,       /* malformed or invalid configuration */
  CONELAB_E_PRECONDITION = 5, /* declared structure condition fails */
  CONELAB_E_UNSUPPORTED = 6,  /* valid input, case not covered */
  CONELAB_E_IO = 7,
  CONELAB_E_ARGUMENT = 8,     /* null pointer or inconsistent sizes */
  CONELAB_E_INTERNAL = 9
} conelab_status;

typedef enum conelab_variant {
  CONELAB_CONE_OPEN = 0,
  CONELAB_CONE_CLOSED = 1,
  CONELAB_CONE_DUAL = 2
} conelab_variant;

typedef struct conelab_verdict {
  int member;
  double margin;
  int k;
  conelab_variant variant;
} conelab_verdict;

/* Experiment or suite outcome. */
typedef struct conelab_report conelab_report;

CONELAB_API const char* conelab_version(void);
CONELAB_API const char* conelab_status_name(conelab_status s);
CONELAB_API const char* conelab_last_error(void);

/* Symmetric functions and cones. Spectra are n doubles, n >= 2. */
CONELAB_API conelab_status conelab_elem_sym(const double* lambda, size_t n, int k, double* out);
CONELAB_API conelab_status conelab_rho_k(const double* lambda, size_t n, int k, double* out);
CONELAB_API conelab_status conelab_in_cone(const double* lambda, size_t n, int k, int closed, conelab_verdict* out);
CONELAB_API conelab_status conelab_in_dual_cone(const double* lambda, size_t n, int k, conelab_verdict* out);
/* boundary may be null. */
CONELAB_API conelab_status conelab_rho_star(const double* lambda, size_t n, int k, double* out, int* boundary);
CONELAB_API conelab_status conelab_rho_star_oracle(const double* lambda, size_t n, int k, uint64_t samples,
                                                   uint64_t seed, double* out);
/* Eigenvalues of a symmetric row-major n x n matrix, descending, into out[n]. */
CONELAB_API conelab_status conelab_spectrum_of(const double* matrix, size_t n, double* out);
/* (1, ..., 1, (n-1)/(1-alpha)) into out[n]. */
CONELAB_API conelab_status conelab_gs_spectrum(int n, double alpha, double* out);

/* Ball constants, k > n/2. */
CONELAB_API conelab_status conelab_abp_constant(int n, int k, double diam, double* out);
CONELAB_API conelab_status conelab_best_constant_ball(int n, int k, double radius, double* out);
/* Green's function of the centred ball of the given radius with pole at the
   center, at x[n]; 2k >= n. */
CONELAB_API conelab_status conelab_green_ball(int n, int k, double radius, const double* x, double* out);

/* Runs the experiment in a JSON config file. kind, when non-null, is the
   experiment name the file must declare (filled in when absent). out_dir may
   be null to skip writing. */
CONELAB_API conelab_status conelab_run_experiment_file(const char* config_path, const char* kind,
                                                       const char* out_dir, conelab_report** out);
/* Same, from JSON text. */
CONELAB_API conelab_status conelab_run_experiment_json(const char* json_text, const char* out_dir,
                                                       conelab_report** out);
/* Runs {"experiments": [...], "workers": N}; CONELAB_WORKERS overrides the
   worker count. The report's JSON is the suite summary. */
CONELAB_API conelab_status conelab_run_suite_file(const char* config_path, const char* out_dir,
                                                  conelab_report** out);

/* Owned by the report; valid until conelab_report_free. */
CONELAB_API const char* conelab_report_json(const conelab_report* r);
/* 1 when every verdict passed. */
CONELAB_API int conelab_report_passed(const conelab_report* r);
CONELAB_API void conelab_report_free(conelab_report* r);

#ifdef __cplusplus
}
#endif

#endif /* CONELAB_CONELAB_H */
