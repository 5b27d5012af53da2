/* Copyright 2026 The gvc Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef GVC_GVC_H
#define GVC_GVC_H

#include <stddef.h>
#include <stdint.h>

#if defined(GVC_BUILDING_LIBRARY)
#define GVC_API __attribute__((visibility("default")))
#else
#define GVC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  GVC_OK = 0,
  GVC_ERR_INPUT = 1,     /* malformed scenario, shape mismatch, unknown preset */
  GVC_ERR_ASSERTION = 2, /* a verification bound did not hold */
  GVC_ERR_INTERNAL = 3,
  GVC_ERR_NULL = 4
} gvc_status;

typedef struct gvc_scenario gvc_scenario;
typedef struct gvc_report gvc_report;
typedef struct gvc_algebra gvc_algebra;

GVC_API const char* gvc_version(void);
/* Message of the last failing call on this thread; never NULL. */
GVC_API const char* gvc_last_error(void);

GVC_API gvc_status gvc_scenario_load_file(const char* path, gvc_scenario** out);
GVC_API gvc_status gvc_scenario_load_string(const char* json, gvc_scenario** out);
GVC_API gvc_status gvc_scenario_set_seed(gvc_scenario* scenario, uint64_t seed);
GVC_API void gvc_scenario_free(gvc_scenario* scenario);

/* command: "verify fibration" | "verify jacobi" | "verify gauge" |
 * "verify selfdual" | "verify regularity" | "report all". On GVC_OK or
 * GVC_ERR_ASSERTION a report is returned and must be freed. */
GVC_API gvc_status gvc_run(const gvc_scenario* scenario, const char* command, unsigned refine, gvc_report** out);
GVC_API int gvc_report_passed(const gvc_report* report);
/* Pretty-printed JSON owned by the report. */
GVC_API const char* gvc_report_json(const gvc_report* report);
GVC_API void gvc_report_free(gvc_report* report);

/* "u1" or "su2". */
GVC_API gvc_status gvc_algebra_preset(const char* name, gvc_algebra** out);
/* c has dim^3 entries indexed [(alpha * dim + beta) * dim + gamma]. */
GVC_API gvc_status gvc_algebra_create(size_t dim, const double* c, gvc_algebra** out);
GVC_API size_t gvc_algebra_dim(const gvc_algebra* alg);
GVC_API gvc_status gvc_algebra_bracket(const gvc_algebra* alg, const double* a, const double* b, double* out);
/* dim * dim row-major. */
GVC_API gvc_status gvc_algebra_killing(const gvc_algebra* alg, double* out);
/* Writes antisymmetry, Jacobi, pairing symmetry, ad-invariance and det(k)
 * violations into out[5]; pairing may be NULL for the identity. */
GVC_API gvc_status gvc_algebra_validate(const gvc_algebra* alg, const double* pairing, double* out);
GVC_API void gvc_algebra_free(gvc_algebra* alg);

#ifdef __cplusplus
}
#endif

#endif /* GVC_GVC_H */
