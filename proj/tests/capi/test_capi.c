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

/* The public header compiled as C, exercised through the shared library. */

#include <math.h>
#include <stdio.h>
#include <string.h>

#include "conelab/conelab.h"

static int failures = 0;

#define EXPECT(cond)                                                \
  do {                                                              \
    if (!(cond)) {                                                  \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                   \
    }                                                               \
  } while (0)

static int near(double a, double b, double tol) { return fabs(a - b) <= tol * (1.0 + fabs(b)); }

static void cones(void) {
  const double l[3] = {1, 1, 2};
  double v = 0.0;
  conelab_verdict ver;
  int boundary = -1;
  EXPECT(conelab_elem_sym(l, 3, 2, &v) == CONELAB_OK && v == 5.0);
  EXPECT(conelab_rho_k(l, 3, 2, &v) == CONELAB_OK && near(v, sqrt(5.0 / 3.0), 1e-15));
  EXPECT(conelab_in_cone(l, 3, 3, 0, &ver) == CONELAB_OK && ver.member && ver.variant == CONELAB_CONE_OPEN);
  EXPECT(conelab_in_dual_cone(l, 3, 2, &ver) == CONELAB_OK && ver.member && ver.variant == CONELAB_CONE_DUAL);
  EXPECT(conelab_rho_star(l, 3, 2, &v, &boundary) == CONELAB_OK && near(v, 2.0 / sqrt(3.0), 1e-14) && !boundary);
  EXPECT(conelab_rho_star_oracle(l, 3, 2, 100000, 1, &v) == CONELAB_OK && near(v, 2.0 / sqrt(3.0), 1e-3));

  const double m[4] = {2, 1, 1, 2};
  double s[2];
  EXPECT(conelab_spectrum_of(m, 2, s) == CONELAB_OK && near(s[0], 3, 1e-14) && near(s[1], 1, 1e-14));
  double gs[3];
  EXPECT(conelab_gs_spectrum(3, 0.5, gs) == CONELAB_OK && gs[2] == 4.0);
}

static void errors(void) {
  const double l[3] = {1, 1, 5};
  double v = 0.0;
  conelab_verdict ver;
  EXPECT(conelab_in_cone(l, 3, 4, 0, &ver) == CONELAB_E_RANGE);
  EXPECT(strstr(conelab_last_error(), "k=4") != NULL);
  EXPECT(conelab_rho_star(l, 3, 2, &v, NULL) == CONELAB_E_DOMAIN);
  EXPECT(conelab_in_cone(NULL, 3, 2, 0, &ver) == CONELAB_E_ARGUMENT);
  EXPECT(conelab_rho_k(l, 3, 2, NULL) == CONELAB_E_ARGUMENT);
  EXPECT(conelab_abp_constant(4, 2, 1.0, &v) == CONELAB_E_UNSUPPORTED);
  const double asym[4] = {1, 2, 3, 1};
  double s[2];
  EXPECT(conelab_spectrum_of(asym, 2, s) != CONELAB_OK);
  EXPECT(strcmp(conelab_status_name(CONELAB_E_CONFIG), "config") == 0);
}

static void green(void) {
  double v = 0.0;
  EXPECT(conelab_abp_constant(3, 3, 2.0, &v) == CONELAB_OK && near(v, 0.413567, 1e-5));
  double best = 0.0, abp = 0.0;
  EXPECT(conelab_best_constant_ball(3, 2, 1.0, &best) == CONELAB_OK);
  EXPECT(conelab_abp_constant(3, 2, 2.0, &abp) == CONELAB_OK && near(best, abp / sqrt(2.0), 1e-14));
  const double x[3] = {0, 0, 1};
  EXPECT(conelab_green_ball(3, 2, 1.0, x, &v) == CONELAB_OK && v == 0.0);
}

static void experiments(void) {
  conelab_report* r = NULL;
  EXPECT(conelab_run_experiment_json("{\"name\": \"s\", \"experiment\": \"sharpness\", \"n\": 3, \"k\": 2}", NULL, &r) ==
         CONELAB_OK);
  EXPECT(r != NULL && conelab_report_passed(r));
  EXPECT(r != NULL && strstr(conelab_report_json(r), "\"verdicts\"") != NULL);
  conelab_report_free(r);

  r = NULL;
  EXPECT(conelab_run_experiment_json("{\"name\": \"s\",\n \"experiment\": \"sharpness\", \"n\": 9, \"k\": 2, \"h\": 1}",
                                     NULL, &r) == CONELAB_E_CONFIG);
  EXPECT(r == NULL);
  EXPECT(strstr(conelab_last_error(), "<json>:2:") != NULL);
  EXPECT(conelab_run_experiment_json("{", NULL, &r) == CONELAB_E_CONFIG);
  EXPECT(conelab_run_experiment_file("/nonexistent/cfg.json", NULL, NULL, &r) == CONELAB_E_IO);
  conelab_report_free(NULL);
}

int main(void) {
  EXPECT(strlen(conelab_version()) > 0);
  cones();
  errors();
  green();
  experiments();
  if (failures) fprintf(stderr, "%d failure(s)\n", failures);
  return failures ? 1 : 0;
}
