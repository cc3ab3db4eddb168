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

#include "common/simplex.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <memory>

#include "common/error.hpp"

namespace conelab {

namespace {

struct Thunk {
  const std::function<double(std::span<const double>)>* f;
  std::size_t dim;
};

double trampoline(const gsl_vector* v, void* params) {
  auto* t = static_cast<Thunk*>(params);
  return (*t->f)(std::span<const double>(v->data, t->dim));
}

struct VecDel {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};
struct MinDel {
  void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};

}  // namespace

SimplexResult simplex_minimize(const std::function<double(std::span<const double>)>& f,
                               std::span<const double> x0, double step, double size_tol,
                               int max_iter) {
  const std::size_t dim = x0.size();
  SimplexResult out;
  if (dim == 0) {
    out.value = f(x0);
    out.converged = true;
    return out;
  }
  gsl_set_error_handler_off();
  Thunk thunk{&f, dim};
  gsl_multimin_function fn{&trampoline, dim, &thunk};

  std::unique_ptr<gsl_vector, VecDel> x(gsl_vector_alloc(dim));
  std::unique_ptr<gsl_vector, VecDel> ss(gsl_vector_alloc(dim));
  for (std::size_t i = 0; i < dim; ++i) gsl_vector_set(x.get(), i, x0[i]);
  gsl_vector_set_all(ss.get(), step);

  std::unique_ptr<gsl_multimin_fminimizer, MinDel> m(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, dim));
  if (gsl_multimin_fminimizer_set(m.get(), &fn, x.get(), ss.get()) != GSL_SUCCESS) {
    throw NumericError("simplex initialisation failed");
  }
  int it = 0;
  for (; it < max_iter; ++it) {
    if (gsl_multimin_fminimizer_iterate(m.get()) != GSL_SUCCESS) break;
    const double size = gsl_multimin_fminimizer_size(m.get());
    if (gsl_multimin_test_size(size, size_tol) == GSL_SUCCESS) {
      out.converged = true;
      ++it;
      break;
    }
  }
  const gsl_vector* best = gsl_multimin_fminimizer_x(m.get());
  out.x.assign(best->data, best->data + dim);
  out.value = gsl_multimin_fminimizer_minimum(m.get());
  out.iterations = it;
  return out;
}

}  // namespace conelab
