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

#include "fd/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "common/error.hpp"
#include "fd/operators.hpp"

namespace conelab::fd {

namespace {

void check_mask(const ScalarField& field, const Mask& mask) {
  if (mask.size() != field.grid().size()) throw DomainError("mask does not match the lattice");
}

}  // namespace

double lq_norm(const ScalarField& field, double q, const Mask& mask) {
  if (!(q >= 1.0)) throw DomainError("L^q norm needs q >= 1");
  check_mask(field, mask);
  double peak = 0.0;
  for (std::size_t p = 0; p < mask.size(); ++p) {
    if (!mask[p]) continue;
    const double v = field[p];
    if (!std::isfinite(v)) throw DomainError("L^q norm: field undefined under the mask");
    peak = std::max(peak, std::abs(v));
  }
  if (peak == 0.0) return 0.0;
  if (std::isinf(q)) return peak;
  double sum = 0.0;
  for (std::size_t p = 0; p < mask.size(); ++p)
    if (mask[p]) sum += std::pow(std::abs(field[p]) / peak, q);
  return peak * std::pow(sum * field.grid().cell_volume(), 1.0 / q);
}

Extrema sup_inf_osc(const ScalarField& field, const Mask& mask) {
  check_mask(field, mask);
  Extrema e{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), 0.0};
  bool any = false;
  for (std::size_t p = 0; p < mask.size(); ++p) {
    if (!mask[p]) continue;
    const double v = field[p];
    if (!std::isfinite(v)) throw DomainError("extrema: field undefined under the mask");
    e.sup = std::max(e.sup, v);
    e.inf = std::min(e.inf, v);
    any = true;
  }
  if (!any) throw DomainError("extrema over an empty mask");
  e.osc = e.sup - e.inf;
  return e;
}

double w22_seminorm(const ScalarField& u, const Mask& mask) {
  check_mask(u, mask);
  const Grid& g = u.grid();
  const Mask deep = g.deep_interior_mask();
  for (std::size_t p = 0; p < mask.size(); ++p) {
    if (mask[p] && !deep[p]) throw DomainError("W^{2,2} mask must stay two layers inside the boundary");
  }
  const MatrixField hess = hessian_field(u);
  const int n = g.dim();
  double sum = 0.0;
  for (std::size_t p = 0; p < mask.size(); ++p) {
    if (!mask[p]) continue;
    double fro = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) fro += hess.at(p, i, j) * hess.at(p, i, j);
    if (!std::isfinite(fro)) throw DomainError("W^{2,2}: field undefined near the mask");
    sum += fro;
  }
  return std::sqrt(sum * g.cell_volume());
}

}  // namespace conelab::fd
