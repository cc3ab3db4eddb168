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

#include "fd/field.hpp"

#include <cmath>
#include <limits>

#include "common/error.hpp"

namespace conelab::fd {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

ScalarField::ScalarField(GridPtr grid) : grid_(std::move(grid)) {
  if (!grid_) throw DomainError("field needs a grid");
  values_.assign(grid_->size(), kNaN);
}

ScalarField::ScalarField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw DomainError("field needs a grid");
  if (values_.size() != grid_->size()) throw DomainError("field size does not match the lattice");
}

ScalarField ScalarField::from_function(GridPtr grid, const std::function<double(const Point&)>& f) {
  ScalarField out(std::move(grid));
  const Grid& g = out.grid();
  for (std::size_t p = 0; p < g.size(); ++p) {
    if (!g.is_active(p)) continue;
    const double v = f(g.position(p));
    if (!std::isfinite(v)) throw DomainError("field function returned a non-finite value");
    out.values_[p] = v;
  }
  return out;
}

MatrixField::MatrixField(GridPtr grid)
    : grid_(std::move(grid)), stride_(static_cast<std::size_t>(packed_size(grid_->dim()))) {
  data_.assign(grid_->size() * stride_, kNaN);
}

cone::SymMatrix MatrixField::matrix(std::size_t node) const {
  const int n = dim();
  std::vector<double> m(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i * n + j] = at(node, i, j);
  return cone::SymMatrix(static_cast<std::size_t>(n), std::move(m));
}

CoeffField::CoeffField(GridPtr grid, const CoeffBuilder& builder, std::optional<Ellipticity> declared)
    : grid_(std::move(grid)), declared_(declared) {
  const auto& interior = grid_->interior();
  local_.reserve(interior.size());
  const int n = grid_->dim();
  for (std::size_t p : interior) {
    LocalCoeff lc = builder(grid_->position(p));
    for (int i = 0; i < packed_size(n); ++i)
      if (!std::isfinite(lc.a[i])) throw DomainError("coefficient builder returned a non-finite a^{ij}");
    local_.push_back(lc);
  }
}

cone::SymMatrix CoeffField::matrix(std::size_t id) const {
  const int n = grid_->dim();
  std::vector<double> m(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i * n + j] = local_[id].a[packed_index(i, j, n)];
  return cone::SymMatrix(static_cast<std::size_t>(n), std::move(m));
}

CoeffBuilder coeff_identity(int n) {
  return [n](const Point&) {
    LocalCoeff lc;
    for (int i = 0; i < n; ++i) lc.a[packed_index(i, i, n)] = 1.0;
    return lc;
  };
}

CoeffBuilder coeff_gilbarg_serrin(int n, double alpha, std::span<const double> center) {
  if (!(alpha < 1.0)) throw DomainError("Gilbarg-Serrin exponent must satisfy alpha < 1");
  const double beta = -1.0 + (n - 1) / (1.0 - alpha);
  Point c{0, 0, 0};
  for (std::size_t i = 0; i < center.size() && i < c.size(); ++i) c[i] = center[i];
  return [n, beta, c](const Point& x) {
    LocalCoeff lc;
    double r2 = 0.0;
    for (int i = 0; i < n; ++i) r2 += (x[i] - c[i]) * (x[i] - c[i]);
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        double v = i == j ? 1.0 : 0.0;
        if (r2 > 0.0) v += beta * (x[i] - c[i]) * (x[j] - c[j]) / r2;
        lc.a[packed_index(i, j, n)] = v;
      }
    }
    return lc;
  };
}

CoeffBuilder coeff_constant(const cone::SymMatrix& a, std::span<const double> b, double c) {
  const int n = static_cast<int>(a.dim());
  LocalCoeff lc;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) lc.a[packed_index(i, j, n)] = a(i, j);
  for (std::size_t i = 0; i < b.size() && i < lc.b.size(); ++i) lc.b[i] = b[i];
  lc.c = c;
  return [lc](const Point&) { return lc; };
}

}  // namespace conelab::fd
