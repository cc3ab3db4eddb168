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

#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "fd/grid.hpp"
#include "symcone/types.hpp"

namespace conelab::fd {

/// Packed upper triangle of a symmetric n x n matrix, row by row.
inline constexpr int packed_size(int n) { return n * (n + 1) / 2; }
inline constexpr int packed_index(int i, int j, int n) {
  if (i > j) std::swap(i, j);
  return i * n - i * (i - 1) / 2 + (j - i);
}
using Packed = std::array<double, packed_size(kMaxGridDim)>;

/// Values on every lattice node; NaN marks nodes where the field is undefined.
class ScalarField {
 public:
  explicit ScalarField(GridPtr grid);
  ScalarField(GridPtr grid, std::vector<double> values);
  /// f evaluated at every active node.
  static ScalarField from_function(GridPtr grid, const std::function<double(const Point&)>& f);

  const Grid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  double operator[](std::size_t node) const { return values_[node]; }
  double& operator[](std::size_t node) { return values_[node]; }

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

/// Symmetric matrix per lattice node (packed), NaN where undefined.
class MatrixField {
 public:
  explicit MatrixField(GridPtr grid);

  const Grid& grid() const noexcept { return *grid_; }
  int dim() const noexcept { return grid_->dim(); }
  double at(std::size_t node, int i, int j) const {
    return data_[node * stride_ + packed_index(i, j, dim())];
  }
  void set(std::size_t node, int i, int j, double v) { data_[node * stride_ + packed_index(i, j, dim())] = v; }
  bool defined(std::size_t node) const { return !std::isnan(data_[node * stride_]); }
  cone::SymMatrix matrix(std::size_t node) const;

 private:
  GridPtr grid_;
  std::size_t stride_;
  std::vector<double> data_;
};

/// a^{ij}, b^i, c at one point.
struct LocalCoeff {
  Packed a{};
  Point b{0, 0, 0};
  double c = 0.0;
};

using CoeffBuilder = std::function<LocalCoeff(const Point&)>;

/// Declared structure condition: spectrum in Gamma*_k with rho*_k >= rho0 and
/// |A| <= a0 at every node.
struct Ellipticity {
  int k = 0;
  double a0 = 0.0;
  double rho0 = 0.0;
};

/// Coefficients of L u = a^{ij} D_ij u + b^i D_i u + c u on the interior nodes.
class CoeffField {
 public:
  CoeffField(GridPtr grid, const CoeffBuilder& builder, std::optional<Ellipticity> declared = {});

  const Grid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  const LocalCoeff& at_interior(std::size_t id) const { return local_[id]; }
  const std::optional<Ellipticity>& declared() const noexcept { return declared_; }
  cone::SymMatrix matrix(std::size_t id) const;

 private:
  GridPtr grid_;
  std::vector<LocalCoeff> local_;
  std::optional<Ellipticity> declared_;
};

/// A = I, b = 0, c = 0.
CoeffBuilder coeff_identity(int n);

/// A(x) = I + beta x x^T / |x|^2 with beta = -1 + (n-1)/(1-alpha), b = c = 0;
/// A(0) = I. DomainError for alpha >= 1.
CoeffBuilder coeff_gilbarg_serrin(int n, double alpha, std::span<const double> center = {});

/// Constant coefficients.
CoeffBuilder coeff_constant(const cone::SymMatrix& a, std::span<const double> b = {}, double c = 0.0);

}  // namespace conelab::fd
