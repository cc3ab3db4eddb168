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

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace conelab::cone {

/// Ordered real eigenvalue vector, dimension n >= 2, all entries finite.
class Spectrum {
 public:
  explicit Spectrum(std::vector<double> values);

  std::size_t dim() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  Spectrum sorted_descending() const;
  Spectrum scaled(double t) const;
  double sum() const noexcept;
  double norm() const noexcept;

 private:
  std::vector<double> values_;
};

/// Dense symmetric n x n matrix, row-major. Symmetry is checked exactly on
/// construction.
class SymMatrix {
 public:
  SymMatrix(std::size_t n, std::vector<double> row_major);

  static SymMatrix identity(std::size_t n);
  static SymMatrix diagonal(std::span<const double> d);
  /// Q diag(d) Q^T for an orthogonal Q (row-major n x n). The result is
  /// symmetrised so the exact-symmetry invariant holds.
  static SymMatrix conjugated(std::span<const double> q, std::span<const double> d);

  std::size_t dim() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  std::span<const double> data() const noexcept { return a_; }

  double trace() const noexcept;
  double frobenius() const noexcept;
  /// Frobenius inner product A . B.
  double dot(const SymMatrix& other) const;

 private:
  std::size_t n_;
  std::vector<double> a_;
};

class ConeIndex {
 public:
  explicit ConeIndex(int k);
  int value() const noexcept { return k_; }
  /// Throws RangeError unless 1 <= k <= n.
  void check(std::size_t n) const;

 private:
  int k_;
};

enum class ConeVariant { Open, Closed, Dual };

std::string_view to_string(ConeVariant v);

struct ConeVerdict {
  bool member = false;
  double margin = 0.0;
  int k = 0;
  ConeVariant variant = ConeVariant::Open;
  double tol = 0.0;
};

struct RhoStar {
  double value = 0.0;
  bool boundary = false;
};

/// Tolerances used throughout the cone module.
inline constexpr double kMembershipTol = 1e-9;
inline constexpr double kBoundaryTol = 1e-7;

}  // namespace conelab::cone
