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
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

/// Lattices over balls and boxes, scalar and coefficient fields, the discrete
/// non-divergence operator, Dirichlet solves and norms.
namespace conelab::fd {

inline constexpr int kMaxGridDim = 3;
using Point = std::array<double, kMaxGridDim>;

class Domain {
 public:
  enum class Kind { Ball, Box };

  static Domain ball(std::vector<double> center, double radius);
  static Domain box(std::vector<double> lo, std::vector<double> hi);
  static Domain unit_ball(int n);
  static Domain unit_box(int n);

  Kind kind() const noexcept { return kind_; }
  int dim() const noexcept { return static_cast<int>(a_.size()); }
  /// Ball: center and radius. Box: lo and hi.
  std::span<const double> center() const noexcept { return a_; }
  double radius() const noexcept { return radius_; }
  std::span<const double> lo() const noexcept { return a_; }
  std::span<const double> hi() const noexcept { return b_; }

  double diameter() const;
  /// Open-set membership.
  bool contains(std::span<const double> x) const;

 private:
  Domain() = default;
  Kind kind_ = Kind::Ball;
  std::vector<double> a_;
  std::vector<double> b_;
  double radius_ = 0.0;
};

enum class NodeKind : std::uint8_t { Inactive = 0, Interior = 1, Boundary = 2 };

/// Per-node selector over the full lattice (nonzero = selected).
using Mask = std::vector<std::uint8_t>;

struct GridOptions {
  /// Shift the lattice by h/2 on every axis so no node sits at a ball's center.
  bool offset = false;
};

/// Uniform lattice covering a domain. Box: nodes lo + h i, faces are boundary.
/// Ball: interior is |x - c| < R - h/2; active nodes are the interior and its
/// 3^n neighbourhood; boundary = active minus interior.
class Grid {
 public:
  Grid(Domain domain, double h, GridOptions opt = {});

  const Domain& domain() const noexcept { return domain_; }
  int dim() const noexcept { return domain_.dim(); }
  double h() const noexcept { return h_; }
  bool offset() const noexcept { return offset_; }
  std::span<const int> dims() const noexcept { return {dims_.data(), static_cast<std::size_t>(dim())}; }
  std::span<const double> origin() const noexcept { return {origin_.data(), static_cast<std::size_t>(dim())}; }
  std::size_t size() const noexcept { return kind_.size(); }
  double cell_volume() const noexcept;

  NodeKind kind(std::size_t node) const { return static_cast<NodeKind>(kind_[node]); }
  bool is_interior(std::size_t node) const { return kind_[node] == 1; }
  bool is_active(std::size_t node) const { return kind_[node] != 0; }

  Point position(std::size_t node) const;
  std::array<int, kMaxGridDim> multi_index(std::size_t node) const;
  std::size_t linear(std::span<const int> idx) const;
  /// Linear offset of the neighbour at the given multi-index displacement.
  std::ptrdiff_t stride(int axis) const { return strides_[axis]; }

  /// Interior nodes in lattice order, and the inverse map (-1 elsewhere).
  const std::vector<std::size_t>& interior() const noexcept { return interior_; }
  std::int64_t interior_id(std::size_t node) const { return interior_id_[node]; }
  std::size_t boundary_count() const noexcept { return boundary_count_; }

  Mask interior_mask() const;
  Mask active_mask() const;
  Mask boundary_mask() const;
  /// Nodes lying in the open domain (midpoint-rule cells for norms).
  Mask inside_mask() const;
  /// Interior nodes with r_in <= |x - c| < r_out.
  Mask shell_mask(std::span<const double> c, double r_in, double r_out) const;
  /// Interior nodes whose whole 3^n neighbourhood is interior.
  Mask deep_interior_mask() const;

 private:
  Domain domain_;
  double h_;
  bool offset_;
  std::array<int, kMaxGridDim> dims_{1, 1, 1};
  std::array<double, kMaxGridDim> origin_{0, 0, 0};
  std::array<std::ptrdiff_t, kMaxGridDim> strides_{0, 0, 0};
  std::vector<std::uint8_t> kind_;
  std::vector<std::size_t> interior_;
  std::vector<std::int64_t> interior_id_;
  std::size_t boundary_count_ = 0;
};

/// Shared, immutable grid handle.
using GridPtr = std::shared_ptr<const Grid>;

GridPtr build_grid(const Domain& domain, double h, GridOptions opt = {});

Mask mask_and(const Mask& a, const Mask& b);
std::size_t mask_count(const Mask& m);

}  // namespace conelab::fd
