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

#include "fd/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "common/error.hpp"

namespace conelab::fd {

namespace {

void check_dim(std::size_t n) {
  if (n < 2 || n > static_cast<std::size_t>(kMaxGridDim)) {
    throw UnsupportedError("lattice domains support n in {2, 3}; use the radial path for n >= 4");
  }
}

double norm_diff(std::span<const double> x, std::span<const double> c) {
  double s = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) s += (x[i] - c[i]) * (x[i] - c[i]);
  return std::sqrt(s);
}

}  // namespace

Domain Domain::ball(std::vector<double> center, double radius) {
  check_dim(center.size());
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ConfigError("ball radius must be positive");
  for (double x : center)
    if (!std::isfinite(x)) throw ConfigError("ball center must be finite");
  Domain d;
  d.kind_ = Kind::Ball;
  d.a_ = std::move(center);
  d.radius_ = radius;
  return d;
}

Domain Domain::box(std::vector<double> lo, std::vector<double> hi) {
  check_dim(lo.size());
  if (lo.size() != hi.size()) throw ConfigError("box corners differ in dimension");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!(lo[i] < hi[i]) || !std::isfinite(lo[i]) || !std::isfinite(hi[i]))
      throw ConfigError("box needs lo < hi on every axis");
  }
  Domain d;
  d.kind_ = Kind::Box;
  d.a_ = std::move(lo);
  d.b_ = std::move(hi);
  return d;
}

Domain Domain::unit_ball(int n) { return ball(std::vector<double>(static_cast<std::size_t>(n), 0.0), 1.0); }

Domain Domain::unit_box(int n) {
  return box(std::vector<double>(static_cast<std::size_t>(n), 0.0),
             std::vector<double>(static_cast<std::size_t>(n), 1.0));
}

double Domain::diameter() const {
  if (kind_ == Kind::Ball) return 2.0 * radius_;
  return norm_diff(b_, a_);
}

bool Domain::contains(std::span<const double> x) const {
  if (kind_ == Kind::Ball) return norm_diff(x, a_) < radius_;
  for (std::size_t i = 0; i < a_.size(); ++i)
    if (!(x[i] > a_[i] && x[i] < b_[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------

Grid::Grid(Domain domain, double h, GridOptions opt)
    : domain_(std::move(domain)), h_(h), offset_(opt.offset) {
  if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("grid spacing h must be positive");
  const int n = domain_.dim();

  if (domain_.kind() == Domain::Kind::Box) {
    if (offset_) throw ConfigError("offset lattices are only defined for ball domains");
    for (int a = 0; a < n; ++a) {
      const double steps = (domain_.hi()[a] - domain_.lo()[a]) / h;
      const double rounded = std::round(steps);
      if (std::abs(steps - rounded) > 1e-9 * std::max(1.0, steps)) {
        throw ConfigError("box extent is not a multiple of h on every axis");
      }
      dims_[a] = static_cast<int>(rounded) + 1;
      origin_[a] = domain_.lo()[a];
    }
  } else {
    const int m = static_cast<int>(std::ceil(domain_.radius() / h)) + 2;
    for (int a = 0; a < n; ++a) {
      dims_[a] = offset_ ? 2 * m : 2 * m + 1;
      origin_[a] = domain_.center()[a] - h * (offset_ ? m - 0.5 : m);
    }
  }

  std::size_t total = 1;
  for (int a = n - 1; a >= 0; --a) {
    strides_[a] = static_cast<std::ptrdiff_t>(total);
    total *= static_cast<std::size_t>(dims_[a]);
  }
  if (total > (std::size_t{1} << 27)) throw ConfigError("lattice too large for desk-scale runs");
  kind_.assign(total, 0);

  std::array<int, kMaxGridDim> lo_i{}, hi_i{};
  lo_i.fill(1 << 30);
  hi_i.fill(-1);
  for (std::size_t p = 0; p < total; ++p) {
    const auto idx = multi_index(p);
    bool interior = true;
    if (domain_.kind() == Domain::Kind::Box) {
      for (int a = 0; a < n; ++a) interior = interior && idx[a] > 0 && idx[a] < dims_[a] - 1;
    } else {
      const Point x = position(p);
      interior = norm_diff({x.data(), static_cast<std::size_t>(n)}, domain_.center()) <
                 domain_.radius() - 0.5 * h;
    }
    if (interior) {
      kind_[p] = static_cast<std::uint8_t>(NodeKind::Interior);
      for (int a = 0; a < n; ++a) {
        lo_i[a] = std::min(lo_i[a], idx[a]);
        hi_i[a] = std::max(hi_i[a], idx[a]);
      }
    }
  }
  for (int a = 0; a < n; ++a) {
    if (hi_i[a] - lo_i[a] + 1 < 3) {
      std::ostringstream os;
      os << "grid too coarse: fewer than 3 interior nodes along axis " << a + 1 << " at h = " << h;
      throw ConfigError(os.str());
    }
  }

  // boundary layer: every lattice neighbour (3^n stencil) of an interior node
  int neighbours = 1;
  for (int a = 0; a < n; ++a) neighbours *= 3;
  for (std::size_t p = 0; p < total; ++p) {
    if (kind_[p] != static_cast<std::uint8_t>(NodeKind::Interior)) continue;
    for (int code = 0; code < neighbours; ++code) {
      std::ptrdiff_t off = 0;
      int c = code;
      for (int a = 0; a < n; ++a, c /= 3) off += (c % 3 - 1) * strides_[a];
      auto& q = kind_[static_cast<std::size_t>(static_cast<std::ptrdiff_t>(p) + off)];
      if (q == 0) q = static_cast<std::uint8_t>(NodeKind::Boundary);
    }
  }
  if (domain_.kind() == Domain::Kind::Box) {
    for (auto& q : kind_)
      if (q == 0) q = static_cast<std::uint8_t>(NodeKind::Boundary);
  }

  interior_id_.assign(total, -1);
  for (std::size_t p = 0; p < total; ++p) {
    if (kind_[p] == static_cast<std::uint8_t>(NodeKind::Interior)) {
      interior_id_[p] = static_cast<std::int64_t>(interior_.size());
      interior_.push_back(p);
    } else if (kind_[p] == static_cast<std::uint8_t>(NodeKind::Boundary)) {
      ++boundary_count_;
    }
  }
}

double Grid::cell_volume() const noexcept { return std::pow(h_, dim()); }

Point Grid::position(std::size_t node) const {
  const auto idx = multi_index(node);
  Point x{0, 0, 0};
  for (int a = 0; a < dim(); ++a) x[a] = origin_[a] + h_ * idx[a];
  return x;
}

std::array<int, kMaxGridDim> Grid::multi_index(std::size_t node) const {
  std::array<int, kMaxGridDim> idx{0, 0, 0};
  for (int a = 0; a < dim(); ++a) {
    idx[a] = static_cast<int>(node / static_cast<std::size_t>(strides_[a]));
    node %= static_cast<std::size_t>(strides_[a]);
  }
  return idx;
}

std::size_t Grid::linear(std::span<const int> idx) const {
  std::size_t p = 0;
  for (int a = 0; a < dim(); ++a) {
    if (idx[a] < 0 || idx[a] >= dims_[a]) throw RangeError("lattice index out of range");
    p += static_cast<std::size_t>(idx[a]) * static_cast<std::size_t>(strides_[a]);
  }
  return p;
}

Mask Grid::interior_mask() const {
  Mask m(size(), 0);
  for (std::size_t p : interior_) m[p] = 1;
  return m;
}

Mask Grid::active_mask() const {
  Mask m(size(), 0);
  for (std::size_t p = 0; p < size(); ++p) m[p] = kind_[p] != 0;
  return m;
}

Mask Grid::boundary_mask() const {
  Mask m(size(), 0);
  for (std::size_t p = 0; p < size(); ++p) m[p] = kind_[p] == static_cast<std::uint8_t>(NodeKind::Boundary);
  return m;
}

Mask Grid::inside_mask() const {
  Mask m(size(), 0);
  for (std::size_t p = 0; p < size(); ++p) {
    if (!kind_[p]) continue;
    const Point x = position(p);
    m[p] = domain_.contains({x.data(), static_cast<std::size_t>(dim())});
  }
  return m;
}

Mask Grid::shell_mask(std::span<const double> c, double r_in, double r_out) const {
  Mask m(size(), 0);
  for (std::size_t p : interior_) {
    const Point x = position(p);
    const double r = norm_diff({x.data(), static_cast<std::size_t>(dim())}, c);
    m[p] = r >= r_in && r < r_out;
  }
  return m;
}

Mask Grid::deep_interior_mask() const {
  Mask m(size(), 0);
  int neighbours = 1;
  for (int a = 0; a < dim(); ++a) neighbours *= 3;
  for (std::size_t p : interior_) {
    bool deep = true;
    for (int code = 0; code < neighbours && deep; ++code) {
      std::ptrdiff_t off = 0;
      int c = code;
      for (int a = 0; a < dim(); ++a, c /= 3) off += (c % 3 - 1) * strides_[a];
      deep = is_interior(static_cast<std::size_t>(static_cast<std::ptrdiff_t>(p) + off));
    }
    m[p] = deep;
  }
  return m;
}

GridPtr build_grid(const Domain& domain, double h, GridOptions opt) {
  return std::make_shared<const Grid>(domain, h, opt);
}

Mask mask_and(const Mask& a, const Mask& b) {
  if (a.size() != b.size()) throw DomainError("mask sizes differ");
  Mask m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = a[i] && b[i];
  return m;
}

std::size_t mask_count(const Mask& m) {
  return static_cast<std::size_t>(std::count_if(m.begin(), m.end(), [](std::uint8_t x) { return x != 0; }));
}

}  // namespace conelab::fd
