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

#include "fd/operators.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "common/error.hpp"
#include "symcone/symcone.hpp"

namespace conelab::fd {

void stencil_at(const Grid& grid, const LocalCoeff& lc, Stencil& out) {
  const int n = grid.dim();
  const double h = grid.h();
  const double h2 = h * h;
  out.clear();
  double center = lc.c;
  out.emplace_back(0, 0.0);
  for (int i = 0; i < n; ++i) {
    const double aii = lc.a[packed_index(i, i, n)];
    center -= 2.0 * aii / h2;
    out.emplace_back(grid.stride(i), aii / h2 + lc.b[i] / (2.0 * h));
    out.emplace_back(-grid.stride(i), aii / h2 - lc.b[i] / (2.0 * h));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double w = lc.a[packed_index(i, j, n)] / (2.0 * h2);
      if (w == 0.0) continue;
      const std::ptrdiff_t si = grid.stride(i);
      const std::ptrdiff_t sj = grid.stride(j);
      out.emplace_back(si + sj, w);
      out.emplace_back(si - sj, -w);
      out.emplace_back(-si + sj, -w);
      out.emplace_back(-si - sj, w);
    }
  }
  out[0].second = center;
}

ScalarField apply_L(const ScalarField& u, const CoeffField& coeff) {
  if (&u.grid() != &coeff.grid()) throw DomainError("apply_L: field and coefficients live on different grids");
  const Grid& g = u.grid();
  ScalarField out(u.grid_ptr());
  Stencil st;
  const auto& interior = g.interior();
  for (std::size_t id = 0; id < interior.size(); ++id) {
    const std::size_t p = interior[id];
    stencil_at(g, coeff.at_interior(id), st);
    double acc = 0.0;
    for (const auto& [off, w] : st) acc += w * u[static_cast<std::size_t>(static_cast<std::ptrdiff_t>(p) + off)];
    out[p] = acc;
  }
  return out;
}

MatrixField hessian_field(const ScalarField& u) {
  const Grid& g = u.grid();
  const int n = g.dim();
  const double h2 = g.h() * g.h();
  MatrixField out(u.grid_ptr());
  auto at = [&](std::size_t p, std::ptrdiff_t off) {
    return u[static_cast<std::size_t>(static_cast<std::ptrdiff_t>(p) + off)];
  };
  for (std::size_t p : g.interior()) {
    for (int i = 0; i < n; ++i) {
      const std::ptrdiff_t si = g.stride(i);
      out.set(p, i, i, (at(p, si) - 2.0 * u[p] + at(p, -si)) / h2);
      for (int j = i + 1; j < n; ++j) {
        const std::ptrdiff_t sj = g.stride(j);
        out.set(p, i, j, (at(p, si + sj) - at(p, si - sj) - at(p, -si + sj) + at(p, -si - sj)) / (4.0 * h2));
      }
    }
  }
  return out;
}

namespace {

using SpMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using Vec = Eigen::VectorXd;

void check_declared(const CoeffField& coeff) {
  const auto& decl = coeff.declared();
  if (!decl) return;
  const auto& interior = coeff.grid().interior();
  for (std::size_t id = 0; id < interior.size(); ++id) {
    const auto chain = cone::lambda_chain_check(coeff.matrix(id), cone::ConeIndex(decl->k), decl->a0, decl->rho0);
    if (!chain.holds) {
      std::ostringstream os;
      os << "uniform-ellipticity chain fails at interior node " << id << " (slacks " << chain.slack_det
         << ", " << chain.slack_a0 << ")";
      throw PreconditionError(os.str());
    }
  }
}

struct Krylov {
  Vec x;
  int iterations = 0;
  std::vector<double> history;
  bool converged = false;
};

// Right-preconditioned BiCGSTAB with a Jacobi preconditioner.
Krylov bicgstab(const SpMat& a, const Vec& b, double tol, int cap) {
  const Eigen::Index n = b.size();
  Vec inv_diag(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = a.coeff(i, i);
    inv_diag[i] = d != 0.0 ? 1.0 / d : 1.0;
  }
  Krylov out;
  out.x = Vec::Zero(n);
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    out.converged = true;
    out.history.push_back(0.0);
    return out;
  }
  Vec r = b;
  Vec rhat = r;
  Vec p = Vec::Zero(n), v = Vec::Zero(n), y(n), z(n), s(n), t(n);
  double rho = 1.0, alpha = 1.0, omega = 1.0;
  out.history.push_back(1.0);
  int restarts = 0;
  for (int it = 1; it <= cap; ++it) {
    out.iterations = it;
    const double rho_new = rhat.dot(r);
    if (std::abs(rho_new) < 1e-300 || omega == 0.0) {
      if (++restarts > 5) break;
      r = b - a * out.x;
      rhat = r;
      p.setZero();
      v.setZero();
      rho = alpha = omega = 1.0;
      continue;
    }
    const double beta = (rho_new / rho) * (alpha / omega);
    rho = rho_new;
    p = r + beta * (p - omega * v);
    y = inv_diag.cwiseProduct(p);
    v = a * y;
    alpha = rho / rhat.dot(v);
    s = r - alpha * v;
    if (s.norm() / bnorm < tol) {
      out.x += alpha * y;
      out.history.push_back(s.norm() / bnorm);
      out.converged = true;
      break;
    }
    z = inv_diag.cwiseProduct(s);
    t = a * z;
    const double tt = t.squaredNorm();
    omega = tt > 0.0 ? t.dot(s) / tt : 0.0;
    out.x += alpha * y + omega * z;
    r = s - omega * t;
    const double rel = r.norm() / bnorm;
    out.history.push_back(rel);
    if (!std::isfinite(rel)) break;
    if (rel < tol) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace

SolveResult solve_dirichlet(const CoeffField& coeff, const ScalarField& f, const ScalarField& g,
                            const SolveOptions& opt) {
  const Grid& grid = coeff.grid();
  if (&f.grid() != &grid || &g.grid() != &grid) {
    throw DomainError("solve_dirichlet: coefficients, f and g must share one grid");
  }
  check_declared(coeff);

  const auto& interior = grid.interior();
  if (!opt.pinned.empty() && opt.pinned.size() != grid.size()) {
    throw DomainError("solve_dirichlet: pinned mask does not match the grid");
  }
  // Unknowns are the interior nodes that are not pinned.
  std::vector<std::size_t> rows;
  std::vector<std::ptrdiff_t> uid(grid.size(), -1);
  rows.reserve(interior.size());
  for (std::size_t id = 0; id < interior.size(); ++id) {
    const std::size_t p = interior[id];
    if (!opt.pinned.empty() && opt.pinned[p]) continue;
    uid[p] = static_cast<std::ptrdiff_t>(rows.size());
    rows.push_back(id);
  }
  const auto nu = static_cast<Eigen::Index>(rows.size());
  if (nu == 0) throw DomainError("solve_dirichlet: no unknowns");
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(rows.size() * (1 + 2 * grid.dim() + 2 * grid.dim() * (grid.dim() - 1)));
  Vec rhs(nu);
  Stencil st;
  std::size_t warnings = 0;
  for (std::size_t row = 0; row < rows.size(); ++row) {
    const std::size_t id = rows[row];
    const std::size_t p = interior[id];
    if (!std::isfinite(f[p])) throw DomainError("solve_dirichlet: f undefined at an interior node");
    stencil_at(grid, coeff.at_interior(id), st);
    double b = f[p];
    bool wrong_sign = false;
    const double scale = std::abs(st[0].second);
    for (const auto& [off, w] : st) {
      const auto q = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(p) + off);
      if (off != 0 && w < -1e-14 * scale) wrong_sign = true;
      if (uid[q] >= 0) {
        trip.emplace_back(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(uid[q]), -w);
      } else {
        if (!std::isfinite(g[q])) throw DomainError("solve_dirichlet: g undefined at a boundary or pinned node");
        b += w * g[q];
      }
    }
    rhs[static_cast<Eigen::Index>(row)] = b;
    warnings += wrong_sign;
  }
  SpMat a(nu, nu);
  a.setFromTriplets(trip.begin(), trip.end());
  a.makeCompressed();

  SolveResult res{ScalarField(f.grid_ptr()), {}, 0, 0.0, {}, rows.size(), warnings};
  Vec x;
  const double bnorm = rhs.norm();
  if (nu < static_cast<Eigen::Index>(opt.direct_limit) && !opt.force_iterative) {
    Eigen::SparseMatrix<double> ac(a);
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.analyzePattern(ac);
    lu.factorize(ac);
    if (lu.info() != Eigen::Success) throw NumericError("sparse LU factorisation failed (singular operator?)");
    x = lu.solve(rhs);
    res.method = "direct";
    res.iterations = 1;
    res.history = {1.0};
  } else {
    const int cap = static_cast<int>(std::ceil(opt.iteration_factor * std::sqrt(static_cast<double>(nu))));
    Krylov k = bicgstab(a, rhs, opt.tol, cap);
    res.method = "bicgstab";
    res.iterations = k.iterations;
    res.history = std::move(k.history);
    if (!k.converged) {
      const double best = *std::min_element(res.history.begin(), res.history.end());
      std::ostringstream os;
      os << "BiCGSTAB stagnated after " << k.iterations << " iterations (best relative residual " << best
         << ")";
      throw NumericError(os.str(), best, res.history);
    }
    x = std::move(k.x);
  }
  res.residual = bnorm > 0.0 ? (rhs - a * x).norm() / bnorm : (a * x).norm();
  if (res.method == "direct") res.history.push_back(res.residual);

  auto& u = res.u;
  for (std::size_t p = 0; p < grid.size(); ++p)
    if (grid.kind(p) == NodeKind::Boundary || (grid.is_interior(p) && uid[p] < 0)) u[p] = g[p];
  for (std::size_t row = 0; row < rows.size(); ++row) u[interior[rows[row]]] = x[static_cast<Eigen::Index>(row)];
  return res;
}

ScalarField boundary_projected(const GridPtr& grid, const std::function<double(const Point&)>& g) {
  ScalarField out(grid);
  const Domain& d = grid->domain();
  const int n = grid->dim();
  for (std::size_t p = 0; p < grid->size(); ++p) {
    if (grid->kind(p) != NodeKind::Boundary) continue;
    Point x = grid->position(p);
    if (d.kind() == Domain::Kind::Ball) {
      double r = 0.0;
      for (int i = 0; i < n; ++i) r += (x[i] - d.center()[i]) * (x[i] - d.center()[i]);
      r = std::sqrt(r);
      if (r > 0.0)
        for (int i = 0; i < n; ++i) x[i] = d.center()[i] + d.radius() * (x[i] - d.center()[i]) / r;
    }
    out[p] = g(x);
  }
  return out;
}

}  // namespace conelab::fd
