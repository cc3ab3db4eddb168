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
#include <string>
#include <utility>
#include <vector>

#include "fd/field.hpp"

namespace conelab::fd {

/// (neighbour offset, weight) pairs of the discrete L at one node; the center
/// entry has offset 0 and comes first.
using Stencil = std::vector<std::pair<std::ptrdiff_t, double>>;

/// Central differences for D_ii and D_i, the four-point cross for D_ij.
void stencil_at(const Grid& grid, const LocalCoeff& lc, Stencil& out);

/// Lu on interior nodes (NaN elsewhere).
ScalarField apply_L(const ScalarField& u, const CoeffField& coeff);

/// Central-difference Hessian on interior nodes (undefined elsewhere).
MatrixField hessian_field(const ScalarField& u);

struct SolveOptions {
  double tol = 1e-10;                 // relative residual |b - Ax| / |b|
  std::size_t direct_limit = 20000;   // unknowns below which the direct solver is used
  double iteration_factor = 50.0;     // cap = factor * sqrt(unknowns)
  bool force_iterative = false;
  /// Interior nodes held at g (an inner Dirichlet set, e.g. to cut out a
  /// neighbourhood of a singular point). Empty = none.
  Mask pinned;
};

struct SolveResult {
  ScalarField u;
  std::string method;
  int iterations = 0;
  double residual = 0.0;
  std::vector<double> history;
  std::size_t unknowns = 0;
  /// Interior rows with an off-diagonal weight of the wrong sign for a
  /// discrete maximum principle.
  std::size_t monotonicity_warnings = 0;
};

/// Solves L u = -f on interior nodes with u = g on boundary and pinned nodes. When the
/// coefficient field declares an ellipticity condition, lambda_chain_check
/// runs at every node first (PreconditionError on failure). NumericError with
/// the residual history when the iteration stagnates.
SolveResult solve_dirichlet(const CoeffField& coeff, const ScalarField& f, const ScalarField& g,
                            const SolveOptions& opt = {});

/// Boundary data for a ball: g evaluated at the radial projection of each
/// boundary node onto the sphere (boxes: at the node itself).
ScalarField boundary_projected(const GridPtr& grid, const std::function<double(const Point&)>& g);

}  // namespace conelab::fd
