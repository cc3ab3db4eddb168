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

#include <cstdint>
#include <span>
#include <vector>

#include "symcone/types.hpp"

/// Elementary symmetric functions S_k, the Garding cones Gamma_k, their duals
/// Gamma*_k, and the normalised functions rho_k and rho*_k.
namespace conelab::cone {

double binomial(int n, int k);

/// Volume of the unit n-ball.
double unit_ball_volume(int n);

/// S_0..S_kmax of the given values. Order-sensitive in the last bits; callers
/// needing exact permutation invariance sort first.
std::vector<double> elem_sym_all(std::span<const double> values, int kmax);

double elem_sym(const Spectrum& lambda, ConeIndex k);

/// (S_k / C(n,k))^(1/k). DomainError when S_k < 0.
double rho_k(const Spectrum& lambda, ConeIndex k);

/// Membership of Gamma_k (open) or its closure. Margin is min_j S_j/C(n,j).
ConeVerdict in_cone(const Spectrum& lambda, ConeIndex k, bool closed);

struct DualOptions {
  std::uint64_t seed = 0x5eedULL;
  int samples = 0;  // 0 picks a default from n
};

/// Membership of Gamma*_k. Margin is inf{ lambda.mu : mu in Gamma_k, |mu| = 1 };
/// closed forms for k in {1, 2, n}, sector search otherwise.
ConeVerdict in_dual_cone(const Spectrum& lambda, ConeIndex k);

/// The sector search behind in_dual_cone, without closed-form dispatch.
double dual_margin_numeric(const Spectrum& lambda, ConeIndex k, const DualOptions& opt = {});

/// Closed-form margins, exposed for cross-checks.
double dual_margin_closed_k1(const Spectrum& lambda);
double dual_margin_closed_k2(const Spectrum& lambda);
double dual_margin_closed_kn(const Spectrum& lambda);

/// rho*_k. DomainError outside Gamma*_k; clamps to 0 with boundary = true on
/// the boundary.
RhoStar rho_star(const Spectrum& lambda, ConeIndex k);

/// Optimiser path for rho*_k (sampling, simplex polish, Lagrange-Newton),
/// without closed-form dispatch. k = 1 still uses the ray formula since the
/// feasible slice is unbounded there.
RhoStar rho_star_numeric(const Spectrum& lambda, ConeIndex k, const DualOptions& opt = {});

/// rho*_2 from the closed form (sum^2 - (n-1)|lambda|^2)^(1/2) / sqrt(n).
double rho_star_closed_k2(const Spectrum& lambda);

/// Brute-force upper bound on rho*_k: random sampling of the sorted slice of
/// Gamma_k, half global and half in shrinking clouds around the best point.
double rho_star_oracle(const Spectrum& lambda, ConeIndex k, std::uint64_t samples,
                       std::uint64_t seed = 1);

/// k(n-1) mu_i + (n-k) sum_{j != i} mu_j >= 0 for every i.
ConeVerdict mui_necessary(const Spectrum& mu, ConeIndex k);

/// (1, ..., 1, (n-1)/(1-alpha)). DomainError for alpha >= 1.
Spectrum gs_spectrum(int n, double alpha);

/// Eigenvalues by cyclic Jacobi rotations, sorted descending.
Spectrum spectrum_of(const SymMatrix& a);

/// Sum of the k x k principal minors.
double sk_minors(const SymMatrix& a, ConeIndex k);

/// Gamma*_2 membership through || (n-1)/tr(A) A - I || <= 1.
ConeVerdict gamma2_star_matrix_test(const SymMatrix& a);

struct ChainCheck {
  bool holds = false;
  double slack_det = 0.0;  // lambda_min - lambda_max^(1-n) det A
  double slack_a0 = 0.0;   // lambda_min - a0^(1-n) rho0^n
};

/// Uniform-ellipticity chain implied by rho*_k(A) >= rho0, |A| <= a0.
/// PreconditionError when either bound fails or rho0 <= 0.
ChainCheck lambda_chain_check(const SymMatrix& a, ConeIndex k, double a0, double rho0);

}  // namespace conelab::cone
