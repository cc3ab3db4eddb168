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

#include <span>
#include <vector>

#include "fd/radial.hpp"
#include "symcone/types.hpp"

namespace conelab::green {

/// Ball B_R(y) with the Hessian index k; requires 2k >= n.
struct GreenBallSpec {
  int n = 3;
  cone::ConeIndex k{2};
  double R = 1.0;
  std::vector<double> y;

  /// Validated constructor. y defaults to the origin. ConfigError for a bad
  /// radius or center, UnsupportedError when 2k < n.
  static GreenBallSpec make(int n, int k, double R, std::vector<double> y = {});

  /// k = n/2: the logarithmic branch.
  bool log_branch() const noexcept { return 2 * k.value() == n; }
};

/// [C(n,k) omega_n]^(1/k).
double green_normalizer(int n, int k);

/// Green's function of F_k for the ball, vanishing on the sphere. The log
/// branch uses log(|x-y|/R) and is -inf at the center. DomainError outside
/// the closed ball.
double green_ball(const GreenBallSpec& spec, std::span<const double> x);

/// G_y(y). UnsupportedError on the log branch.
double green_at_center(const GreenBallSpec& spec);

/// The same function as a profile in r = |x - y| on (0, R].
fd::RadialProfile green_profile(const GreenBallSpec& spec);

/// Lower bound for inf G_y over a domain of the given diameter, k > n/2.
double green_inf_bound(int n, int k, double diam);

/// diam^(2-n/k) / (n (2-n/k) omega_n^(1/k)), k > n/2.
double abp_constant(int n, int k, double diam);

/// (1/n) C(n,k)^(1/k) (-G_y(y)) for the ball of radius R with y at the center.
double best_constant_ball(int n, int k, double R);

}  // namespace conelab::green
