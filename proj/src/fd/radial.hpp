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

#include <boost/multiprecision/float128.hpp>

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace conelab::fd {

using Quad = boost::multiprecision::float128;

/// Rotationally symmetric profile u(r) with u', u''. Closed forms evaluate in
/// quad precision; tabulated profiles use a cubic spline.
class RadialProfile {
 public:
  using Fn = std::function<Quad(Quad)>;

  /// du or d2u may be empty when the profile carries values only.
  static RadialProfile closed(std::string name, Fn u, Fn du, Fn d2u, double r_min, double r_max,
                              std::vector<double> breakpoints = {});
  /// Natural cubic spline through increasing positive samples.
  static RadialProfile tabulated(std::vector<double> r, std::vector<double> u);

  const std::string& name() const noexcept { return name_; }
  double r_min() const noexcept { return r_min_; }
  double r_max() const noexcept { return r_max_; }
  /// Points inside (r_min, r_max) where the profile is not smooth.
  const std::vector<double>& breakpoints() const noexcept { return breaks_; }
  bool has_derivatives() const noexcept { return static_cast<bool>(du_) && static_cast<bool>(d2u_); }
  bool is_tabulated() const noexcept { return static_cast<bool>(spline_); }

  Quad qvalue(Quad r) const;
  Quad qd1(Quad r) const;
  Quad qd2(Quad r) const;
  double value(double r) const { return static_cast<double>(qvalue(Quad(r))); }
  double d1(double r) const { return static_cast<double>(qd1(Quad(r))); }
  double d2(double r) const { return static_cast<double>(qd2(Quad(r))); }

  /// m equally spaced radii on [lo, hi] clipped to the profile range.
  std::vector<double> samples(std::size_t m, double lo, double hi) const;

 private:
  struct Spline;
  std::string name_;
  Fn u_, du_, d2u_;
  std::shared_ptr<const Spline> spline_;
  double r_min_ = 0.0;
  double r_max_ = 0.0;
  std::vector<double> breaks_;
};

/// Radial form of L = (delta_ij + beta x_i x_j / |x|^2) D_ij in dimension n.
struct RadialOperator {
  int n = 2;
  Quad beta = 0;

  static RadialOperator with_beta(int n, double beta);
  /// beta = -1 + (n-1)/(1-alpha), formed in quad precision.
  static RadialOperator gilbarg_serrin(int n, double alpha);
};

/// L u(r) = (1 + beta) u'' + (n - 1) u' / r. The result carries values only;
/// evaluating it at r <= 0 is a DomainError.
RadialProfile radial_apply(const RadialOperator& op, const RadialProfile& prof);
RadialProfile radial_apply(int n, double beta, const RadialProfile& prof);

/// (integral over r0 < |x| < r1 of |u|^q dx)^(1/q) by adaptive quadrature
/// (relative error 1e-8 or better). NumericError when quadrature fails.
double radial_lq_norm(const RadialProfile& prof, int n, double q, double r0, double r1);

/// n omega_n r^(n-1), the area of the sphere of radius r.
double sphere_area(int n, double r);

// Closed-form families.
RadialProfile profile_power(double alpha, double scale = 1.0);
RadialProfile profile_log();
RadialProfile profile_half_r2();
RadialProfile profile_constant(double c);
/// r^alpha outside B_eps, matched C^1 by a quadratic core
/// (alpha/2) eps^(alpha-2) r^2 + (1 - alpha/2) eps^alpha.
RadialProfile profile_mollified_power(double alpha, double eps);
/// log r outside B_eps, r^2 / (2 eps^2) + log eps - 1/2 inside.
RadialProfile profile_mollified_log(double eps);
/// a + b u.
RadialProfile profile_affine(double a, double b, const RadialProfile& u);

}  // namespace conelab::fd
