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

#include "fd/field.hpp"
#include "fd/radial.hpp"
#include "green/green.hpp"
#include "symcone/types.hpp"

namespace conelab::green {

/// F_k of a matrix: the sum of its k x k principal minors.
double fk_pointwise(const cone::SymMatrix& h, cone::ConeIndex k);

/// C(n,k) (f / (n rho*))^k. DomainError for rho* <= 0 or f < 0.
double psi_from_f(double f, double rho_star_a, int n, cone::ConeIndex k);

enum class ContactKind { Upper, Lower };

std::string_view to_string(ContactKind kind);

/// Pointwise surrogate of a k-contact set: interior nodes where the spectrum
/// of D^2 u (lower) or -D^2 u (upper) lies in the closed cone.
struct ContactMask {
  fd::Mask nodes;
  ContactKind kind = ContactKind::Upper;
  int k = 1;

  std::size_t count() const;
};

/// Relative tolerance for closed-cone membership of a Hessian: S_j / C(n,j)
/// may dip to -tol * |H|^j.
inline constexpr double kContactTol = 1e-9;

ContactMask contact_mask(const fd::ScalarField& u, cone::ConeIndex k, ContactKind kind);
ContactMask contact_mask(const fd::MatrixField& hessian, cone::ConeIndex k, ContactKind kind);

/// S_k of the radial Hessian {u''} and {u'/r} (multiplicity n - 1), in quad
/// precision. DomainError for r <= 0.
double radial_fk(int n, cone::ConeIndex k, const fd::RadialProfile& prof, double r);

/// Upper bound paired with the quantity it bounds.
struct BoundReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 0.0;
  double norm = 0.0;
  std::size_t mask_size = 0;
  double margin = 0.0;

  static BoundReport make(double lhs, double constant, double norm, std::size_t mask_size);
  bool holds() const noexcept { return margin >= 0.0; }
};

/// The Green's function estimate -u(y) <= -G_y(y) (int psi)^(1/k) and its
/// diameter-based relaxation.
struct PreciseCheck {
  BoundReport precise;
  BoundReport crude;
};

PreciseCheck precise_bound_check(double uy, const GreenBallSpec& spec, double psi_integral);

/// rho*_k of A at every interior node (NaN elsewhere). DomainError, naming
/// the node, when A leaves Gamma*_k or sits on its boundary.
fd::ScalarField rho_star_field(const fd::CoeffField& coeff, cone::ConeIndex k);

/// rhs = constant * || f / rho*_k(A) ||_{L^q(mask)}, lhs = sup u over the
/// active nodes.
BoundReport theorem_rhs(const fd::ScalarField& u, const fd::ScalarField& f, const fd::CoeffField& coeff,
                        cone::ConeIndex k, double q, const fd::Mask& mask, double constant);
BoundReport theorem_rhs(const fd::ScalarField& u, const fd::ScalarField& f, const fd::ScalarField& rho_star,
                        double q, const fd::Mask& mask, double constant);

}  // namespace conelab::green
