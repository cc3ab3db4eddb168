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

#include "green/hessian.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "common/error.hpp"
#include "fd/norms.hpp"
#include "fd/operators.hpp"
#include "symcone/symcone.hpp"

namespace conelab::green {

namespace {

std::string node_label(const fd::Grid& g, std::size_t p) {
  const fd::Point x = g.position(p);
  std::ostringstream os;
  os << "node " << p << " at (";
  for (int i = 0; i < g.dim(); ++i) os << (i ? ", " : "") << x[i];
  os << ")";
  return os.str();
}

// Rounds to 36 mantissa bits so nearly equal spectra share a cache entry.
double coarse(double v) {
  int e = 0;
  const double m = std::frexp(v, &e);
  return std::ldexp(std::nearbyint(std::ldexp(m, 36)), e - 36);
}

bool closed_cone_scaled(const cone::Spectrum& s, int k) {
  const int n = static_cast<int>(s.dim());
  double scale = 0.0;
  for (double v : s.values()) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return true;
  const auto e = cone::elem_sym_all(s.values(), k);
  double sj = 1.0;
  for (int j = 1; j <= k; ++j) {
    sj *= scale;
    if (e[j] / cone::binomial(n, j) < -kContactTol * sj) return false;
  }
  return true;
}

}  // namespace

double fk_pointwise(const cone::SymMatrix& h, cone::ConeIndex k) { return cone::sk_minors(h, k); }

double psi_from_f(double f, double rho_star_a, int n, cone::ConeIndex k) {
  k.check(static_cast<std::size_t>(n));
  if (!(rho_star_a > 0.0)) throw DomainError("psi_from_f: rho* must be positive");
  if (f < 0.0) throw DomainError("psi_from_f: f must be nonnegative");
  return cone::binomial(n, k.value()) * std::pow(f / (n * rho_star_a), k.value());
}

std::string_view to_string(ContactKind kind) { return kind == ContactKind::Upper ? "upper" : "lower"; }

std::size_t ContactMask::count() const { return fd::mask_count(nodes); }

ContactMask contact_mask(const fd::MatrixField& hess, cone::ConeIndex k, ContactKind kind) {
  const fd::Grid& g = hess.grid();
  const int n = g.dim();
  k.check(static_cast<std::size_t>(n));
  ContactMask out{fd::Mask(g.size(), 0), kind, k.value()};
  const double sign = kind == ContactKind::Upper ? -1.0 : 1.0;
  std::vector<double> m(n * n);
  for (std::size_t p : g.interior()) {
    if (!hess.defined(p)) continue;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m[i * n + j] = sign * hess.at(p, i, j);
    out.nodes[p] = closed_cone_scaled(cone::spectrum_of(cone::SymMatrix(n, m)), k.value());
  }
  return out;
}

ContactMask contact_mask(const fd::ScalarField& u, cone::ConeIndex k, ContactKind kind) {
  return contact_mask(fd::hessian_field(u), k, kind);
}

double radial_fk(int n, cone::ConeIndex k, const fd::RadialProfile& prof, double r) {
  k.check(static_cast<std::size_t>(n));
  if (!(r > 0.0)) throw DomainError("radial_fk: r must be positive");
  if (!prof.has_derivatives()) throw DomainError("radial_fk: profile has no derivatives");
  const fd::Quad rq(r);
  const fd::Quad p = prof.qd1(rq) / rq;
  const fd::Quad d2 = prof.qd2(rq);
  const int kk = k.value();
  const fd::Quad a(cone::binomial(n - 1, kk));
  const fd::Quad b(cone::binomial(n - 1, kk - 1));
  const fd::Quad pk1 = pow(p, kk - 1);
  return static_cast<double>(pk1 * (a * p + b * d2));
}

BoundReport BoundReport::make(double lhs, double constant, double norm, std::size_t mask_size) {
  BoundReport r;
  r.lhs = lhs;
  r.constant = constant;
  r.norm = norm;
  r.rhs = constant * norm;
  r.mask_size = mask_size;
  r.margin = r.rhs - r.lhs;
  return r;
}

PreciseCheck precise_bound_check(double uy, const GreenBallSpec& spec, double psi_integral) {
  if (!(psi_integral >= 0.0)) throw DomainError("precise_bound_check: psi integral must be nonnegative");
  const int n = spec.n, k = spec.k.value();
  const double root = std::pow(psi_integral, 1.0 / k);
  PreciseCheck out;
  out.precise = BoundReport::make(-uy, -green_at_center(spec), root, 0);
  out.crude = BoundReport::make(-uy, -green_inf_bound(n, k, 2.0 * spec.R), root, 0);
  return out;
}

fd::ScalarField rho_star_field(const fd::CoeffField& coeff, cone::ConeIndex k) {
  const fd::Grid& g = coeff.grid();
  k.check(static_cast<std::size_t>(g.dim()));
  fd::ScalarField out(coeff.grid_ptr());
  std::map<std::vector<double>, double> cache;
  const auto& interior = g.interior();
  for (std::size_t id = 0; id < interior.size(); ++id) {
    const auto s = cone::spectrum_of(coeff.matrix(id));
    std::vector<double> key(s.values().begin(), s.values().end());
    for (double& v : key) v = coarse(v);
    auto it = cache.find(key);
    if (it == cache.end()) {
      double v = 0.0;
      try {
        const auto rs = cone::rho_star(s, k);
        v = rs.boundary ? 0.0 : rs.value;
      } catch (const DomainError&) {
        throw DomainError("rho*_k undefined (spectrum outside Gamma*_k) at " + node_label(g, interior[id]));
      }
      if (!(v > 0.0)) throw DomainError("rho*_k vanishes at " + node_label(g, interior[id]));
      it = cache.emplace(std::move(key), v).first;
    }
    out[interior[id]] = it->second;
  }
  return out;
}

BoundReport theorem_rhs(const fd::ScalarField& u, const fd::ScalarField& f, const fd::ScalarField& rho_star,
                        double q, const fd::Mask& mask, double constant) {
  const fd::Grid& g = f.grid();
  if (&u.grid() != &g || &rho_star.grid() != &g || mask.size() != g.size())
    throw DomainError("theorem_rhs: fields and mask must share one grid");
  fd::ScalarField ratio(f.grid_ptr());
  for (std::size_t p = 0; p < g.size(); ++p) {
    if (!mask[p]) continue;
    if (!(rho_star[p] > 0.0)) throw DomainError("theorem_rhs: rho*_k <= 0 at " + node_label(g, p));
    ratio[p] = f[p] / rho_star[p];
  }
  const double norm = fd::lq_norm(ratio, q, mask);
  const double lhs = fd::sup_inf_osc(u, g.active_mask()).sup;
  return BoundReport::make(lhs, constant, norm, fd::mask_count(mask));
}

BoundReport theorem_rhs(const fd::ScalarField& u, const fd::ScalarField& f, const fd::CoeffField& coeff,
                        cone::ConeIndex k, double q, const fd::Mask& mask, double constant) {
  return theorem_rhs(u, f, rho_star_field(coeff, k), q, mask, constant);
}

}  // namespace conelab::green
