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

#include "fd/radial.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_spline.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>

#include "common/error.hpp"
#include "symcone/symcone.hpp"

namespace conelab::fd {

struct RadialProfile::Spline {
  std::vector<double> r, u;
  gsl_spline* s = nullptr;
  ~Spline() {
    if (s) gsl_spline_free(s);
  }
};

RadialProfile RadialProfile::closed(std::string name, Fn u, Fn du, Fn d2u, double r_min, double r_max,
                                    std::vector<double> breakpoints) {
  if (!u) throw DomainError("radial profile needs a value function");
  if (!(r_min >= 0.0) || !(r_max > r_min)) throw DomainError("radial profile needs 0 <= r_min < r_max");
  RadialProfile p;
  p.name_ = std::move(name);
  p.u_ = std::move(u);
  p.du_ = std::move(du);
  p.d2u_ = std::move(d2u);
  p.r_min_ = r_min;
  p.r_max_ = r_max;
  std::sort(breakpoints.begin(), breakpoints.end());
  p.breaks_ = std::move(breakpoints);
  return p;
}

RadialProfile RadialProfile::tabulated(std::vector<double> r, std::vector<double> u) {
  if (r.size() != u.size() || r.size() < 3) throw DomainError("tabulated profile needs >= 3 matching samples");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!std::isfinite(r[i]) || !std::isfinite(u[i])) throw DomainError("tabulated profile has non-finite samples");
    if (r[i] <= 0.0 || (i > 0 && !(r[i] > r[i - 1])))
      throw DomainError("tabulated radii must be positive and increasing");
  }
  gsl_set_error_handler_off();
  auto sp = std::make_shared<Spline>();
  sp->r = std::move(r);
  sp->u = std::move(u);
  sp->s = gsl_spline_alloc(gsl_interp_cspline, sp->r.size());
  gsl_spline_init(sp->s, sp->r.data(), sp->u.data(), sp->r.size());
  RadialProfile p;
  p.name_ = "tabulated";
  p.r_min_ = sp->r.front();
  p.r_max_ = sp->r.back();
  p.spline_ = std::move(sp);
  return p;
}

namespace {

double spline_eval(const gsl_spline* s, double r, int order) {
  double out = 0.0;
  int status = 0;
  switch (order) {
    case 0: status = gsl_spline_eval_e(s, r, nullptr, &out); break;
    case 1: status = gsl_spline_eval_deriv_e(s, r, nullptr, &out); break;
    default: status = gsl_spline_eval_deriv2_e(s, r, nullptr, &out); break;
  }
  if (status != GSL_SUCCESS) throw DomainError("radius outside the tabulated range");
  return out;
}

}  // namespace

Quad RadialProfile::qvalue(Quad r) const {
  if (spline_) return Quad(spline_eval(spline_->s, static_cast<double>(r), 0));
  return u_(r);
}

Quad RadialProfile::qd1(Quad r) const {
  if (spline_) return Quad(spline_eval(spline_->s, static_cast<double>(r), 1));
  if (!du_) throw UnsupportedError("profile '" + name_ + "' carries no first derivative");
  return du_(r);
}

Quad RadialProfile::qd2(Quad r) const {
  if (spline_) return Quad(spline_eval(spline_->s, static_cast<double>(r), 2));
  if (!d2u_) throw UnsupportedError("profile '" + name_ + "' carries no second derivative");
  return d2u_(r);
}

std::vector<double> RadialProfile::samples(std::size_t m, double lo, double hi) const {
  const double a = std::max(r_min_, lo);
  const double b = std::min(r_max_, hi);
  if (!(b >= a)) throw DomainError("sample range outside the profile range");
  std::vector<double> out(m);
  if (m == 1) {
    out[0] = a;
    return out;
  }
  for (std::size_t i = 0; i < m; ++i) out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(m - 1);
  return out;
}

// ---------------------------------------------------------------------------

RadialOperator RadialOperator::with_beta(int n, double beta) {
  if (n < 1) throw DomainError("radial operator needs n >= 1");
  if (!std::isfinite(beta)) throw DomainError("radial operator needs a finite beta");
  return {n, Quad(beta)};
}

RadialOperator RadialOperator::gilbarg_serrin(int n, double alpha) {
  if (n < 1) throw DomainError("radial operator needs n >= 1");
  if (!(alpha < 1.0)) throw DomainError("Gilbarg-Serrin exponent must satisfy alpha < 1");
  return {n, Quad(-1) + Quad(n - 1) / (Quad(1) - Quad(alpha))};
}

RadialProfile radial_apply(const RadialOperator& op, const RadialProfile& prof) {
  if (!prof.has_derivatives() && !prof.is_tabulated()) {
    throw UnsupportedError("radial_apply needs a profile with derivatives");
  }
  const Quad one_plus_beta = Quad(1) + op.beta;
  const Quad nm1 = Quad(op.n - 1);
  auto lu = [prof, one_plus_beta, nm1](Quad r) -> Quad {
    if (!(r > 0)) throw DomainError("radial operator evaluated at r <= 0");
    return one_plus_beta * prof.qd2(r) + nm1 * prof.qd1(r) / r;
  };
  return RadialProfile::closed("L(" + prof.name() + ")", lu, {}, {}, prof.r_min(), prof.r_max(),
                               prof.breakpoints());
}

RadialProfile radial_apply(int n, double beta, const RadialProfile& prof) {
  return radial_apply(RadialOperator::with_beta(n, beta), prof);
}

double sphere_area(int n, double r) { return n * cone::unit_ball_volume(n) * std::pow(r, n - 1); }

namespace {

struct NormThunk {
  const RadialProfile* prof;
  int n;
  double q;
  double area;
  std::exception_ptr error;
};

double norm_integrand(double r, void* params) {
  auto* t = static_cast<NormThunk*>(params);
  if (t->error) return 0.0;
  try {
    return std::pow(std::abs(t->prof->value(r)), t->q) * t->area * std::pow(r, t->n - 1);
  } catch (...) {
    t->error = std::current_exception();
    return 0.0;
  }
}

struct WorkspaceDel {
  void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};

}  // namespace

double radial_lq_norm(const RadialProfile& prof, int n, double q, double r0, double r1) {
  if (!(q >= 1.0) || !std::isfinite(q)) throw DomainError("radial L^q norm needs finite q >= 1");
  if (!(r0 >= 0.0) || !(r1 > r0)) throw DomainError("radial L^q norm needs 0 <= r0 < r1");
  gsl_set_error_handler_off();
  NormThunk thunk{&prof, n, q, n * cone::unit_ball_volume(n), nullptr};
  gsl_function fn{&norm_integrand, &thunk};
  std::vector<double> pts{r0};
  for (double b : prof.breakpoints())
    if (b > r0 && b < r1) pts.push_back(b);
  pts.push_back(r1);

  constexpr std::size_t kLimit = 4000;
  std::unique_ptr<gsl_integration_workspace, WorkspaceDel> ws(gsl_integration_workspace_alloc(kLimit));
  double result = 0.0, abserr = 0.0;
  const int status = gsl_integration_qagp(&fn, pts.data(), pts.size(), 0.0, 1e-11, kLimit, ws.get(), &result,
                                          &abserr);
  if (thunk.error) std::rethrow_exception(thunk.error);
  const double rel = result != 0.0 ? abserr / std::abs(result) : abserr;
  if ((status != GSL_SUCCESS && rel > 1e-9) || !std::isfinite(result)) {
    std::ostringstream os;
    os << "radial quadrature failed: " << gsl_strerror(status) << " (estimated relative error " << rel << ")";
    throw NumericError(os.str(), result);
  }
  return std::pow(result, 1.0 / q);
}

// ---------------------------------------------------------------------------

RadialProfile profile_power(double alpha, double scale) {
  const Quad a(alpha), s(scale);
  std::ostringstream name;
  name << "r^" << alpha;
  return RadialProfile::closed(
      name.str(), [a, s](Quad r) { return s * pow(r, a); },
      [a, s](Quad r) { return s * a * pow(r, a - 1); },
      [a, s](Quad r) { return s * a * (a - 1) * pow(r, a - 2); }, 0.0, 1e300);
}

RadialProfile profile_log() {
  return RadialProfile::closed(
      "log r", [](Quad r) { return log(r); }, [](Quad r) { return 1 / r; },
      [](Quad r) { return -1 / (r * r); }, 0.0, 1e300);
}

RadialProfile profile_half_r2() {
  return RadialProfile::closed(
      "r^2/2", [](Quad r) { return r * r / 2; }, [](Quad r) { return r; }, [](Quad) { return Quad(1); },
      0.0, 1e300);
}

RadialProfile profile_constant(double c) {
  const Quad v(c);
  return RadialProfile::closed(
      "const", [v](Quad) { return v; }, [](Quad) { return Quad(0); }, [](Quad) { return Quad(0); }, 0.0,
      1e300);
}

RadialProfile profile_mollified_power(double alpha, double eps) {
  if (!(eps > 0.0)) throw DomainError("mollifier radius must be positive");
  const Quad a(alpha), e(eps);
  const Quad core2 = a / 2 * pow(e, a - 2);
  const Quad core0 = (1 - a / 2) * pow(e, a);
  std::ostringstream name;
  name << "r^" << alpha << " mollified at " << eps;
  return RadialProfile::closed(
      name.str(), [=](Quad r) { return r < e ? core2 * r * r + core0 : pow(r, a); },
      [=](Quad r) { return r < e ? 2 * core2 * r : a * pow(r, a - 1); },
      [=](Quad r) { return r < e ? 2 * core2 : a * (a - 1) * pow(r, a - 2); }, 0.0, 1e300, {eps});
}

RadialProfile profile_mollified_log(double eps) {
  if (!(eps > 0.0)) throw DomainError("mollifier radius must be positive");
  const Quad e(eps);
  const Quad base = log(e) - Quad(1) / 2;
  std::ostringstream name;
  name << "log r mollified at " << eps;
  return RadialProfile::closed(
      name.str(), [=](Quad r) { return r < e ? r * r / (2 * e * e) + base : log(r); },
      [=](Quad r) { return r < e ? r / (e * e) : 1 / r; },
      [=](Quad r) { return r < e ? 1 / (e * e) : -1 / (r * r); }, 0.0, 1e300, {eps});
}

RadialProfile profile_affine(double a, double b, const RadialProfile& u) {
  const Quad qa(a), qb(b);
  RadialProfile::Fn du, d2u;
  if (u.has_derivatives() || u.is_tabulated()) {
    du = [u, qb](Quad r) { return qb * u.qd1(r); };
    d2u = [u, qb](Quad r) { return qb * u.qd2(r); };
  }
  std::ostringstream name;
  name << a << " + " << b << "*(" << u.name() << ")";
  return RadialProfile::closed(
      name.str(), [u, qa, qb](Quad r) { return qa + qb * u.qvalue(r); }, du, d2u, u.r_min(), u.r_max(),
      u.breakpoints());
}

}  // namespace conelab::fd
