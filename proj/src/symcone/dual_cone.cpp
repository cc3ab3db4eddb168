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

// Dual cone Gamma*_k and rho*_k.
//
// Both quantities are infima of lambda.mu over Gamma_k. With lambda sorted
// descending the infimum is attained with mu sorted ascending, so every
// search below samples ascending directions only. Directions live in the
// hyperplane orthogonal to e = (1,...,1)/sqrt(n); a direction v meets the
// boundary of Gamma_k at e + s*(v) v, found by bisection on the (convex, hence
// ray-monotone) closed-cone membership test.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <random>
#include <sstream>

#include "common/error.hpp"
#include "common/simplex.hpp"
#include "symcone/kernels.hpp"
#include "symcone/symcone.hpp"

namespace conelab::cone {

namespace {

using detail::Esym;
using detail::kMaxDim;

constexpr double kPenalty = 1e300;

struct Sector {
  int n = 0;
  int k = 0;
  double e = 0.0;                  // each component of the unit diagonal
  std::vector<double> basis;       // n x (n-1), column-major: orthonormal basis of 1-perp
  double s_cap = 0.0;              // exit parameter of Gamma_2, an upper bound for k >= 2

  Sector(int n_, int k_) : n(n_), k(k_), e(1.0 / std::sqrt(static_cast<double>(n_))) {
    if (n > kMaxDim) {
      throw UnsupportedError("dual-cone search supports n <= " + std::to_string(kMaxDim));
    }
    basis.assign(static_cast<std::size_t>(n) * (n - 1), 0.0);
    for (int j = 1; j < n; ++j) {
      const double norm = std::sqrt(static_cast<double>(j) * (j + 1));
      double* col = &basis[static_cast<std::size_t>(j - 1) * n];
      for (int i = 0; i < j; ++i) col[i] = 1.0 / norm;
      col[j] = -static_cast<double>(j) / norm;
    }
    s_cap = std::sqrt(static_cast<double>(n - 1));
  }

  std::span<const double> column(int j) const {
    return {&basis[static_cast<std::size_t>(j) * n], static_cast<std::size_t>(n)};
  }
};

/// Largest s with e + s v in the closure of Gamma_k (infinite for k = 1).
double exit_param(const Sector& sec, std::span<const double> v) {
  if (sec.k == 1) return std::numeric_limits<double>::infinity();
  std::array<double, kMaxDim> mu{};
  auto inside = [&](double s) {
    for (int i = 0; i < sec.n; ++i) mu[i] = sec.e + s * v[i];
    return detail::closed_member(mu.data(), sec.n, sec.k);
  };
  double lo = 0.0;
  double hi = sec.s_cap * (1.0 + 1e-9);
  if (inside(hi)) return hi;
  while (hi - lo > 4e-16 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (inside(mid)) lo = mid;
    else hi = mid;
  }
  return lo;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void normalize(std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  s = std::sqrt(s);
  for (double& x : v) x /= s;
}

/// Random unit vector in 1-perp with ascending entries.
std::vector<double> random_ascending_direction(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> v(n);
  double norm = 0.0;
  while (norm < 1e-8) {
    double mean = 0.0;
    for (double& x : v) {
      x = gauss(rng);
      mean += x;
    }
    mean /= n;
    norm = 0.0;
    for (double& x : v) {
      x -= mean;
      norm += x * x;
    }
    norm = std::sqrt(norm);
  }
  std::sort(v.begin(), v.end());
  for (double& x : v) x /= norm;
  return v;
}

/// min over mu in closure(Gamma_k) on the arc from e towards v of lambda.mu/|mu|.
double arc_minimum(const Sector& sec, std::span<const double> lam, std::span<const double> v,
                   double* s_at = nullptr) {
  const double a = sec.e * std::accumulate(lam.begin(), lam.end(), 0.0);
  const double b = dot(lam, v);
  const double s_exit = exit_param(sec, v);
  auto f = [&](double s) { return (a + s * b) / std::sqrt(1.0 + s * s); };
  double best = a;
  double where = 0.0;
  const double at_exit = std::isinf(s_exit) ? b : f(s_exit);
  if (at_exit < best) {
    best = at_exit;
    where = s_exit;
  }
  if (a < 0.0 && b < 0.0) {
    const double sc = b / a;
    if (sc <= s_exit && f(sc) < best) {
      best = f(sc);
      where = sc;
    }
  }
  if (s_at) *s_at = where;
  return best;
}

/// Orthonormal basis of {1, v0}-perp, n x (n-2), column-major.
std::vector<double> tangent_basis(const Sector& sec, std::span<const double> v0) {
  const int n = sec.n;
  std::vector<std::vector<double>> cols;
  for (int j = 0; j < n - 1; ++j) {
    auto c = sec.column(j);
    std::vector<double> w(c.begin(), c.end());
    double p = dot(w, v0);
    for (int i = 0; i < n; ++i) w[i] -= p * v0[i];
    for (const auto& q : cols) {
      const double r = dot(w, q);
      for (int i = 0; i < n; ++i) w[i] -= r * q[i];
    }
    double norm = std::sqrt(dot(w, w));
    if (norm > 1e-6) {
      for (double& x : w) x /= norm;
      cols.push_back(std::move(w));
    }
    if (static_cast<int>(cols.size()) == n - 2) break;
  }
  std::vector<double> out;
  for (const auto& c : cols) out.insert(out.end(), c.begin(), c.end());
  return out;
}

std::vector<double> chart_point(std::span<const double> v0, std::span<const double> tangent,
                                std::span<const double> z, int n) {
  std::vector<double> v(v0.begin(), v0.end());
  for (std::size_t j = 0; j < z.size(); ++j)
    for (int i = 0; i < n; ++i) v[i] += z[j] * tangent[j * n + i];
  normalize(v);
  return v;
}

struct Candidate {
  double value;
  std::vector<double> v;
  double s;
};

void keep_best(std::vector<Candidate>& best, Candidate c, std::size_t cap) {
  if (best.size() == cap && c.value >= best.back().value) return;
  best.push_back(std::move(c));
  std::sort(best.begin(), best.end(),
            [](const Candidate& x, const Candidate& y) { return x.value < y.value; });
  if (best.size() > cap) best.resize(cap);
}

std::vector<double> sorted_desc(const Spectrum& s) {
  std::vector<double> v(s.values().begin(), s.values().end());
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

int default_samples(int n) { return 64 + 48 * n; }

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Partial derivatives of S_k through S_{k-1}, S_{k-2} of the reduced vectors.
void sk_gradient(const Vec& m, int k, Vec& g) {
  const int n = static_cast<int>(m.size());
  g.resize(n);
  for (int i = 0; i < n; ++i) g[i] = detail::esym_without(m.data(), n, k - 1, i, -1);
}

void sk_hessian(const Vec& m, int k, Mat& h) {
  const int n = static_cast<int>(m.size());
  h.setZero(n, n);
  if (k < 2) return;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double v = detail::esym_without(m.data(), n, k - 2, i, j);
      h(i, j) = v;
      h(j, i) = v;
    }
  }
}

double sk_value(const Vec& m, int k) {
  Esym e;
  detail::esym(m.data(), static_cast<int>(m.size()), k, e);
  return e[k];
}

/// Newton solve of the boundary KKT system lambda = c grad S_k(mu) + nu mu,
/// S_k(mu) = 0, |mu| = 1, for which lambda.mu = nu. Returns the polished
/// value when the iterate settles on an admissible point of the closed cone.
std::optional<double> margin_polish(std::span<const double> lam, int k, Vec mu) {
  const int n = static_cast<int>(lam.size());
  Vec lv(n);
  for (int i = 0; i < n; ++i) lv[i] = lam[i];
  const double lscale = std::max(1.0, lv.norm());

  Vec g;
  Mat h;
  sk_gradient(mu, k, g);
  double nu = lv.dot(mu);
  double c = g.squaredNorm() > 0.0 ? (lv - nu * mu).dot(g) / g.squaredNorm() : 0.0;

  auto residual = [&](const Vec& m, double cc, double nn, Vec& r) {
    Vec gg;
    sk_gradient(m, k, gg);
    const double gs = std::max(1.0, gg.norm());
    r.resize(n + 2);
    r.head(n) = cc * gg + nn * m - lv;
    r[n] = sk_value(m, k) / gs;
    r[n + 1] = 0.5 * (m.squaredNorm() - 1.0);
    return r.cwiseAbs().maxCoeff();
  };
  Vec r;
  double rnorm = residual(mu, c, nu, r);
  for (int it = 0; it < 40 && rnorm > 1e-15 * lscale; ++it) {
    sk_gradient(mu, k, g);
    sk_hessian(mu, k, h);
    const double gs = std::max(1.0, g.norm());
    Mat jac = Mat::Zero(n + 2, n + 2);
    jac.topLeftCorner(n, n) = c * h + nu * Mat::Identity(n, n);
    jac.block(0, n, n, 1) = g;
    jac.block(0, n + 1, n, 1) = mu;
    jac.block(n, 0, 1, n) = g.transpose() / gs;
    jac.block(n + 1, 0, 1, n) = mu.transpose();
    const Vec step = jac.fullPivLu().solve(-r);
    if (!step.allFinite()) return std::nullopt;
    double t = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 30; ++ls) {
      const Vec trial = mu + t * step.head(n);
      const double tc = c + t * step[n];
      const double tn_ = nu + t * step[n + 1];
      Vec tr;
      const double tn = residual(trial, tc, tn_, tr);
      if (tn < rnorm) {
        mu = trial;
        c = tc;
        nu = tn_;
        r = tr;
        rnorm = tn;
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;
  }
  if (!(rnorm <= 1e-11 * lscale) || c < 0.0) return std::nullopt;
  // the point must lie in the closed cone, up to round-off
  Esym e;
  detail::esym(mu.data(), n, k, e);
  for (int j = 1; j < k; ++j)
    if (e[j] < -1e-10) return std::nullopt;
  return lv.dot(mu) / mu.norm();
}

}  // namespace

// ---------------------------------------------------------------------------
// Membership margins

double dual_margin_closed_k1(const Spectrum& lambda) {
  const double n = static_cast<double>(lambda.dim());
  const double a = lambda.sum() / std::sqrt(n);
  const double mean = lambda.sum() / n;
  double perp = 0.0;
  for (double x : lambda.values()) perp += (x - mean) * (x - mean);
  perp = std::sqrt(perp);
  if (a >= 0.0) return std::min(a, -perp);
  return -lambda.norm();
}

double dual_margin_closed_k2(const Spectrum& lambda) {
  const double n = static_cast<double>(lambda.dim());
  const double norm = lambda.norm();
  if (norm == 0.0) return 0.0;
  const double cos_phi = std::clamp(lambda.sum() / (std::sqrt(n) * norm), -1.0, 1.0);
  const double phi = std::acos(cos_phi);
  const double half_angle = std::acos(1.0 / std::sqrt(n));
  return norm * std::cos(std::min(phi + half_angle, M_PI));
}

double dual_margin_closed_kn(const Spectrum& lambda) {
  double mn = std::numeric_limits<double>::infinity();
  double neg = 0.0;
  for (double x : lambda.values()) {
    mn = std::min(mn, x);
    if (x < 0.0) neg += x * x;
  }
  return mn >= 0.0 ? mn : -std::sqrt(neg);
}

namespace {

double margin_search(std::span<const double> lam, int k, const DualOptions& opt) {
  const int n = static_cast<int>(lam.size());
  const Sector sec(n, k);
  const double a = sec.e * std::accumulate(lam.begin(), lam.end(), 0.0);

  if (n == 2) {
    const std::vector<double> v{-1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
    return std::min(a, arc_minimum(sec, lam, v));
  }

  std::mt19937_64 rng(opt.seed);
  const int samples = opt.samples > 0 ? opt.samples : default_samples(n);
  std::vector<Candidate> best;
  for (int i = 0; i < samples; ++i) {
    auto v = random_ascending_direction(n, rng);
    const double val = arc_minimum(sec, lam, v);
    keep_best(best, Candidate{val, std::move(v), 0.0}, 2);
  }

  double result = a;
  std::vector<double> best_v = best.front().v;
  auto descend = [&](const std::vector<double>& start, double val, double step, double tol) {
    const auto tangent = tangent_basis(sec, start);
    auto obj = [&](std::span<const double> z) {
      return arc_minimum(sec, lam, chart_point(start, tangent, z, n));
    };
    const std::vector<double> z0(static_cast<std::size_t>(n - 2), 0.0);
    const auto res = simplex_minimize(obj, z0, step, tol, 2000);
    if (res.value <= val) val = res.value;
    if (val < result) {
      result = val;
      best_v = res.value <= val ? chart_point(start, tangent, res.x, n) : start;
    }
  };
  for (const auto& start : best) descend(start.v, start.value, 0.2, 1e-6);

  // Boundary KKT polish from the best arc endpoint.
  bool polished = false;
  double s_at = 0.0;
  arc_minimum(sec, lam, best_v, &s_at);
  if (s_at > 0.0 && std::isfinite(s_at) && s_at == exit_param(sec, best_v)) {
    Vec mu(n);
    for (int i = 0; i < n; ++i) mu[i] = sec.e + s_at * best_v[i];
    mu /= mu.norm();
    if (const auto v = margin_polish(lam, k, mu)) {
      result = std::min(result, *v);
      polished = true;
    }
  } else if (s_at != 0.0) {
    polished = true;  // interior critical point of the arc, exact
  }
  if (!polished) descend(best_v, result, 0.02, 1e-10);

  // Face mu_1 = 0: there S_j(mu) = S_j(mu_2..mu_n), so the face minimum is the
  // margin of the reduced spectrum for the cone of index min(k, n - 1).
  if (k >= 2) {
    result = std::min(result, margin_search(lam.subspan(1), std::min(k, n - 1), opt));
  }
  return std::min(a, result);
}

}  // namespace

double dual_margin_numeric(const Spectrum& lambda, ConeIndex k, const DualOptions& opt) {
  k.check(lambda.dim());
  const auto lam = sorted_desc(lambda);
  return margin_search(lam, k.value(), opt);
}

ConeVerdict in_dual_cone(const Spectrum& lambda, ConeIndex k) {
  k.check(lambda.dim());
  const int n = static_cast<int>(lambda.dim());
  ConeVerdict out;
  out.k = k.value();
  out.variant = ConeVariant::Dual;
  out.tol = kMembershipTol * std::max(1.0, lambda.norm());
  if (k.value() == 1) {
    out.margin = dual_margin_closed_k1(lambda);
  } else if (k.value() == 2) {
    out.margin = dual_margin_closed_k2(lambda);
  } else if (k.value() == n) {
    out.margin = dual_margin_closed_kn(lambda);
  } else {
    out.margin = dual_margin_numeric(lambda, k);
  }
  out.member = out.margin >= -out.tol;
  return out;
}

// ---------------------------------------------------------------------------
// rho*_k

double rho_star_closed_k2(const Spectrum& lambda) {
  const double n = static_cast<double>(lambda.dim());
  const double s = lambda.sum();
  const double q = s * s - (n - 1.0) * lambda.norm() * lambda.norm();
  return std::sqrt(std::max(q, 0.0)) / std::sqrt(n);
}

namespace {

RhoStar ray_value(const Spectrum& lambda) {
  const auto v = lambda.values();
  if (std::all_of(v.begin(), v.end(), [&](double x) { return x == v[0]; })) {
    return {std::max(v[0], 0.0), v[0] <= 0.0};
  }
  const double mean = lambda.sum() / static_cast<double>(lambda.dim());
  return {std::max(mean, 0.0), mean <= 0.0};
}

void require_dual_member(const ConeVerdict& verdict, const Spectrum& lambda) {
  if (!verdict.member) {
    std::ostringstream os;
    os << "rho*_" << verdict.k << " undefined: spectrum outside the dual cone (margin "
       << verdict.margin << ")";
    throw DomainError(os.str());
  }
  (void)lambda;
}

/// Newton solve of lambda = c grad S_k(mu), S_k(mu) = C(n,k). Returns false
/// when the iteration does not settle on an admissible critical point.
bool lagrange_polish(std::span<const double> lam, int k, Vec& mu) {
  const int n = static_cast<int>(lam.size());
  const double target = binomial(n, k);
  Vec lv(n);
  for (int i = 0; i < n; ++i) lv[i] = lam[i];
  const double lscale = lv.cwiseAbs().maxCoeff() + target;

  Vec g;
  Mat h;
  sk_gradient(mu, k, g);
  double c = lv.dot(g) / g.dot(g);
  auto residual = [&](const Vec& m, double cc, Vec& r) {
    Vec gg;
    sk_gradient(m, k, gg);
    r.resize(n + 1);
    r.head(n) = cc * gg - lv;
    r[n] = sk_value(m, k) - target;
    return r.cwiseAbs().maxCoeff();
  };
  Vec r;
  double rnorm = residual(mu, c, r);
  for (int it = 0; it < 60 && rnorm > 1e-14 * lscale; ++it) {
    sk_gradient(mu, k, g);
    sk_hessian(mu, k, h);
    Mat jac = Mat::Zero(n + 1, n + 1);
    jac.topLeftCorner(n, n) = c * h;
    jac.block(0, n, n, 1) = g;
    jac.block(n, 0, 1, n) = g.transpose();
    const Vec step = jac.fullPivLu().solve(-r);
    if (!step.allFinite()) return false;
    double t = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      const Vec trial = mu + t * step.head(n);
      const double tc = c + t * step[n];
      Vec tr;
      const double tn = residual(trial, tc, tr);
      if (detail::open_member(trial.data(), n, k) && tn < rnorm) {
        mu = trial;
        c = tc;
        r = tr;
        rnorm = tn;
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;
  }
  return rnorm <= 1e-10 * lscale && c > 0.0 && detail::open_member(mu.data(), n, k);
}

}  // namespace

RhoStar rho_star_numeric(const Spectrum& lambda, ConeIndex k, const DualOptions& opt) {
  k.check(lambda.dim());
  const int n = static_cast<int>(lambda.dim());
  const int kk = k.value();
  const ConeVerdict verdict = in_dual_cone(lambda, k);
  require_dual_member(verdict, lambda);
  if (kk == 1) return ray_value(lambda);
  if (verdict.margin <= verdict.tol) return {0.0, true};

  const Sector sec(n, kk);
  const auto lam = sorted_desc(lambda);
  const double mean = lambda.sum() / n;
  const double ck = binomial(n, kk);
  auto objective_at = [&](const double* m) {
    Esym e;
    detail::esym(m, n, kk, e);
    double lm = 0.0;
    for (int i = 0; i < n; ++i) lm += lam[i] * m[i];
    return lm / (n * std::pow(e[kk] / ck, 1.0 / kk));
  };

  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const int samples = opt.samples > 0 ? opt.samples : default_samples(n);
  std::vector<Candidate> best;
  std::array<double, kMaxDim> mu{};
  for (int i = 0; i < samples; ++i) {
    auto v = random_ascending_direction(n, rng);
    const double s_exit = exit_param(sec, v);
    const double s = s_exit * unif(rng);
    for (int j = 0; j < n; ++j) mu[j] = sec.e + s * v[j];
    if (!detail::open_member(mu.data(), n, kk)) continue;
    keep_best(best, Candidate{objective_at(mu.data()), std::move(v), s}, 3);
  }
  if (best.empty()) throw NumericError("rho_star: no feasible sample in the sector");
  if (best.front().value < kBoundaryTol * mean) return {0.0, true};

  // simplex descent on the slice {e + B x}
  auto slice_point = [&](std::span<const double> x, double* m) {
    for (int i = 0; i < n; ++i) m[i] = sec.e;
    for (int j = 0; j < n - 1; ++j) {
      const auto col = sec.column(j);
      for (int i = 0; i < n; ++i) m[i] += x[j] * col[i];
    }
  };
  auto slice_obj = [&](std::span<const double> x) {
    std::array<double, kMaxDim> m{};
    slice_point(x, m.data());
    if (!detail::open_member(m.data(), n, kk)) return kPenalty;
    return objective_at(m.data());
  };
  auto start_of = [&](const Candidate& cand) {
    std::vector<double> x0(n - 1);
    for (int j = 0; j < n - 1; ++j) x0[j] = cand.s * dot(sec.column(j), cand.v);
    return x0;
  };

  // The problem is convex, so one descent plus the Newton accelerator is the
  // fast path; the remaining starts are only used if Newton is rejected.
  double value = best.front().value;
  Vec best_mu(n);
  for (int j = 0; j < n; ++j) best_mu[j] = sec.e + best.front().s * best.front().v[j];
  auto descend = [&](std::vector<double> x0, double tol) {
    const auto res = simplex_minimize(slice_obj, x0, 0.05, tol, 4000);
    if (res.value < value) {
      value = res.value;
      slice_point(res.x, best_mu.data());
    }
  };
  descend(start_of(best.front()), 1e-7);

  auto try_polish = [&]() {
    Vec polished = best_mu * std::pow(ck / sk_value(best_mu, kk), 1.0 / kk);
    if (!lagrange_polish(lam, kk, polished)) return false;
    const double v = objective_at(polished.data());
    if (v > value + 1e-9 * std::abs(mean)) return false;
    value = std::min(value, v);
    return true;
  };
  if (!try_polish()) {
    for (const auto& cand : best) descend(start_of(cand), 1e-11);
    try_polish();
  }
  if (value < kBoundaryTol * mean) return {0.0, true};
  return {value, false};
}

RhoStar rho_star(const Spectrum& lambda, ConeIndex k) {
  k.check(lambda.dim());
  const int n = static_cast<int>(lambda.dim());
  const int kk = k.value();
  if (kk != 1 && kk != 2 && kk != n) return rho_star_numeric(lambda, k);

  const ConeVerdict verdict = in_dual_cone(lambda, k);
  require_dual_member(verdict, lambda);
  if (kk == 1) return ray_value(lambda);
  if (verdict.margin <= verdict.tol) return {0.0, true};
  const double mean = lambda.sum() / n;
  double value = 0.0;
  if (kk == 2) {
    value = rho_star_closed_k2(lambda);
  } else {
    double logsum = 0.0;
    for (double x : lambda.values()) logsum += std::log(x);
    value = std::exp(logsum / n);
  }
  if (value < kBoundaryTol * mean) return {0.0, true};
  return {value, false};
}

double rho_star_oracle(const Spectrum& lambda, ConeIndex k, std::uint64_t samples,
                       std::uint64_t seed) {
  k.check(lambda.dim());
  const int n = static_cast<int>(lambda.dim());
  const int kk = k.value();
  if (kk == 1) {
    if (dual_margin_closed_k1(lambda) < -kMembershipTol * std::max(1.0, lambda.norm()))
      throw DomainError("rho_star_oracle: spectrum is not on the diagonal ray");
    return ray_value(lambda).value;
  }
  std::vector<double> lam(lambda.values().begin(), lambda.values().end());
  std::sort(lam.begin(), lam.end(), std::greater<>());
  const double ck = binomial(n, kk);
  const double radius = std::sqrt(static_cast<double>(n) * (n - 1));

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> w(n), mu(n), incumbent;
  double best = std::numeric_limits<double>::infinity();

  // Points of the slice sum(mu) = n, sorted ascending; lambda.mu / (n rho_k(mu)).
  auto evaluate = [&]() {
    std::sort(mu.begin(), mu.end());
    const auto e = elem_sym_all(mu, kk);
    for (int j = 1; j <= kk; ++j)
      if (!(e[j] > 0.0)) return;
    double lm = 0.0;
    for (int i = 0; i < n; ++i) lm += lam[i] * mu[i];
    const double val = lm / (n * std::pow(e[kk] / ck, 1.0 / kk));
    if (val < best) {
      best = val;
      incumbent = mu;
    }
  };
  auto centred_gaussian = [&]() {
    double mean = 0.0;
    for (double& x : w) {
      x = gauss(rng);
      mean += x;
    }
    mean /= n;
    double norm = 0.0;
    for (double& x : w) {
      x -= mean;
      norm += x * x;
    }
    return std::sqrt(norm);
  };

  // global phase: alternate volume-uniform and radius-uniform draws in the ball
  // of the slice that contains its intersection with Gamma_1
  const std::uint64_t global = samples - samples / 2;
  for (std::uint64_t s = 0; s < global; ++s) {
    const double norm = centred_gaussian();
    if (norm == 0.0) continue;
    const double u = unif(rng);
    const double r = radius * ((s & 1U) ? u : std::pow(u, 1.0 / (n - 1)));
    for (int i = 0; i < n; ++i) mu[i] = 1.0 + r * w[i] / norm;
    evaluate();
  }
  if (!std::isfinite(best)) throw NumericError("rho_star_oracle: no feasible sample found");

  // local phase: Gaussian clouds around the incumbent with shrinking width
  constexpr int kRounds = 25;
  const std::uint64_t local = samples / 2;
  double sigma = 0.2 * radius;
  for (int round = 0; round < kRounds; ++round, sigma *= 0.6) {
    const std::uint64_t count = local / kRounds + (round < static_cast<int>(local % kRounds));
    for (std::uint64_t s = 0; s < count; ++s) {
      centred_gaussian();
      const std::vector<double> centre = incumbent;
      for (int i = 0; i < n; ++i) mu[i] = centre[i] + sigma * w[i];
      evaluate();
    }
  }
  return best;
}

}  // namespace conelab::cone
