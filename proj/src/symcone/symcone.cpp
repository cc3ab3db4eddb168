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

#include "symcone/symcone.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "common/error.hpp"

namespace conelab::cone {

// ---------------------------------------------------------------------------
// Value types

Spectrum::Spectrum(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) {
    throw DomainError("spectrum needs dimension n >= 2");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("spectrum entries must be finite");
  }
}

Spectrum Spectrum::sorted_descending() const {
  std::vector<double> v = values_;
  std::sort(v.begin(), v.end(), std::greater<>());
  return Spectrum(std::move(v));
}

Spectrum Spectrum::scaled(double t) const {
  std::vector<double> v = values_;
  for (double& x : v) x *= t;
  return Spectrum(std::move(v));
}

double Spectrum::sum() const noexcept {
  return std::accumulate(values_.begin(), values_.end(), 0.0);
}

double Spectrum::norm() const noexcept {
  double s = 0.0;
  for (double v : values_) s += v * v;
  return std::sqrt(s);
}

SymMatrix::SymMatrix(std::size_t n, std::vector<double> row_major) : n_(n), a_(std::move(row_major)) {
  if (n_ == 0 || a_.size() != n_ * n_) {
    throw DomainError("matrix data does not match dimension");
  }
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (a_[i * n_ + j] != a_[j * n_ + i]) {
        std::ostringstream os;
        os << "matrix is not symmetric at (" << i << "," << j << ")";
        throw DomainError(os.str());
      }
    }
  }
  for (double v : a_) {
    if (!std::isfinite(v)) throw DomainError("matrix entries must be finite");
  }
}

SymMatrix SymMatrix::identity(std::size_t n) {
  std::vector<double> a(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) a[i * n + i] = 1.0;
  return SymMatrix(n, std::move(a));
}

SymMatrix SymMatrix::diagonal(std::span<const double> d) {
  const std::size_t n = d.size();
  std::vector<double> a(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) a[i * n + i] = d[i];
  return SymMatrix(n, std::move(a));
}

SymMatrix SymMatrix::conjugated(std::span<const double> q, std::span<const double> d) {
  const std::size_t n = d.size();
  if (q.size() != n * n) throw DomainError("orthogonal factor does not match dimension");
  std::vector<double> a(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t m = 0; m < n; ++m) s += q[i * n + m] * d[m] * q[j * n + m];
      a[i * n + j] = s;
      a[j * n + i] = s;
    }
  }
  return SymMatrix(n, std::move(a));
}

double SymMatrix::trace() const noexcept {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += a_[i * n_ + i];
  return t;
}

double SymMatrix::frobenius() const noexcept {
  double s = 0.0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

double SymMatrix::dot(const SymMatrix& other) const {
  if (other.n_ != n_) throw DomainError("matrix dimensions differ");
  double s = 0.0;
  for (std::size_t i = 0; i < a_.size(); ++i) s += a_[i] * other.a_[i];
  return s;
}

ConeIndex::ConeIndex(int k) : k_(k) {
  if (k < 1) throw RangeError("cone index k must be >= 1");
}

void ConeIndex::check(std::size_t n) const {
  if (k_ < 1 || static_cast<std::size_t>(k_) > n) {
    std::ostringstream os;
    os << "cone index k=" << k_ << " out of range for n=" << n;
    throw RangeError(os.str());
  }
}

std::string_view to_string(ConeVariant v) {
  switch (v) {
    case ConeVariant::Open: return "open";
    case ConeVariant::Closed: return "closed";
    case ConeVariant::Dual: return "dual";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Elementary symmetric functions

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

double unit_ball_volume(int n) {
  return std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

std::vector<double> elem_sym_all(std::span<const double> values, int kmax) {
  std::vector<double> e(static_cast<std::size_t>(kmax) + 1, 0.0);
  e[0] = 1.0;
  int filled = 0;
  for (double x : values) {
    filled = std::min(filled + 1, kmax);
    for (int j = filled; j >= 1; --j) e[j] += x * e[j - 1];
  }
  return e;
}

namespace {

std::vector<double> sorted_copy(const Spectrum& s) {
  std::vector<double> v(s.values().begin(), s.values().end());
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

}  // namespace

double elem_sym(const Spectrum& lambda, ConeIndex k) {
  k.check(lambda.dim());
  const auto v = sorted_copy(lambda);
  return elem_sym_all(v, k.value())[k.value()];
}

double rho_k(const Spectrum& lambda, ConeIndex k) {
  k.check(lambda.dim());
  const int n = static_cast<int>(lambda.dim());
  const double s = elem_sym(lambda, k);
  if (s < 0.0) {
    std::ostringstream os;
    os << "rho_k undefined: S_" << k.value() << " = " << s << " < 0";
    throw DomainError(os.str());
  }
  return std::pow(s / binomial(n, k.value()), 1.0 / k.value());
}

ConeVerdict in_cone(const Spectrum& lambda, ConeIndex k, bool closed) {
  k.check(lambda.dim());
  const int n = static_cast<int>(lambda.dim());
  const auto v = sorted_copy(lambda);
  const auto e = elem_sym_all(v, k.value());
  double margin = std::numeric_limits<double>::infinity();
  for (int j = 1; j <= k.value(); ++j) margin = std::min(margin, e[j] / binomial(n, j));
  ConeVerdict out;
  out.k = k.value();
  out.margin = margin;
  if (closed) {
    out.variant = ConeVariant::Closed;
    out.tol = kMembershipTol;
    out.member = margin >= -kMembershipTol;
  } else {
    out.variant = ConeVariant::Open;
    out.tol = 0.0;
    out.member = margin > 0.0;
  }
  return out;
}

ConeVerdict mui_necessary(const Spectrum& mu, ConeIndex k) {
  k.check(mu.dim());
  const int n = static_cast<int>(mu.dim());
  const int kk = k.value();
  const double total = mu.sum();
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < mu.dim(); ++i) {
    const double slack = kk * (n - 1) * mu[i] + (n - kk) * (total - mu[i]);
    margin = std::min(margin, slack);
  }
  ConeVerdict out;
  out.k = kk;
  out.margin = margin;
  out.variant = ConeVariant::Closed;
  out.tol = kMembershipTol;
  out.member = margin >= -kMembershipTol;
  return out;
}

Spectrum gs_spectrum(int n, double alpha) {
  if (n < 2) throw DomainError("gs_spectrum needs n >= 2");
  if (!(alpha < 1.0)) throw DomainError("Gilbarg-Serrin exponent must satisfy alpha < 1");
  std::vector<double> v(static_cast<std::size_t>(n), 1.0);
  v.back() = (n - 1) / (1.0 - alpha);
  return Spectrum(std::move(v));
}

// ---------------------------------------------------------------------------
// Matrices

Spectrum spectrum_of(const SymMatrix& m) {
  const std::size_t n = m.dim();
  if (n < 2) throw DomainError("spectrum_of needs n >= 2");
  std::vector<double> a(m.data().begin(), m.data().end());
  const double scale = m.frobenius();
  const double stop = 1e-13 * scale;
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a[i * n + j] * a[i * n + j];
    return std::sqrt(s);
  };

  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  while (off_norm() > stop) {
    if (++sweep > kMaxSweeps) {
      throw NumericError("Jacobi eigensolver did not converge in 100 sweeps", off_norm());
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double app = a[p * n + p];
        const double aqq = a[q * n + q];
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t r = 0; r < n; ++r) {
          const double arp = a[r * n + p];
          const double arq = a[r * n + q];
          a[r * n + p] = c * arp - s * arq;
          a[r * n + q] = s * arp + c * arq;
        }
        for (std::size_t r = 0; r < n; ++r) {
          const double apr = a[p * n + r];
          const double aqr = a[q * n + r];
          a[p * n + r] = c * apr - s * aqr;
          a[q * n + r] = s * apr + c * aqr;
        }
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
      }
    }
  }
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = a[i * n + i];
  std::sort(d.begin(), d.end(), std::greater<>());
  return Spectrum(std::move(d));
}

namespace {

double small_det(std::vector<double> m, std::size_t k) {
  double det = 1.0;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < k; ++r)
      if (std::abs(m[r * k + c]) > std::abs(m[piv * k + c])) piv = r;
    if (m[piv * k + c] == 0.0) return 0.0;
    if (piv != c) {
      for (std::size_t j = 0; j < k; ++j) std::swap(m[c * k + j], m[piv * k + j]);
      det = -det;
    }
    det *= m[c * k + c];
    for (std::size_t r = c + 1; r < k; ++r) {
      const double f = m[r * k + c] / m[c * k + c];
      for (std::size_t j = c; j < k; ++j) m[r * k + j] -= f * m[c * k + j];
    }
  }
  return det;
}

}  // namespace

double sk_minors(const SymMatrix& a, ConeIndex k) {
  const std::size_t n = a.dim();
  k.check(n);
  const std::size_t kk = static_cast<std::size_t>(k.value());
  std::vector<std::size_t> idx(kk);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<double> sub(kk * kk);
  double total = 0.0;
  while (true) {
    for (std::size_t r = 0; r < kk; ++r)
      for (std::size_t c = 0; c < kk; ++c) sub[r * kk + c] = a(idx[r], idx[c]);
    total += small_det(sub, kk);
    // next increasing k-tuple
    std::size_t i = kk;
    while (i > 0 && idx[i - 1] == n - kk + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < kk; ++j) idx[j] = idx[j - 1] + 1;
  }
  return total;
}

ConeVerdict gamma2_star_matrix_test(const SymMatrix& a) {
  const std::size_t n = a.dim();
  ConeVerdict out;
  out.k = 2;
  out.variant = ConeVariant::Dual;
  out.tol = kMembershipTol;
  const double tr = a.trace();
  if (!(tr > 0.0)) {
    out.member = false;
    out.margin = -1.0;
    return out;
  }
  // Frobenius norm of (n-1)/tr A - I; see the ledger for why not the
  // operator norm.
  const double s = (static_cast<double>(n) - 1.0) / tr;
  double sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = s * a(i, j) - (i == j ? 1.0 : 0.0);
      sq += v * v;
    }
  }
  out.margin = 1.0 - std::sqrt(sq);
  out.member = out.margin >= -kMembershipTol;
  return out;
}

ChainCheck lambda_chain_check(const SymMatrix& a, ConeIndex k, double a0, double rho0) {
  const std::size_t n = a.dim();
  k.check(n);
  if (!(rho0 > 0.0)) throw PreconditionError("lambda_chain_check: rho0 must be positive");
  const double norm = a.frobenius();
  if (norm > a0 * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "lambda_chain_check: |A| = " << norm << " exceeds a0 = " << a0;
    throw PreconditionError(os.str());
  }
  const Spectrum lam = spectrum_of(a);
  const RhoStar rs = rho_star(lam, k);
  if (rs.value < rho0 * (1.0 - 1e-12)) {
    std::ostringstream os;
    os << "lambda_chain_check: rho*_" << k.value() << "(A) = " << rs.value
       << " below rho0 = " << rho0;
    throw PreconditionError(os.str());
  }
  const double lmax = lam[0];
  const double lmin = lam[n - 1];
  double det = 1.0;
  for (std::size_t i = 0; i < n; ++i) det *= lam[i];
  const double nn = static_cast<double>(n);
  const double bound_det = std::pow(lmax, 1.0 - nn) * det;
  const double bound_a0 = std::pow(a0, 1.0 - nn) * std::pow(rho0, nn);
  ChainCheck out;
  out.slack_det = lmin - bound_det;
  out.slack_a0 = lmin - bound_a0;
  const double tol = 1e-12 * std::max(1.0, std::abs(lmax));
  out.holds = out.slack_det >= -tol && out.slack_a0 >= -tol;
  return out;
}

}  // namespace conelab::cone
