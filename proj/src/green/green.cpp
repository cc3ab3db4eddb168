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

#include "green/green.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "common/error.hpp"
#include "symcone/symcone.hpp"

namespace conelab::green {

namespace {

void require_supercritical(int n, int k, const char* who) {
  if (k < 1 || k > n) throw DomainError(std::string(who) + ": k must lie in [1, n]");
  if (2 * k <= n) {
    std::ostringstream os;
    os << who << ": needs k > n/2 (n = " << n << ", k = " << k << ")";
    throw UnsupportedError(os.str());
  }
}

double radius_of(const GreenBallSpec& s, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(s.n)) throw DomainError("green_ball: point has the wrong dimension");
  double r2 = 0.0;
  for (int i = 0; i < s.n; ++i) r2 += (x[i] - s.y[i]) * (x[i] - s.y[i]);
  const double r = std::sqrt(r2);
  if (r > s.R * (1.0 + 1e-12)) throw DomainError("green_ball: point outside the ball");
  return std::min(r, s.R);
}

}  // namespace

GreenBallSpec GreenBallSpec::make(int n, int k, double R, std::vector<double> y) {
  if (n < 1) throw ConfigError("GreenBallSpec: n must be positive");
  if (!(R > 0.0) || !std::isfinite(R)) throw ConfigError("GreenBallSpec: R must be positive");
  if (y.empty()) y.assign(n, 0.0);
  if (y.size() != static_cast<std::size_t>(n)) throw ConfigError("GreenBallSpec: center has the wrong dimension");
  cone::ConeIndex ki(k);
  ki.check(static_cast<std::size_t>(n));
  if (2 * k < n) throw UnsupportedError("GreenBallSpec: Green's function needs k >= n/2");
  return GreenBallSpec{n, ki, R, std::move(y)};
}

double green_normalizer(int n, int k) {
  return std::pow(cone::binomial(n, k) * cone::unit_ball_volume(n), 1.0 / k);
}

double green_ball(const GreenBallSpec& s, std::span<const double> x) {
  const double r = radius_of(s, x);
  if (r == s.R) return 0.0;
  const int n = s.n, k = s.k.value();
  const double c = green_normalizer(n, k);
  if (s.log_branch()) {
    if (r == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(r / s.R) / c;
  }
  const double e = 2.0 - static_cast<double>(n) / k;
  return (std::pow(r, e) - std::pow(s.R, e)) / (e * c);
}

double green_at_center(const GreenBallSpec& s) {
  if (s.log_branch()) throw UnsupportedError("green_at_center: G_y(y) = -inf on the k = n/2 branch");
  const std::vector<double> y = s.y;
  return green_ball(s, y);
}

fd::RadialProfile green_profile(const GreenBallSpec& s) {
  using fd::Quad;
  const int n = s.n, k = s.k.value();
  const Quad c(green_normalizer(n, k));
  const Quad R(s.R);
  std::ostringstream name;
  name << "G[n=" << n << ",k=" << k << ",R=" << s.R << "]";
  if (s.log_branch()) {
    return fd::RadialProfile::closed(
        name.str(), [c, R](Quad r) { return log(r / R) / c; }, [c](Quad r) { return 1 / (c * r); },
        [c](Quad r) { return -1 / (c * r * r); }, 0.0, s.R);
  }
  const Quad e = 2 - Quad(n) / Quad(k);
  return fd::RadialProfile::closed(
      name.str(), [c, R, e](Quad r) { return (pow(r, e) - pow(R, e)) / (e * c); },
      [c, e](Quad r) { return pow(r, e - 1) / c; }, [c, e](Quad r) { return (e - 1) * pow(r, e - 2) / c; }, 0.0,
      s.R);
}

double green_inf_bound(int n, int k, double diam) {
  require_supercritical(n, k, "green_inf_bound");
  if (!(diam > 0.0)) throw DomainError("green_inf_bound: diameter must be positive");
  const double e = 2.0 - static_cast<double>(n) / k;
  return -std::pow(diam, e) / (e * green_normalizer(n, k));
}

double abp_constant(int n, int k, double diam) {
  require_supercritical(n, k, "abp_constant");
  if (!(diam > 0.0)) throw DomainError("abp_constant: diameter must be positive");
  const double e = 2.0 - static_cast<double>(n) / k;
  return std::pow(diam, e) / (n * e * std::pow(cone::unit_ball_volume(n), 1.0 / k));
}

double best_constant_ball(int n, int k, double R) {
  require_supercritical(n, k, "best_constant_ball");
  const auto spec = GreenBallSpec::make(n, k, R);
  // mu_k[w_y] = (-G_y(y))^(-k) by k-homogeneity, so mu_k^(-1/k) = -G_y(y).
  return std::pow(cone::binomial(n, k), 1.0 / k) * -green_at_center(spec) / n;
}

}  // namespace conelab::green
