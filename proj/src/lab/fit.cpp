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

#include "lab/fit.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include "common/error.hpp"

namespace conelab::lab {

LineFit fit_line(std::span<const double> x, std::span<const double> y, std::size_t last) {
  if (x.size() != y.size()) throw DomainError("fit_line: x and y differ in length");
  const std::size_t m = std::min(last, x.size());
  if (m < 2) throw DomainError("fit_line: need at least two points");
  const std::size_t off = x.size() - m;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = off; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) throw DomainError("fit_line: non-finite data");
    mx += x[i];
    my += y[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = off; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw DomainError("fit_line: all x values coincide");
  LineFit f;
  f.points = m;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0.0;
  for (std::size_t i = off; i < x.size(); ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    ss += r * r;
  }
  f.rms = std::sqrt(ss / m);
  f.half_width = std::numeric_limits<double>::infinity();  // no residual dof
  if (m > 2) {
    const double se = std::sqrt(ss / (m - 2) / sxx);
    const boost::math::students_t dist(static_cast<double>(m - 2));
    f.half_width = boost::math::quantile(boost::math::complement(dist, 0.025)) * se;
  }
  return f;
}

LineFit fit_loglog(std::span<const double> x, std::span<const double> y, std::size_t last) {
  std::vector<double> lx(x.size()), ly(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw DomainError("fit_loglog: data must be positive");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  return fit_line(lx, ly, last);
}

}  // namespace conelab::lab
