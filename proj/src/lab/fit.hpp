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
#include <span>
#include <string>
#include <vector>

namespace conelab::lab {

/// Least-squares line y = a + b x with a confidence half-width for b.
struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double half_width = 0.0;  // 95% Student-t interval on the slope; inf for 2 points
  double rms = 0.0;         // residual root mean square
  std::size_t points = 0;
};

/// Fits the last `last` points (all when fewer). DomainError for fewer than
/// two points or a degenerate x-range.
LineFit fit_line(std::span<const double> x, std::span<const double> y, std::size_t last = 5);

/// fit_line on (log x, log y).
LineFit fit_loglog(std::span<const double> x, std::span<const double> y, std::size_t last = 5);

}  // namespace conelab::lab
