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

#include <functional>
#include <span>
#include <vector>

namespace conelab {

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Derivative-free Nelder-Mead descent (GSL nmsimplex2). The objective may
/// return a large finite penalty outside its feasible region.
SimplexResult simplex_minimize(const std::function<double(std::span<const double>)>& f,
                               std::span<const double> x0, double step, double size_tol,
                               int max_iter);

}  // namespace conelab
