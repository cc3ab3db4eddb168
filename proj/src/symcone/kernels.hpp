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

// Allocation-free S_j evaluation for the optimiser inner loops.

#include <array>
#include <cstddef>

namespace conelab::cone::detail {

inline constexpr int kMaxDim = 16;
using Esym = std::array<double, kMaxDim + 1>;

/// e[0..kmax] = S_0..S_kmax of x[0..n).
inline void esym(const double* x, int n, int kmax, Esym& e) {
  e[0] = 1.0;
  for (int j = 1; j <= kmax; ++j) e[j] = 0.0;
  int filled = 0;
  for (int i = 0; i < n; ++i) {
    filled = filled + 1 < kmax ? filled + 1 : kmax;
    const double xi = x[i];
    for (int j = filled; j >= 1; --j) e[j] += xi * e[j - 1];
  }
}

/// S_m of x with the entries at positions skip1 and skip2 removed (pass -1 to
/// keep all).
inline double esym_without(const double* x, int n, int m, int skip1, int skip2) {
  Esym e;
  e[0] = 1.0;
  for (int j = 1; j <= m; ++j) e[j] = 0.0;
  if (m < 0) return 0.0;
  int filled = 0;
  for (int i = 0; i < n; ++i) {
    if (i == skip1 || i == skip2) continue;
    filled = filled + 1 < m ? filled + 1 : m;
    const double xi = x[i];
    for (int j = filled; j >= 1; --j) e[j] += xi * e[j - 1];
  }
  return e[m];
}

inline bool closed_member(const double* x, int n, int k) {
  Esym e;
  esym(x, n, k, e);
  for (int j = 1; j <= k; ++j)
    if (e[j] < 0.0) return false;
  return true;
}

inline bool open_member(const double* x, int n, int k) {
  Esym e;
  esym(x, n, k, e);
  for (int j = 1; j <= k; ++j)
    if (!(e[j] > 0.0)) return false;
  return true;
}

}  // namespace conelab::cone::detail
