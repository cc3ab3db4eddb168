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

#include "fd/field.hpp"

namespace conelab::fd {

/// (sum over mask of |v|^q h^n)^(1/q); q = infinity gives the max. DomainError
/// for q < 1 or an undefined value under the mask.
double lq_norm(const ScalarField& field, double q, const Mask& mask);

struct Extrema {
  double sup = 0.0;
  double inf = 0.0;
  double osc = 0.0;
};

/// Exact extrema over the mask. DomainError for an empty mask.
Extrema sup_inf_osc(const ScalarField& field, const Mask& mask);

/// L^2 norm over the mask of |D^2 u|_F. DomainError unless every mask node has
/// its whole 3^n neighbourhood interior.
double w22_seminorm(const ScalarField& u, const Mask& mask);

}  // namespace conelab::fd
