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

#include <cstdint>
#include <string>
#include <vector>

#include "fd/field.hpp"

namespace conelab::fd {

/// CSV with header x1,..,xn,value and one row per active node.
void write_csv(const ScalarField& field, const std::string& path);
/// Reads values back onto the nodes of an existing grid; every row must hit a
/// lattice node.
ScalarField read_csv(const GridPtr& grid, const std::string& path);

/// Raw lattice dump: magic "CNLB1", uint32 n, uint32 dims[n], double
/// origin[n], double h, then row-major doubles with NaN on inactive nodes.
/// Little-endian throughout.
struct LatticeDump {
  std::vector<std::uint32_t> dims;
  std::vector<double> origin;
  double h = 0.0;
  std::vector<double> values;
};

void write_binary(const ScalarField& field, const std::string& path);
LatticeDump read_binary(const std::string& path);
/// The dump's values as a field on a grid with the same lattice geometry.
ScalarField field_from_dump(const GridPtr& grid, const LatticeDump& dump);

}  // namespace conelab::fd
