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

#include <string>

#include "green/hessian.hpp"
#include "json.hpp"

namespace conelab::green {

nlohmann::json to_json(const BoundReport& r);
nlohmann::json to_json(const PreciseCheck& c);
/// Inverse of to_json; the margin is recomputed and must match the stored one.
BoundReport bound_report_from_json(const nlohmann::json& j);

/// One row per mask node: x1,..,xn. IoError on write failure.
void write_mask_csv(const ContactMask& mask, const fd::Grid& grid, const std::string& path);

}  // namespace conelab::green
