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

#include "green/report.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>

#include "common/error.hpp"

namespace conelab::green {

nlohmann::json to_json(const BoundReport& r) {
  return {{"lhs", r.lhs},   {"rhs", r.rhs},         {"constant", r.constant},
          {"norm", r.norm}, {"mask_size", r.mask_size}, {"margin", r.margin}};
}

nlohmann::json to_json(const PreciseCheck& c) { return {{"precise", to_json(c.precise)}, {"crude", to_json(c.crude)}}; }

BoundReport bound_report_from_json(const nlohmann::json& j) {
  try {
    auto r = BoundReport::make(j.at("lhs").get<double>(), j.at("constant").get<double>(),
                               j.at("norm").get<double>(), j.at("mask_size").get<std::size_t>());
    const double stored = j.at("margin").get<double>();
    if (std::abs(stored - r.margin) > 1e-12 * std::max(1.0, std::abs(r.margin)))
      throw IoError("bound report: margin does not match its fields");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("bound report: ") + e.what());
  }
}

void write_mask_csv(const ContactMask& mask, const fd::Grid& grid, const std::string& path) {
  if (mask.nodes.size() != grid.size()) throw DomainError("write_mask_csv: mask does not match the grid");
  std::ofstream os(path);
  if (!os) throw IoError("cannot open " + path);
  os << std::setprecision(17);
  for (int i = 0; i < grid.dim(); ++i) os << (i ? "," : "") << 'x' << i + 1;
  os << '\n';
  for (std::size_t p = 0; p < grid.size(); ++p) {
    if (!mask.nodes[p]) continue;
    const fd::Point x = grid.position(p);
    for (int i = 0; i < grid.dim(); ++i) os << (i ? "," : "") << x[i];
    os << '\n';
  }
  if (!os) throw IoError("write failed: " + path);
}

}  // namespace conelab::green
