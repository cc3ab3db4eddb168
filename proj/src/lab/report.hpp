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

#include <cmath>
#include <string>
#include <vector>

#include <memory>

#include "fd/field.hpp"
#include "json.hpp"
#include "lab/config.hpp"
#include "lab/fit.hpp"

namespace conelab::lab {

enum class Status { Pass, Fail, Inconclusive, Degenerate };

std::string_view to_string(Status s);

/// A pass/fail decision: value must lie in [lo, hi] (either side may be
/// infinite). Degenerate verdicts (0/0 ratios and the like) count as passing
/// and say so.
struct Verdict {
  std::string name;
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  Status status = Status::Fail;
  std::string note;
  // Slope verdicts: the fit half-width and the most it may be (NaN otherwise).
  double spread = std::nan("");
  double spread_max = std::nan("");

  static Verdict range(std::string name, double value, double lo, double hi, std::string note = {});
  static Verdict at_least(std::string name, double value, double lo, std::string note = {});
  static Verdict at_most(std::string name, double value, double hi, std::string note = {});
  static Verdict degenerate(std::string name, std::string note);
  /// Slope within expected +- tol; inconclusive when the fit half-width
  /// exceeds tol.
  static Verdict slope(std::string name, const LineFit& fit, double expected, double tol);

  bool passed() const noexcept { return status == Status::Pass || status == Status::Degenerate; }
};

struct SlopeRecord {
  std::string label;
  LineFit fit;
  double expected = 0.0;
  double tol = 0.0;
};

/// Data for one plot: a '#' comment line naming the columns, then rows.
struct Table {
  std::string file;  // leaf name, e.g. "norms.csv"
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add(std::vector<double> row) { rows.push_back(std::move(row)); }
  std::string csv() const;
};

/// A lattice field written as <stem>.csv and <stem>.cnlb.
struct FieldDump {
  std::string stem;
  std::shared_ptr<const fd::ScalarField> field;
};

struct ExperimentReport {
  std::string name;
  nlohmann::json config;
  nlohmann::json runs = nlohmann::json::array();
  std::vector<SlopeRecord> slopes;
  std::vector<Verdict> verdicts;
  std::vector<Table> tables;
  std::vector<FieldDump> fields;
  std::vector<std::string> flags;
  double wall_seconds = 0.0;
  /// Set when the run threw; the report is kept and counts as failed.
  std::string error;

  bool passed() const;
  nlohmann::json to_json() const;
  /// report.json, one CSV per table and the field dumps under dir (created
  /// if needed).
  void write(const std::string& dir) const;
};

/// Re-derives every verdict status from the numbers stored in a report.json
/// document; true when all of them agree with the stored statuses.
bool verdicts_recomputable(const nlohmann::json& report);

/// Verdict status implied by stored numbers.
Status recompute_status(const nlohmann::json& verdict);

}  // namespace conelab::lab
