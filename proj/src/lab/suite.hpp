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
#include <vector>

#include "json.hpp"
#include "lab/report.hpp"

namespace conelab::lab {

struct SuiteResult {
  std::vector<ExperimentReport> reports;  // in config order
  nlohmann::json summary;                 // the suite.json document
  int workers = 1;

  /// 0 when every verdict of every experiment passed, 1 otherwise.
  int exit_code() const;
};

/// CONELAB_WORKERS when set, else the configured count, else the hardware
/// concurrency; at least 1.
int resolve_workers(int configured);

/// Validates every experiment of {"experiments": [...], "workers": N} before
/// running any. ConfigFieldError pointers are relative to the suite document.
std::vector<ExperimentConfig> parse_suite(const nlohmann::json& doc, int* workers = nullptr);

/// Runs the experiments on a worker pool and writes out_dir/<name>/ and
/// out_dir/suite.json. An experiment that throws keeps its report with the
/// error recorded. Empty out_dir skips writing.
SuiteResult run_suite(const std::vector<ExperimentConfig>& configs, int workers, const std::string& out_dir);

/// Reads a suite file; configuration errors carry file:line:col.
SuiteResult run_suite_file(const std::string& file, const std::string& out_dir);

/// Runs one experiment, writing out_dir/ (skipped when empty).
ExperimentReport run_and_write(const ExperimentConfig& cfg, const std::string& out_dir);

}  // namespace conelab::lab
