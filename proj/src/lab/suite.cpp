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

#include "lab/suite.hpp"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <thread>

#include "common/error.hpp"
#include "lab/experiments.hpp"

namespace conelab::lab {

using nlohmann::json;

int SuiteResult::exit_code() const {
  for (const auto& r : reports)
    if (!r.passed()) return 1;
  return 0;
}

int resolve_workers(int configured) {
  if (const char* env = std::getenv("CONELAB_WORKERS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 1024) throw ConfigError("CONELAB_WORKERS must be an integer in [1, 1024]");
    return static_cast<int>(v);
  }
  if (configured > 0) return configured;
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<ExperimentConfig> parse_suite(const json& doc, int* workers) {
  if (!doc.is_object()) throw ConfigFieldError("", "suite must be an object");
  for (const auto& [key, _] : doc.items())
    if (key != "experiments" && key != "workers") throw ConfigFieldError("/" + key, "unknown key");
  if (!doc.contains("experiments") || !doc["experiments"].is_array())
    throw ConfigFieldError("/experiments", "required array");
  int w = 0;
  if (doc.contains("workers")) {
    const auto& wj = doc["workers"];
    if (!wj.is_number_integer() || wj.get<long long>() < 1) throw ConfigFieldError("/workers", "must be a positive integer");
    w = wj.get<int>();
  }
  if (workers) *workers = w;
  std::vector<ExperimentConfig> out;
  std::set<std::string> names;
  const auto& list = doc["experiments"];
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string path = "/experiments/" + std::to_string(i);
    out.push_back(parse_config(list[i], path));
    if (!names.insert(out.back().name).second)
      throw ConfigFieldError(path + "/name", "duplicate experiment name '" + out.back().name + "'");
  }
  return out;
}

ExperimentReport run_and_write(const ExperimentConfig& cfg, const std::string& out_dir) {
  auto r = run_experiment(cfg);
  if (!out_dir.empty()) r.write(out_dir);
  return r;
}

SuiteResult run_suite(const std::vector<ExperimentConfig>& configs, int workers, const std::string& out_dir) {
  SuiteResult res;
  res.workers = std::max(1, std::min<int>(workers, static_cast<int>(std::max<std::size_t>(configs.size(), 1))));
  res.reports.resize(configs.size());
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < configs.size();) {
      const auto& cfg = configs[i];
      const std::string dir = out_dir.empty() ? "" : (std::filesystem::path(out_dir) / cfg.name).string();
      ExperimentReport r;
      try {
        r = run_and_write(cfg, dir);
      } catch (const std::exception& e) {
        r = ExperimentReport{};
        r.name = cfg.name;
        r.config = cfg.echo();
        r.error = e.what();
        if (!dir.empty()) {
          try {
            r.write(dir);
          } catch (const std::exception&) {
          }
        }
      }
      res.reports[i] = std::move(r);
    }
  };
  std::vector<std::jthread> pool;
  for (int t = 1; t < res.workers; ++t) pool.emplace_back(work);
  work();
  pool.clear();

  json entries = json::array();
  std::size_t failed = 0;
  for (const auto& r : res.reports) {
    json e = {{"name", r.name}, {"pass", r.passed()}, {"wall_seconds", r.wall_seconds}};
    json failing = json::array();
    for (const auto& v : r.verdicts)
      if (!v.passed()) failing.push_back(v.name);
    if (!failing.empty()) e["failing_verdicts"] = failing;
    if (!r.error.empty()) e["error"] = r.error;
    if (!r.passed()) ++failed;
    entries.push_back(e);
  }
  res.summary = {{"experiments", entries},
                 {"total", res.reports.size()},
                 {"failed", failed},
                 {"workers", res.workers},
                 {"pass", failed == 0}};
  if (!out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir + ": " + ec.message());
    const auto file = std::filesystem::path(out_dir) / "suite.json";
    std::ofstream os(file);
    if (!os) throw IoError("cannot open " + file.string());
    os << res.summary.dump(2) << "\n";
    if (!os) throw IoError("write failed: " + file.string());
  }
  return res;
}

SuiteResult run_suite_file(const std::string& file, const std::string& out_dir) {
  const std::string text = read_text_file(file);
  const json doc = parse_json_text(text, file);
  int workers = 0;
  std::vector<ExperimentConfig> configs;
  try {
    configs = parse_suite(doc, &workers);
  } catch (const ConfigFieldError& e) {
    throw annotate(text, file, e);
  }
  return run_suite(configs, resolve_workers(workers), out_dir);
}

}  // namespace conelab::lab
