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

#include "lab/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "common/error.hpp"
#include "fd/io.hpp"

namespace conelab::lab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// JSON has no infinity; unbounded sides are stored as null.
nlohmann::json bound(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

double unbound(const nlohmann::json& j, double inf) { return j.is_null() ? inf : j.get<double>(); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Status from_range(double v, double lo, double hi) {
  return std::isfinite(v) && v >= lo && v <= hi ? Status::Pass : Status::Fail;
}

}  // namespace

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Inconclusive: return "inconclusive";
    case Status::Degenerate: return "degenerate";
  }
  return "?";
}

Verdict Verdict::range(std::string name, double value, double lo, double hi, std::string note) {
  return Verdict{std::move(name), value, lo, hi, from_range(value, lo, hi), std::move(note)};
}

Verdict Verdict::at_least(std::string name, double value, double lo, std::string note) {
  return range(std::move(name), value, lo, kInf, std::move(note));
}

Verdict Verdict::at_most(std::string name, double value, double hi, std::string note) {
  return range(std::move(name), value, -kInf, hi, std::move(note));
}

Verdict Verdict::degenerate(std::string name, std::string note) {
  return Verdict{std::move(name), 0.0, -kInf, kInf, Status::Degenerate, std::move(note)};
}

Verdict Verdict::slope(std::string name, const LineFit& fit, double expected, double tol) {
  Verdict v = range(std::move(name), fit.slope, expected - tol, expected + tol);
  v.spread = fit.half_width;
  v.spread_max = tol;
  if (fit.half_width > tol) {
    v.status = Status::Inconclusive;
    v.note = "fit half-width " + fmt(fit.half_width) + " exceeds the tolerance";
  }
  return v;
}

std::string Table::csv() const {
  std::string out = "#";
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : " ") + columns[i];
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += fmt(row[i]);
    }
    out += '\n';
  }
  return out;
}

bool ExperimentReport::passed() const {
  if (!error.empty()) return false;
  for (const auto& v : verdicts)
    if (!v.passed()) return false;
  return true;
}

nlohmann::json ExperimentReport::to_json() const {
  nlohmann::json slopes_j = nlohmann::json::array();
  for (const auto& s : slopes) {
    slopes_j.push_back({{"label", s.label},
                        {"slope", s.fit.slope},
                        {"half_width", s.fit.half_width},
                        {"intercept", s.fit.intercept},
                        {"rms", s.fit.rms},
                        {"points", s.fit.points},
                        {"expected", s.expected},
                        {"tol", s.tol}});
  }
  nlohmann::json verdicts_j = nlohmann::json::array();
  for (const auto& v : verdicts) {
    nlohmann::json vj = {{"name", v.name},     {"value", bound(v.value)}, {"lo", bound(v.lo)},
                         {"hi", bound(v.hi)},  {"status", std::string(to_string(v.status))},
                         {"pass", v.passed()}};
    if (!v.note.empty()) vj["note"] = v.note;
    if (!std::isnan(v.spread)) {
      vj["spread"] = bound(v.spread);
      vj["spread_max"] = v.spread_max;
    }
    verdicts_j.push_back(vj);
  }
  nlohmann::json j = {{"name", name},       {"config", config},         {"runs", runs},
                      {"slopes", slopes_j}, {"verdicts", verdicts_j},   {"pass", passed()},
                      {"wall_seconds", wall_seconds}};
  if (!flags.empty()) j["flags"] = flags;
  if (!error.empty()) j["error"] = error;
  return j;
}

void ExperimentReport::write(const std::string& dir) const {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir + ": " + ec.message());
  const auto put = [](const std::filesystem::path& p, const std::string& text) {
    std::ofstream os(p, std::ios::binary);
    if (!os) throw IoError("cannot open " + p.string());
    os << text;
    if (!os) throw IoError("write failed: " + p.string());
  };
  put(std::filesystem::path(dir) / "report.json", to_json().dump(2) + "\n");
  for (const auto& t : tables) put(std::filesystem::path(dir) / t.file, t.csv());
  for (const auto& f : fields) {
    fd::write_csv(*f.field, (std::filesystem::path(dir) / (f.stem + ".csv")).string());
    fd::write_binary(*f.field, (std::filesystem::path(dir) / (f.stem + ".cnlb")).string());
  }
}

Status recompute_status(const nlohmann::json& v) {
  if (v.at("status").get<std::string>() == "degenerate") return Status::Degenerate;
  if (v.contains("spread") && unbound(v.at("spread"), kInf) > unbound(v.at("spread_max"), kInf))
    return Status::Inconclusive;
  if (v.at("value").is_null()) return Status::Fail;
  return from_range(v.at("value").get<double>(), unbound(v.at("lo"), -kInf), unbound(v.at("hi"), kInf));
}

bool verdicts_recomputable(const nlohmann::json& report) {
  for (const auto& v : report.at("verdicts"))
    if (to_string(recompute_status(v)) != v.at("status").get<std::string>()) return false;
  return true;
}

}  // namespace conelab::lab
