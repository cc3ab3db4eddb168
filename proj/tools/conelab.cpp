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

// conelab command line. Talks to the library only through conelab.h.

#include <cstdio>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "conelab/conelab.h"
#include "json.hpp"

namespace {

using nlohmann::json;

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kError = 3 };

struct Failure {
  conelab_status status;
  std::string message;
};

void check(conelab_status s) {
  if (s != CONELAB_OK) throw Failure{s, conelab_last_error()};
}

struct ReportDel {
  void operator()(conelab_report* r) const { conelab_report_free(r); }
};
using Report = std::unique_ptr<conelab_report, ReportDel>;

// "1,1,2" or "[1, 1, 2]"; matrices also as nested arrays.
std::vector<double> parse_numbers(const std::string& text, const char* what) {
  std::vector<double> out;
  const auto first = text.find_first_not_of(" \t");
  if (first != std::string::npos && text[first] == '[') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw CLI::ValidationError(what, e.what());
    }
    const auto take = [&](const json& v) {
      if (!v.is_number()) throw CLI::ValidationError(what, "entries must be numbers");
      out.push_back(v.get<double>());
    };
    for (const auto& v : j) {
      if (v.is_array())
        for (const auto& w : v) take(w);
      else
        take(v);
    }
    return out;
  }
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || tok.find_first_not_of(" \t", used) != std::string::npos)
      throw CLI::ValidationError(what, "cannot read '" + tok + "' as a number");
    out.push_back(v);
  }
  return out;
}

struct SpectrumInput {
  std::string lambda;
  std::string matrix;

  std::vector<double> get() const {
    if (!lambda.empty()) return parse_numbers(lambda, "--lambda");
    const auto m = parse_numbers(matrix, "--matrix");
    std::size_t n = 0;
    while (n * n < m.size()) ++n;
    if (n * n != m.size()) throw CLI::ValidationError("--matrix", "need n*n entries");
    std::vector<double> out(n);
    check(conelab_spectrum_of(m.data(), n, out.data()));
    return out;
  }
};

void add_spectrum(CLI::App* cmd, SpectrumInput& in, int& k) {
  auto* l = cmd->add_option("--lambda", in.lambda, "Spectrum, e.g. 1,1,2 or [1,1,2]");
  auto* m = cmd->add_option("--matrix", in.matrix, "Symmetric matrix, row-major, e.g. [[2,0],[0,1]]");
  l->excludes(m);
  cmd->add_option("--k", k, "Cone index")->required();
  cmd->callback([l, m] {
    if (l->count() + m->count() == 0) throw CLI::RequiredError("--lambda or --matrix");
  });
}

json verdict_json(const conelab_verdict& v) {
  static const char* names[] = {"open", "closed", "dual"};
  return {{"member", v.member != 0}, {"margin", v.margin}, {"k", v.k}, {"variant", names[v.variant]}};
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

// One line per verdict; the full report is in report.json.
int summarise(const conelab_report* r, bool full) {
  const auto j = json::parse(conelab_report_json(r));
  if (full) {
    print(j);
  } else {
    std::cout << j.value("name", "") << "\n";
    for (const auto& f : j.value("flags", json::array())) std::cout << "  flag: " << f.get<std::string>() << "\n";
    if (j.contains("error")) std::cout << "  error: " << j["error"].get<std::string>() << "\n";
    for (const auto& v : j["verdicts"]) {
      std::cout << "  " << v["status"].get<std::string>() << "  " << v["name"].get<std::string>() << "  value "
                << v["value"].dump() << " in [" << v["lo"].dump() << ", " << v["hi"].dump() << "]";
      if (v.contains("note")) std::cout << "  (" << v["note"].get<std::string>() << ")";
      std::cout << "\n";
    }
  }
  return conelab_report_passed(r) ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetric-function cones, k-Hessian Green's functions and maximum-principle experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(conelab_version()));
  int code = kPass;

  auto* cone = app.add_subcommand("cone", "Cone calculus on one spectrum");
  cone->require_subcommand(1);

  SpectrumInput eval_in;
  int eval_k = 0;
  bool eval_closed = false;
  auto* eval = cone->add_subcommand("eval", "S_k, rho_k and Gamma_k membership");
  add_spectrum(eval, eval_in, eval_k);
  eval->add_flag("--closed", eval_closed, "Test the closed cone");
  eval->final_callback([&] {
    const auto l = eval_in.get();
    conelab_verdict v{};
    check(conelab_in_cone(l.data(), l.size(), eval_k, eval_closed ? 1 : 0, &v));
    auto j = verdict_json(v);
    double sk = 0.0;
    check(conelab_elem_sym(l.data(), l.size(), eval_k, &sk));
    j["s_k"] = sk;
    double rk = 0.0;
    if (conelab_rho_k(l.data(), l.size(), eval_k, &rk) == CONELAB_OK) j["rho_k"] = rk;
    print(j);
  });

  SpectrumInput dual_in;
  int dual_k = 0;
  auto* dual = cone->add_subcommand("dual", "Gamma*_k membership");
  add_spectrum(dual, dual_in, dual_k);
  dual->final_callback([&] {
    const auto l = dual_in.get();
    conelab_verdict v{};
    check(conelab_in_dual_cone(l.data(), l.size(), dual_k, &v));
    print(verdict_json(v));
  });

  SpectrumInput rs_in;
  int rs_k = 0;
  std::uint64_t oracle = 0, seed = 1;
  auto* rs = cone->add_subcommand("rho-star", "Dual gauge rho*_k");
  add_spectrum(rs, rs_in, rs_k);
  rs->add_option("--oracle", oracle, "Also run the sampling oracle with N samples");
  rs->add_option("--seed", seed, "Oracle seed");
  rs->final_callback([&] {
    const auto l = rs_in.get();
    double v = 0.0;
    int boundary = 0;
    check(conelab_rho_star(l.data(), l.size(), rs_k, &v, &boundary));
    json j = {{"rho_star", v}, {"boundary", boundary != 0}, {"k", rs_k}};
    if (oracle > 0) {
      double o = 0.0;
      check(conelab_rho_star_oracle(l.data(), l.size(), rs_k, oracle, seed, &o));
      j["oracle"] = o;
      j["oracle_samples"] = oracle;
      j["oracle_gap"] = o - v;
    }
    print(j);
  });

  std::string solve_cfg, solve_out;
  bool solve_json = false;
  auto* solve = app.add_subcommand("solve", "Dirichlet solve from a config file");
  solve->add_option("--config", solve_cfg, "Config JSON")->required()->check(CLI::ExistingFile);
  solve->add_option("--out", solve_out, "Directory for report.json, CSVs and field dumps");
  solve->add_flag("--json", solve_json, "Print the full report");
  solve->final_callback([&] {
    conelab_report* raw = nullptr;
    check(conelab_run_experiment_file(solve_cfg.c_str(), "solve", solve_out.empty() ? nullptr : solve_out.c_str(),
                                      &raw));
    code = summarise(Report(raw).get(), solve_json);
  });

  std::string exp_name, exp_cfg, exp_out;
  bool exp_json = false;
  auto* exp = app.add_subcommand("exp", "Run one experiment");
  exp->add_option("name", exp_name, "max_principle, sharpness, log_family, local_max, oscillation, w22 or solve")
      ->required();
  exp->add_option("--config", exp_cfg, "Config JSON")->required()->check(CLI::ExistingFile);
  exp->add_option("--out", exp_out, "Output directory")->required();
  exp->add_flag("--json", exp_json, "Print the full report");
  exp->final_callback([&] {
    conelab_report* raw = nullptr;
    check(conelab_run_experiment_file(exp_cfg.c_str(), exp_name.c_str(), exp_out.c_str(), &raw));
    code = summarise(Report(raw).get(), exp_json);
  });

  std::string suite_cfg, suite_out;
  auto* suite = app.add_subcommand("suite", "Run a battery of experiments");
  suite->add_option("--config", suite_cfg, "Battery JSON: {\"experiments\": [...], \"workers\": N}")
      ->required()
      ->check(CLI::ExistingFile);
  suite->add_option("--out", suite_out, "Output directory")->required();
  suite->final_callback([&] {
    conelab_report* raw = nullptr;
    check(conelab_run_suite_file(suite_cfg.c_str(), suite_out.c_str(), &raw));
    Report r(raw);
    const auto j = json::parse(conelab_report_json(r.get()));
    for (const auto& e : j["experiments"]) {
      std::cout << (e["pass"].get<bool>() ? "PASS  " : "FAIL  ") << e["name"].get<std::string>();
      if (e.contains("error")) std::cout << "  error: " << e["error"].get<std::string>();
      for (const auto& v : e.value("failing_verdicts", json::array())) std::cout << "\n      " << v.get<std::string>();
      std::cout << "\n";
    }
    std::cout << j["total"] << " experiment(s), " << j["failed"] << " failed, " << j["workers"] << " worker(s)\n";
    code = conelab_report_passed(r.get()) ? kPass : kFail;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  } catch (const Failure& f) {
    std::cerr << "conelab: " << conelab_status_name(f.status) << " error: " << f.message << "\n";
    const bool usage = f.status == CONELAB_E_CONFIG || f.status == CONELAB_E_ARGUMENT || f.status == CONELAB_E_RANGE;
    return usage ? kUsage : kError;
  }
  return code;
}
