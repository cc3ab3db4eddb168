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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "common/error.hpp"
#include "doctest.h"
#include "lab/config.hpp"
#include "lab/experiments.hpp"
#include "lab/fit.hpp"
#include "lab/report.hpp"
#include "lab/suite.hpp"
#include "support/generators.hpp"

using namespace conelab;
using namespace conelab::lab;
using nlohmann::json;

namespace {

ExperimentConfig cfg_of(const char* text) { return parse_config(parse_json_text(text, "test")); }

const Verdict& verdict_named(const ExperimentReport& r, const std::string& prefix) {
  for (const auto& v : r.verdicts)
    if (v.name.rfind(prefix, 0) == 0) return v;
  FAIL("no verdict starting with " << prefix);
  throw;
}

std::filesystem::path scratch(const std::string& leaf) {
  auto p = std::filesystem::temp_directory_path() / ("conelab_lab_" + leaf);
  std::filesystem::remove_all(p);
  return p;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::string config_error(const std::string& text) {
  try {
    const auto j = parse_json_text(text, "cfg.json");
    try {
      parse_config(j);
    } catch (const ConfigFieldError& e) {
      throw annotate(text, "cfg.json", e);
    }
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("defaults fill in") {
    const auto c = cfg_of(R"({"name": "s", "experiment": "sharpness", "n": 3, "k": 2})");
    CHECK(c.kind == ExperimentKind::Sharpness);
    CHECK(c.alpha == doctest::Approx(0.5));
    CHECK(c.eps.size() == 8);
    CHECK(c.eps.back() == std::ldexp(1.0, -10));
    CHECK(c.q_list == std::vector<double>{2.0});
    const auto l = cfg_of(R"({"name": "l", "experiment": "log_family", "n": 4, "k": 2})");
    CHECK(l.q == 2.0);
  }

  TEST_CASE("echo parses back to the same echo") {
    const auto c = cfg_of(R"({"name": "m", "experiment": "local_max", "n": 3, "k": 2, "q": 2, "h": [0.125, 0.0625],
      "operator": {"type": "perturbed", "amplitude": 0.2}, "f": {"type": "smooth"}, "g": {"type": "affine", "offset": 1,
      "gradient": [0.1, 0, 0]}, "seed": 7})");
    const auto again = parse_config(c.echo());
    CHECK(again.echo() == c.echo());
  }

  TEST_CASE("errors carry line, column and pointer") {
    const std::string text = "{\n  \"name\": \"x\",\n  \"experiment\": \"solve\",\n  \"h\": 0.1,\n  \"n\": 7\n}\n";
    const auto msg = config_error(text);
    CHECK(msg.find("cfg.json:5:8") != std::string::npos);
    CHECK(msg.find("/n") != std::string::npos);

    const auto unk = config_error("{\"name\": \"x\", \"experiment\": \"solve\", \"h\": 0.1, \"colour\": 1}");
    CHECK(unk.find("/colour") != std::string::npos);
    CHECK(unk.find("cfg.json:1:") != std::string::npos);

    const auto syn = config_error("{\n  \"name\": \"x\",\n  \"h\": [0.1,\n}\n");
    CHECK(syn.find("cfg.json:4:") != std::string::npos);

    const auto nested = config_error(
        "{\"name\": \"x\", \"experiment\": \"solve\", \"h\": 0.1,\n \"operator\": {\"type\": \"warp\"}}");
    CHECK(nested.find("cfg.json:2:23") != std::string::npos);
    CHECK(nested.find("/operator/type") != std::string::npos);
  }

  TEST_CASE("rejections") {
    CHECK_THROWS_AS(cfg_of(R"({"name": "a b", "experiment": "solve", "h": 0.1})"), ConfigError);
    CHECK_THROWS_AS(cfg_of(R"({"name": "a", "experiment": "nope"})"), ConfigError);
    CHECK_THROWS_AS(cfg_of(R"({"name": "a", "experiment": "solve"})"), ConfigError);
    CHECK_THROWS_AS(cfg_of(R"({"name": "a", "experiment": "w22", "n": 2, "h": 0.1})"), ConfigError);
    CHECK_THROWS_AS(cfg_of(R"({"name": "a", "experiment": "sharpness", "n": 4, "k": 2})"), ConfigError);
    CHECK_THROWS_AS(cfg_of(R"({"name": "a", "experiment": "sharpness", "n": 3, "k": 2, "h": 0.1})"), ConfigError);
    CHECK_THROWS_AS(cfg_of(R"({"name": "a", "experiment": "log_family", "n": 4, "k": 3})"), ConfigError);
    CHECK_THROWS_AS(cfg_of(R"({"name": "a", "experiment": "w22", "h": 0.1, "g": {"type": "constant", "value": 1}})"),
                    ConfigError);
  }

  TEST_CASE("strict exponent gate rejects, exploratory flags") {
    const char* bad = R"({"name": "g", "experiment": "max_principle", "n": 3, "k": 2, "q": 3, "h": 0.25,
                        "f": {"type": "constant", "value": 1}})";
    const auto msg = config_error(bad);
    CHECK(msg.find("requires q = k") != std::string::npos);
    CHECK(msg.find("/q") != std::string::npos);

    auto j = parse_json_text(bad, "t");
    j["mode"] = "exploratory";
    const auto c = parse_config(j);
    const auto r = run_experiment(c);
    REQUIRE(r.flags.size() == 1);
    CHECK(r.flags[0].find("exploratory") != std::string::npos);

    // k <= n/2: q must exceed n/2
    CHECK_THROWS_AS(cfg_of(R"({"name": "g", "experiment": "local_max", "n": 2, "k": 1, "q": 1, "h": 0.25})"),
                    ConfigError);
    CHECK_NOTHROW(cfg_of(R"({"name": "g", "experiment": "local_max", "n": 2, "k": 1, "q": 1.5, "h": 0.25})"));
  }

  TEST_CASE("property: random valid configs survive echo round trips") {
    testing::Gen gen(31);
    const char* kinds[] = {"max_principle", "local_max", "oscillation", "solve"};
    for (int i = 0; i < 200; ++i) {
      const int n = gen.integer(2, 3);
      const int k = gen.integer(1, n);
      const double q = 2 * k > n ? k : 0.5 * n + gen.uniform(0.1, 2.0);
      json j = {{"name", "p" + std::to_string(i)},
                {"experiment", kinds[gen.integer(0, 3)]},
                {"n", n},
                {"k", k},
                {"q", q},
                {"seed", gen.integer(0, 1000)},
                {"h", {gen.uniform(0.05, 0.3)}},
                {"f", {{"type", "smooth"}, {"value", gen.uniform(-1, 1)}}}};
      const auto c = parse_config(j);
      CHECK(parse_config(c.echo()).echo() == c.echo());
    }
  }
}

TEST_SUITE("fit") {
  TEST_CASE("exact lines") {
    const std::vector<double> x{1, 2, 3, 4, 5, 6}, y{1, 3, 5, 7, 9, 11};
    const auto f = fit_line(x, y);
    CHECK(f.points == 5);
    CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(f.intercept == doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(f.half_width == doctest::Approx(0.0).epsilon(1e-12));
    const std::vector<double> px{0.5, 0.25, 0.125}, py{0.25, 0.0625, 0.015625};
    CHECK(fit_loglog(px, py).slope == doctest::Approx(2.0).epsilon(1e-14));
  }

  TEST_CASE("noise widens the interval") {
    testing::Gen gen(4);
    std::vector<double> x, y;
    for (int i = 0; i < 5; ++i) {
      x.push_back(i);
      y.push_back(0.5 * i + 0.1 * gen.gauss());
    }
    const auto f = fit_line(x, y);
    CHECK(f.half_width > 0.0);
    CHECK(std::abs(f.slope - 0.5) < 3 * f.half_width + 1e-12);
  }

  TEST_CASE("degenerate inputs") {
    const std::vector<double> one{1.0}, same{2, 2, 2}, y3{1, 2, 3};
    CHECK_THROWS_AS(fit_line(one, one), DomainError);
    CHECK_THROWS_AS(fit_line(same, y3), DomainError);
  }
}

TEST_SUITE("report") {
  TEST_CASE("verdict statuses") {
    CHECK(Verdict::range("r", 0.5, 0, 1).status == Status::Pass);
    CHECK(Verdict::at_least("a", -1e-12, 0).status == Status::Fail);
    CHECK(Verdict::at_most("b", std::nan(""), 1).status == Status::Fail);
    CHECK(Verdict::degenerate("d", "0/0").passed());
    LineFit wide{0, 0.5, 0.3, 0, 5};
    CHECK(Verdict::slope("s", wide, 0.5, 0.1).status == Status::Inconclusive);
    const std::vector<double> two_x{1, 2}, two_y{1, 3};
    const auto two = fit_line(two_x, two_y);
    CHECK(std::isinf(two.half_width));
    const auto v2 = Verdict::slope("two points", two, 2.0, 0.1);
    CHECK(v2.status == Status::Inconclusive);
    ExperimentReport holder;
    holder.verdicts.push_back(v2);
    CHECK(verdicts_recomputable(json::parse(holder.to_json().dump())));
    LineFit tight{0, 0.55, 0.01, 0, 5};
    CHECK(Verdict::slope("s", tight, 0.5, 0.1).status == Status::Pass);
  }

  TEST_CASE("property: stored verdicts recompute") {
    testing::Gen gen(9);
    ExperimentReport r;
    r.name = "p";
    for (int i = 0; i < 300; ++i) {
      const double v = gen.uniform(-2, 2), a = gen.uniform(-2, 2), b = a + gen.uniform(0, 2);
      switch (i % 4) {
        case 0: r.verdicts.push_back(Verdict::range("r", v, a, b)); break;
        case 1: r.verdicts.push_back(Verdict::at_least("l", v, a)); break;
        case 2: r.verdicts.push_back(Verdict::at_most("m", v, b)); break;
        default: {
          LineFit f{0, v, gen.uniform(0, 0.2), 0, 5};
          r.verdicts.push_back(Verdict::slope("s", f, a, 0.1));
        }
      }
    }
    const auto j = json::parse(r.to_json().dump());
    CHECK(verdicts_recomputable(j));
    auto tampered = j;
    tampered["verdicts"][0]["value"] = tampered["verdicts"][0]["value"].get<double>() + 10.0;
    CHECK_FALSE(verdicts_recomputable(tampered));
  }

  TEST_CASE("table csv carries a column comment") {
    Table t{"x.csv", {"a", "b"}, {}};
    t.add({1.0, 0.1});
    const auto s = t.csv();
    CHECK(s.rfind("# a,b\n", 0) == 0);
    CHECK(s.find("0.10000000000000001") != std::string::npos);
  }
}

TEST_SUITE("experiments") {
  TEST_CASE("sharpness slopes and sup limit") {
    const auto c = cfg_of(R"({"name": "s", "experiment": "sharpness", "n": 3, "k": 2,
                              "params": {"q_list": [1.2, 1.5, 1.8, 2.0]}})");
    const auto r = run_experiment(c);
    REQUIRE(r.slopes.size() == 4);
    for (const auto& s : r.slopes) {
      CHECK(std::abs(s.fit.slope - s.expected) <= 0.1);
      CHECK(s.fit.half_width <= 0.1);
    }
    CHECK(r.slopes[3].expected == 0.0);
    CHECK(std::abs(r.slopes[3].fit.slope) <= 0.05);
    CHECK(r.slopes[1].fit.slope == doctest::Approx(0.5).epsilon(0.2));
    CHECK(verdict_named(r, "sup w_eps limit").passed());
    CHECK(r.passed());
    CHECK(verdicts_recomputable(json::parse(r.to_json().dump())));
  }

  TEST_CASE("log family: flat norm, ratio target unattainable at 2^-10") {
    const auto r = run_experiment(cfg_of(R"({"name": "l", "experiment": "log_family", "n": 4, "k": 2})"));
    CHECK(verdict_named(r, "max |norm / target - 1|").passed());
    CHECK(r.runs.back()["norm_target"].get<double>() == doctest::Approx(13.3286).epsilon(1e-5));
    CHECK(r.runs[0]["inf_u"].get<double>() == doctest::Approx(-2.57944).epsilon(1e-5));
    // (log eps - 1/2) / log eps = 1.0721 at eps = 2^-10: outside 1 +- 5%
    const auto& v = verdict_named(r, "inf u_eps / log eps");
    CHECK(v.value == doctest::Approx(1.0 + 0.5 / (10 * std::log(2.0))).epsilon(1e-12));
    CHECK_FALSE(v.passed());
    CHECK(verdict_named(r, "ladder steps").passed());
  }

  TEST_CASE("max principle: Poisson bubble") {
    const auto c = cfg_of(R"({"name": "b", "experiment": "max_principle", "n": 3, "k": 3, "q": 3, "h": [0.0625],
                              "f": {"type": "constant", "value": 6}})");
    const auto r = run_experiment(c);
    const auto& run = r.runs[0];
    CHECK(run["contact"]["lhs"].get<double>() == doctest::Approx(1.0).epsilon(0.02));
    CHECK(run["full"]["rhs"].get<double>() == doctest::Approx(4.0).epsilon(0.05));
    CHECK(run["constant"].get<double>() == doctest::Approx(0.413567).epsilon(1e-5));
    CHECK(r.passed());
  }

  TEST_CASE("max principle: f = 0") {
    const auto r = run_experiment(cfg_of(
        R"({"name": "z", "experiment": "max_principle", "n": 2, "k": 2, "q": 2, "h": [0.125]})"));
    CHECK(r.runs[0]["contact"]["lhs"].get<double>() <= 0.0);
    CHECK(r.passed());
  }

  TEST_CASE("max principle: positive boundary data is a domain error") {
    const auto c = cfg_of(R"({"name": "z", "experiment": "max_principle", "n": 2, "k": 2, "q": 2, "h": [0.125],
                              "g": {"type": "constant", "value": 1}})");
    CHECK_THROWS_AS(run_experiment(c), DomainError);
  }

  TEST_CASE("oscillation: quadratic bubble decays at rate 2") {
    const auto r = run_experiment(cfg_of(R"({"name": "o", "experiment": "oscillation", "n": 3, "k": 2, "q": 2,
      "h": [0.0625], "f": {"type": "constant", "value": 6}, "g": {"type": "bubble"},
      "params": {"expected": 2.0}})"));
    REQUIRE(r.slopes.size() == 1);
    CHECK(r.slopes[0].fit.slope == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(r.passed());
  }

  TEST_CASE("oscillation: constant solution is degenerate") {
    const auto r = run_experiment(cfg_of(R"({"name": "o", "experiment": "oscillation", "n": 2, "k": 2, "q": 2,
      "h": [0.125], "g": {"type": "constant", "value": 3}})"));
    CHECK(r.verdicts[0].status == Status::Degenerate);
    CHECK(r.passed());
  }

  TEST_CASE("local max: harmonic run is h-stable; u <= 0 is trivial") {
    const auto r = run_experiment(cfg_of(R"({"name": "m", "experiment": "local_max", "n": 2, "k": 2, "q": 2,
      "h": [0.0625, 0.03125], "g": {"type": "affine", "offset": 1.5, "gradient": [1, 0.5]}})"));
    CHECK(r.verdicts.size() == 2);
    CHECK(r.passed());
    const auto neg = run_experiment(cfg_of(R"({"name": "m", "experiment": "local_max", "n": 2, "k": 2, "q": 2,
      "h": [0.125], "f": {"type": "constant", "value": -1}})"));
    CHECK(neg.verdicts[0].value == 0.0);
    CHECK(neg.passed());
  }

  TEST_CASE("w22: zero data is degenerate") {
    const auto r = run_experiment(cfg_of(R"({"name": "w", "experiment": "w22", "h": [0.125]})"));
    CHECK(r.verdicts[0].status == Status::Degenerate);
  }

  TEST_CASE("determinism: same config and seed, identical files") {
    const char* text = R"({"name": "d", "experiment": "solve", "n": 2, "h": [0.0625], "seed": 5,
      "operator": {"type": "perturbed", "amplitude": 0.3}, "f": {"type": "smooth"}})";
    const auto a = scratch("det_a"), b = scratch("det_b");
    run_and_write(cfg_of(text), a.string());
    run_and_write(cfg_of(text), b.string());
    for (const char* leaf : {"solve.csv", "u_0.csv", "u_0.cnlb"}) CHECK(slurp(a / leaf) == slurp(b / leaf));
    auto other = parse_json_text(text, "t");
    other["seed"] = 6;
    const auto c = scratch("det_c");
    run_and_write(parse_config(other), c.string());
    CHECK(slurp(a / "u_0.csv") != slurp(c / "u_0.csv"));
    const auto rep = json::parse(slurp(a / "report.json"));
    for (const char* key : {"name", "config", "runs", "slopes", "verdicts"}) CHECK(rep.contains(key));
  }
}

TEST_SUITE("suite") {
  TEST_CASE("empty list passes") {
    const auto out = scratch("empty");
    const auto res = run_suite(parse_suite(json::parse(R"({"experiments": []})")), 2, out.string());
    CHECK(res.exit_code() == 0);
    CHECK(std::filesystem::exists(out / "suite.json"));
  }

  TEST_CASE("a failing experiment keeps its report and sets exit 1") {
    const auto doc = json::parse(R"({"workers": 3, "experiments": [
      {"name": "ok", "experiment": "sharpness", "n": 3, "k": 2},
      {"name": "bad", "experiment": "sharpness", "n": 3, "k": 2, "params": {"q_list": [1.5], "alpha": 0.3}},
      {"name": "boom", "experiment": "max_principle", "n": 2, "k": 2, "q": 2, "h": 0.125,
       "g": {"type": "constant", "value": 1}}]})");
    int workers = 0;
    const auto cfgs = parse_suite(doc, &workers);
    CHECK(workers == 3);
    const auto out = scratch("fail");
    const auto res = run_suite(cfgs, workers, out.string());
    CHECK(res.exit_code() == 1);
    CHECK(res.reports[0].passed());
    CHECK_FALSE(res.reports[1].passed());
    CHECK_FALSE(res.reports[2].error.empty());
    CHECK(std::filesystem::exists(out / "bad" / "report.json"));
    CHECK(std::filesystem::exists(out / "boom" / "report.json"));
    const auto s = json::parse(slurp(out / "suite.json"));
    CHECK(s["failed"] == 2);
  }

  TEST_CASE("duplicate names and file diagnostics") {
    const auto dir = scratch("dup");
    std::filesystem::create_directories(dir);
    const auto file = dir / "battery.json";
    std::ofstream(file) << "{\"experiments\": [\n  {\"name\": \"a\", \"experiment\": \"sharpness\", \"n\": 3, \"k\": 2},\n"
                           "  {\"name\": \"a\", \"experiment\": \"sharpness\", \"n\": 3, \"k\": 2}\n]}\n";
    try {
      run_suite_file(file.string(), "");
      FAIL("expected a config error");
    } catch (const ConfigError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("battery.json:3:") != std::string::npos);
      CHECK(msg.find("duplicate") != std::string::npos);
    }
  }

  TEST_CASE("worker count does not change results") {
    const auto doc = json::parse(R"({"experiments": [
      {"name": "a", "experiment": "solve", "n": 2, "h": 0.125, "f": {"type": "smooth"}, "seed": 3},
      {"name": "b", "experiment": "sharpness", "n": 3, "k": 2},
      {"name": "c", "experiment": "log_family", "n": 4, "k": 2}]})");
    const auto cfgs = parse_suite(doc);
    const auto one = run_suite(cfgs, 1, ""), three = run_suite(cfgs, 3, "");
    for (std::size_t i = 0; i < cfgs.size(); ++i) {
      auto a = one.reports[i].to_json(), b = three.reports[i].to_json();
      a.erase("wall_seconds");
      b.erase("wall_seconds");
      CHECK(a == b);
    }
  }
}
