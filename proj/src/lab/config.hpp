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
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "common/error.hpp"
#include "fd/grid.hpp"
#include "json.hpp"

namespace conelab::lab {

/// ConfigError tied to a JSON pointer into the config document.
class ConfigFieldError : public ConfigError {
 public:
  ConfigFieldError(std::string pointer, const std::string& msg)
      : ConfigError(pointer + ": " + msg), pointer_(std::move(pointer)), msg_(msg) {}
  const std::string& pointer() const noexcept { return pointer_; }
  const std::string& message() const noexcept { return msg_; }

 private:
  std::string pointer_;
  std::string msg_;
};

enum class ExperimentKind { MaxPrinciple, Sharpness, LogFamily, LocalMax, Oscillation, W22, Solve };

std::string_view to_string(ExperimentKind kind);
std::optional<ExperimentKind> experiment_from_string(std::string_view name);

struct DomainSpec {
  enum class Kind { Ball, Box } kind = Kind::Ball;
  std::vector<double> center;  // ball
  double radius = 1.0;
  std::vector<double> lo, hi;  // box
  bool offset = false;

  fd::Domain build(int n) const;
  double diameter() const;
};

struct OperatorSpec {
  enum class Kind { Identity, GilbargSerrin, Custom, Perturbed } kind = Kind::Identity;
  double alpha = 0.0;              // gilbarg_serrin
  std::vector<double> matrix;      // custom, row-major n x n
  std::vector<double> b;           // custom drift
  double c = 0.0;                  // custom zeroth order
  double amplitude = 0.0;          // perturbed
};

/// Scalar data on the lattice (used for f and g).
struct FieldSpec {
  enum class Kind { Zero, Constant, Bubble, Affine, Power, Gaussian, Smooth } kind = Kind::Zero;
  double value = 0.0;              // constant value / amplitude / scale
  std::vector<double> vec;         // affine gradient, gaussian center
  double offset = 0.0;             // affine intercept
  double alpha = 0.0;              // power exponent
  double width = 0.25;             // gaussian width
};

struct ExperimentConfig {
  std::string name;
  ExperimentKind kind = ExperimentKind::MaxPrinciple;
  int n = 3;
  int k = 2;
  double q = 2.0;
  bool strict = true;
  DomainSpec domain;
  std::vector<double> h;           // h or h-ladder
  OperatorSpec op;
  FieldSpec f;
  FieldSpec g;
  std::uint64_t seed = 1;

  // experiment parameters
  std::vector<double> eps;         // sharpness / log family ladder
  std::vector<double> q_list;      // sharpness
  double alpha = 0.5;              // sharpness exponent
  double sigma = 0.5;              // local max
  double ball_radius = 0.5;        // local max / oscillation / w22 inner ball
  std::vector<double> p_list;      // local max exponents
  std::vector<double> sigma_ladder;  // oscillation
  double tol = 0.1;                // slope tolerance
  double expected = std::nan("");  // oscillation: expected decay exponent, if any

  /// Whether the q-rule gate applies (experiments that assert the estimate).
  bool gated() const noexcept;
  /// Description of a q-rule breach; empty when the config satisfies the rule.
  std::string exponent_rule_violation() const;

  /// The JSON the config was parsed from, with defaults filled in.
  nlohmann::json echo() const;
};

/// Parses and validates one experiment object. ConfigError names the JSON
/// path of the offending field.
ExperimentConfig parse_config(const nlohmann::json& j, const std::string& path = "");

/// Parses text (comments allowed); syntax errors report line and column.
nlohmann::json parse_json_text(const std::string& text, const std::string& source);
std::string read_text_file(const std::string& file);

/// 1-based line and column of the value a JSON pointer names in text, or of
/// its nearest existing ancestor.
std::pair<int, int> locate_pointer(const std::string& text, const std::string& pointer);

/// "source:line:col: pointer: message".
ConfigError annotate(const std::string& text, const std::string& source, const ConfigFieldError& e);

/// Reads, parses and validates a single experiment config file.
ExperimentConfig load_config_file(const std::string& file);

}  // namespace conelab::lab
