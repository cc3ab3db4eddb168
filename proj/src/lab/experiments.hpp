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

#include <functional>

#include "fd/field.hpp"
#include "lab/config.hpp"
#include "lab/report.hpp"

namespace conelab::lab {

/// Coefficient builder for the configured operator.
fd::CoeffBuilder build_operator(const ExperimentConfig& cfg);

/// Pointwise data for a field spec; `salt` separates the random streams of
/// f and g under one seed.
std::function<double(const fd::Point&)> build_function(const FieldSpec& spec, const ExperimentConfig& cfg,
                                                       std::uint64_t salt);

ExperimentReport exp_max_principle(const ExperimentConfig& cfg);
ExperimentReport exp_sharpness(const ExperimentConfig& cfg);
ExperimentReport exp_log_family(const ExperimentConfig& cfg);
ExperimentReport exp_local_max(const ExperimentConfig& cfg);
ExperimentReport exp_oscillation(const ExperimentConfig& cfg);
ExperimentReport exp_w22(const ExperimentConfig& cfg);
/// Plain Dirichlet solve per spacing; the solutions are attached as fields.
ExperimentReport exp_solve(const ExperimentConfig& cfg);

/// Dispatches on cfg.kind and records the wall-clock time.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

}  // namespace conelab::lab
