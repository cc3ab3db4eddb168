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

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace conelab {

enum class ErrorCode {
  Range,
  Domain,
  Numeric,
  Config,
  Precondition,
  Unsupported,
  Io,
};

/// Base of every exception thrown by the library. The code is what the C API
/// reports across the shared-library boundary.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class RangeError : public Error {
 public:
  explicit RangeError(const std::string& what) : Error(ErrorCode::Range, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorCode::Domain, what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorCode::Config, what) {}
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what) : Error(ErrorCode::Precondition, what) {}
};

class UnsupportedError : public Error {
 public:
  explicit UnsupportedError(const std::string& what) : Error(ErrorCode::Unsupported, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::Io, what) {}
};

/// Numerical failure (non-convergence, stagnation). Carries whatever the
/// failing routine had at hand: the best objective value seen and, for
/// iterative solvers, the residual history.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what, double best = 0.0,
                        std::vector<double> history = {})
      : Error(ErrorCode::Numeric, what), best_(best), history_(std::move(history)) {}

  double best() const noexcept { return best_; }
  const std::vector<double>& history() const noexcept { return history_; }

 private:
  double best_;
  std::vector<double> history_;
};

}  // namespace conelab
