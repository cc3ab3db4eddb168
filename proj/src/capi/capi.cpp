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

#include "conelab/conelab.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "common/error.hpp"
#include "green/green.hpp"
#include "lab/config.hpp"
#include "lab/experiments.hpp"
#include "lab/suite.hpp"
#include "symcone/symcone.hpp"

struct conelab_report {
  std::string json;
  bool passed = false;
};

namespace {

using namespace conelab;

thread_local std::string last_error;

struct ArgumentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

conelab_status code_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::Range: return CONELAB_E_RANGE;
    case ErrorCode::Domain: return CONELAB_E_DOMAIN;
    case ErrorCode::Numeric: return CONELAB_E_NUMERIC;
    case ErrorCode::Config: return CONELAB_E_CONFIG;
    case ErrorCode::Precondition: return CONELAB_E_PRECONDITION;
    case ErrorCode::Unsupported: return CONELAB_E_UNSUPPORTED;
    case ErrorCode::Io: return CONELAB_E_IO;
  }
  return CONELAB_E_INTERNAL;
}

template <class F>
conelab_status guarded(F&& f) noexcept {
  try {
    f();
    return CONELAB_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return code_of(e.code());
  } catch (const ArgumentError& e) {
    last_error = e.what();
    return CONELAB_E_ARGUMENT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return CONELAB_E_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return CONELAB_E_INTERNAL;
  } catch (...) {
    last_error = "unknown exception";
    return CONELAB_E_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) throw ArgumentError(std::string(what) + " is null");
}

cone::Spectrum spectrum(const double* lambda, size_t n) {
  need(lambda, "lambda");
  if (n < 2 || n > 16) throw RangeError("spectrum dimension must lie in [2, 16]");
  return cone::Spectrum(std::vector<double>(lambda, lambda + n));
}

cone::ConeIndex index(int k, size_t n) {
  cone::ConeIndex ci(k);
  ci.check(n);
  return ci;
}

void fill(const cone::ConeVerdict& v, conelab_verdict* out) {
  out->member = v.member ? 1 : 0;
  out->margin = v.margin;
  out->k = v.k;
  out->variant = v.variant == cone::ConeVariant::Open     ? CONELAB_CONE_OPEN
                 : v.variant == cone::ConeVariant::Closed ? CONELAB_CONE_CLOSED
                                                          : CONELAB_CONE_DUAL;
}

conelab_report* make_report(std::string json, bool passed) {
  auto* r = new conelab_report;
  r->json = std::move(json);
  r->passed = passed;
  return r;
}

// Fills in or checks the declared experiment kind.
lab::ExperimentConfig parse_with_kind(nlohmann::json doc, const char* kind) {
  if (kind && doc.is_object()) {
    if (!lab::experiment_from_string(kind)) throw ConfigError(std::string("unknown experiment '") + kind + "'");
    if (!doc.contains("experiment"))
      doc["experiment"] = kind;
    else if (doc["experiment"] != kind)
      throw lab::ConfigFieldError("/experiment", std::string("this file declares a different experiment than '") +
                                                     kind + "'");
  }
  return lab::parse_config(doc);
}

conelab_report* run_one(const lab::ExperimentConfig& cfg, const char* out_dir) {
  const auto r = lab::run_and_write(cfg, out_dir ? out_dir : "");
  return make_report(r.to_json().dump(2), r.passed());
}

}  // namespace

extern "C" {

const char* conelab_version(void) { return "0.1.0"; }

const char* conelab_status_name(conelab_status s) {
  switch (s) {
    case CONELAB_OK: return "ok";
    case CONELAB_E_RANGE: return "range";
    case CONELAB_E_DOMAIN: return "domain";
    case CONELAB_E_NUMERIC: return "numeric";
    case CONELAB_E_CONFIG: return "config";
    case CONELAB_E_PRECONDITION: return "precondition";
    case CONELAB_E_UNSUPPORTED: return "unsupported";
    case CONELAB_E_IO: return "io";
    case CONELAB_E_ARGUMENT: return "argument";
    case CONELAB_E_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* conelab_last_error(void) { return last_error.c_str(); }

conelab_status conelab_elem_sym(const double* lambda, size_t n, int k, double* out) {
  return guarded([&] {
    need(out, "out");
    const auto s = spectrum(lambda, n);
    if (k < 0 || static_cast<size_t>(k) > n) throw RangeError("k must lie in [0, n]");
    *out = k == 0 ? 1.0 : cone::elem_sym(s, cone::ConeIndex(k));
  });
}

conelab_status conelab_rho_k(const double* lambda, size_t n, int k, double* out) {
  return guarded([&] {
    need(out, "out");
    const auto s = spectrum(lambda, n);
    *out = cone::rho_k(s, index(k, n));
  });
}

conelab_status conelab_in_cone(const double* lambda, size_t n, int k, int closed, conelab_verdict* out) {
  return guarded([&] {
    need(out, "out");
    const auto s = spectrum(lambda, n);
    fill(cone::in_cone(s, index(k, n), closed != 0), out);
  });
}

conelab_status conelab_in_dual_cone(const double* lambda, size_t n, int k, conelab_verdict* out) {
  return guarded([&] {
    need(out, "out");
    const auto s = spectrum(lambda, n);
    fill(cone::in_dual_cone(s, index(k, n)), out);
  });
}

conelab_status conelab_rho_star(const double* lambda, size_t n, int k, double* out, int* boundary) {
  return guarded([&] {
    need(out, "out");
    const auto s = spectrum(lambda, n);
    const auto r = cone::rho_star(s, index(k, n));
    *out = r.value;
    if (boundary) *boundary = r.boundary ? 1 : 0;
  });
}

conelab_status conelab_rho_star_oracle(const double* lambda, size_t n, int k, uint64_t samples, uint64_t seed,
                                       double* out) {
  return guarded([&] {
    need(out, "out");
    const auto s = spectrum(lambda, n);
    if (samples == 0) throw ArgumentError("samples must be positive");
    *out = cone::rho_star_oracle(s, index(k, n), samples, seed);
  });
}

conelab_status conelab_spectrum_of(const double* matrix, size_t n, double* out) {
  return guarded([&] {
    need(matrix, "matrix");
    need(out, "out");
    if (n < 2 || n > 16) throw RangeError("matrix dimension must lie in [2, 16]");
    const cone::SymMatrix a(n, std::vector<double>(matrix, matrix + n * n));
    const auto s = cone::spectrum_of(a);
    std::memcpy(out, s.values().data(), n * sizeof(double));
  });
}

conelab_status conelab_gs_spectrum(int n, double alpha, double* out) {
  return guarded([&] {
    need(out, "out");
    if (n < 2 || n > 16) throw RangeError("n must lie in [2, 16]");
    const auto s = cone::gs_spectrum(n, alpha);
    std::memcpy(out, s.values().data(), static_cast<size_t>(n) * sizeof(double));
  });
}

conelab_status conelab_abp_constant(int n, int k, double diam, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = green::abp_constant(n, k, diam);
  });
}

conelab_status conelab_best_constant_ball(int n, int k, double radius, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = green::best_constant_ball(n, k, radius);
  });
}

conelab_status conelab_green_ball(int n, int k, double radius, const double* x, double* out) {
  return guarded([&] {
    need(x, "x");
    need(out, "out");
    if (n < 1 || n > 64) throw RangeError("n must lie in [1, 64]");
    const auto spec = green::GreenBallSpec::make(n, k, radius);
    *out = green::green_ball(spec, std::span<const double>(x, static_cast<size_t>(n)));
  });
}

conelab_status conelab_run_experiment_file(const char* config_path, const char* kind, const char* out_dir,
                                           conelab_report** out) {
  return guarded([&] {
    need(config_path, "config_path");
    need(out, "out");
    *out = nullptr;
    const std::string text = lab::read_text_file(config_path);
    const auto doc = lab::parse_json_text(text, config_path);
    lab::ExperimentConfig cfg;
    try {
      cfg = parse_with_kind(doc, kind);
    } catch (const lab::ConfigFieldError& e) {
      throw lab::annotate(text, config_path, e);
    }
    *out = run_one(cfg, out_dir);
  });
}

conelab_status conelab_run_experiment_json(const char* json_text, const char* out_dir, conelab_report** out) {
  return guarded([&] {
    need(json_text, "json_text");
    need(out, "out");
    *out = nullptr;
    const std::string text = json_text;
    const auto doc = lab::parse_json_text(text, "<json>");
    lab::ExperimentConfig cfg;
    try {
      cfg = lab::parse_config(doc);
    } catch (const lab::ConfigFieldError& e) {
      throw lab::annotate(text, "<json>", e);
    }
    *out = run_one(cfg, out_dir);
  });
}

conelab_status conelab_run_suite_file(const char* config_path, const char* out_dir, conelab_report** out) {
  return guarded([&] {
    need(config_path, "config_path");
    need(out, "out");
    *out = nullptr;
    const auto res = lab::run_suite_file(config_path, out_dir ? out_dir : "");
    *out = make_report(res.summary.dump(2), res.exit_code() == 0);
  });
}

const char* conelab_report_json(const conelab_report* r) { return r ? r->json.c_str() : ""; }

int conelab_report_passed(const conelab_report* r) { return r && r->passed ? 1 : 0; }

void conelab_report_free(conelab_report* r) { delete r; }

}  // extern "C"
