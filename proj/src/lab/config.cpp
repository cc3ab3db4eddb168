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

#include "lab/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace conelab::lab {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& ptr, const std::string& msg) { throw ConfigFieldError(ptr, msg); }

// Typed access with the JSON pointer of each field for diagnostics.
class Obj {
 public:
  Obj(const json& j, std::string ptr) : j_(j), ptr_(std::move(ptr)) {
    if (!j_.is_object()) fail(ptr_.empty() ? "/" : ptr_, "expected an object");
  }

  const std::string& ptr() const { return ptr_; }
  std::string at(const std::string& key) const { return ptr_ + "/" + key; }
  bool has(const std::string& key) const { return j_.contains(key); }
  const json& raw(const std::string& key) const { return j_.at(key); }

  void allow(std::initializer_list<const char*> keys) const {
    for (const auto& [key, _] : j_.items()) {
      bool ok = false;
      for (const char* k : keys) ok = ok || key == k;
      if (!ok) fail(at(key), "unknown field");
    }
  }

  std::string str(const std::string& key) const {
    if (!has(key)) fail(at(key), "required field missing");
    if (!raw(key).is_string()) fail(at(key), "expected a string");
    return raw(key).get<std::string>();
  }
  std::string str(const std::string& key, const std::string& dflt) const { return has(key) ? str(key) : dflt; }

  double num(const std::string& key) const {
    if (!has(key)) fail(at(key), "required field missing");
    if (!raw(key).is_number()) fail(at(key), "expected a number");
    const double v = raw(key).get<double>();
    if (!std::isfinite(v)) fail(at(key), "must be finite");
    return v;
  }
  double num(const std::string& key, double dflt) const { return has(key) ? num(key) : dflt; }

  long integer(const std::string& key, long dflt) const {
    if (!has(key)) return dflt;
    if (!raw(key).is_number_integer()) fail(at(key), "expected an integer");
    return raw(key).get<long>();
  }

  bool boolean(const std::string& key, bool dflt) const {
    if (!has(key)) return dflt;
    if (!raw(key).is_boolean()) fail(at(key), "expected true or false");
    return raw(key).get<bool>();
  }

  // A number or an array of numbers.
  std::vector<double> nums(const std::string& key) const {
    if (!has(key)) return {};
    const json& v = raw(key);
    if (v.is_number()) return {v.get<double>()};
    if (!v.is_array()) fail(at(key), "expected a number or an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) fail(at(key) + "/" + std::to_string(i), "expected a number");
      out.push_back(v[i].get<double>());
    }
    return out;
  }

 private:
  const json& j_;
  std::string ptr_;
};

void require_len(const std::vector<double>& v, std::size_t n, const std::string& ptr) {
  if (v.size() != n) fail(ptr, "expected " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
}

void require_positive(const std::vector<double>& v, const std::string& ptr) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!(v[i] > 0.0) || !std::isfinite(v[i])) fail(ptr + "/" + std::to_string(i), "must be positive");
}

bool lattice_kind(ExperimentKind k) {
  return k != ExperimentKind::Sharpness && k != ExperimentKind::LogFamily;
}

DomainSpec parse_domain(const Obj& o, int n) {
  DomainSpec d;
  const std::string type = o.str("type", "ball");
  if (type == "ball") {
    o.allow({"type", "center", "radius", "offset"});
    d.kind = DomainSpec::Kind::Ball;
    d.center = o.nums("center");
    if (d.center.empty()) d.center.assign(n, 0.0);
    require_len(d.center, n, o.at("center"));
    d.radius = o.num("radius", 1.0);
    if (!(d.radius > 0.0)) fail(o.at("radius"), "must be positive");
  } else if (type == "box") {
    o.allow({"type", "lo", "hi", "offset"});
    d.kind = DomainSpec::Kind::Box;
    d.lo = o.nums("lo");
    d.hi = o.nums("hi");
    if (d.lo.empty()) d.lo.assign(n, -1.0);
    if (d.hi.empty()) d.hi.assign(n, 1.0);
    require_len(d.lo, n, o.at("lo"));
    require_len(d.hi, n, o.at("hi"));
    for (int i = 0; i < n; ++i)
      if (!(d.hi[i] > d.lo[i])) fail(o.at("hi") + "/" + std::to_string(i), "must exceed lo");
  } else {
    fail(o.at("type"), "unknown domain type '" + type + "' (ball, box)");
  }
  d.offset = o.boolean("offset", false);
  if (d.offset && d.kind == DomainSpec::Kind::Box) fail(o.at("offset"), "offset lattices are for balls only");
  return d;
}

OperatorSpec parse_operator(const Obj& o, int n) {
  OperatorSpec op;
  const std::string type = o.str("type");
  if (type == "identity") {
    o.allow({"type"});
    op.kind = OperatorSpec::Kind::Identity;
  } else if (type == "gilbarg_serrin") {
    o.allow({"type", "alpha"});
    op.kind = OperatorSpec::Kind::GilbargSerrin;
    op.alpha = o.num("alpha");
    if (!(op.alpha < 1.0)) fail(o.at("alpha"), "must be below 1");
  } else if (type == "custom") {
    o.allow({"type", "matrix", "b", "c"});
    op.kind = OperatorSpec::Kind::Custom;
    if (!o.has("matrix") || !o.raw("matrix").is_array()) fail(o.at("matrix"), "expected an n x n array");
    const json& m = o.raw("matrix");
    if (m.size() != static_cast<std::size_t>(n)) fail(o.at("matrix"), "expected " + std::to_string(n) + " rows");
    for (int i = 0; i < n; ++i) {
      const std::string rp = o.at("matrix") + "/" + std::to_string(i);
      if (!m[i].is_array() || m[i].size() != static_cast<std::size_t>(n))
        fail(rp, "expected a row of " + std::to_string(n) + " numbers");
      for (int j = 0; j < n; ++j) {
        if (!m[i][j].is_number()) fail(rp + "/" + std::to_string(j), "expected a number");
        op.matrix.push_back(m[i][j].get<double>());
      }
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j)
        if (op.matrix[i * n + j] != op.matrix[j * n + i])
          fail(o.at("matrix") + "/" + std::to_string(i) + "/" + std::to_string(j), "matrix must be symmetric");
    op.b = o.nums("b");
    if (!op.b.empty()) require_len(op.b, n, o.at("b"));
    op.c = o.num("c", 0.0);
    if (op.c > 0.0) fail(o.at("c"), "c > 0 breaks the maximum principle; use c <= 0");
  } else if (type == "perturbed") {
    o.allow({"type", "amplitude"});
    op.kind = OperatorSpec::Kind::Perturbed;
    op.amplitude = o.num("amplitude");
    if (!(op.amplitude >= 0.0 && op.amplitude < 1.0)) fail(o.at("amplitude"), "must lie in [0, 1)");
  } else {
    fail(o.at("type"), "unknown operator type '" + type + "' (identity, gilbarg_serrin, custom, perturbed)");
  }
  return op;
}

FieldSpec parse_field(const Obj& o, int n) {
  FieldSpec f;
  const std::string type = o.str("type");
  if (type == "zero") {
    o.allow({"type"});
    f.kind = FieldSpec::Kind::Zero;
  } else if (type == "constant") {
    o.allow({"type", "value"});
    f.kind = FieldSpec::Kind::Constant;
    f.value = o.num("value");
  } else if (type == "bubble") {
    o.allow({"type", "value"});
    f.kind = FieldSpec::Kind::Bubble;
    f.value = o.num("value", 1.0);
  } else if (type == "affine") {
    o.allow({"type", "offset", "gradient"});
    f.kind = FieldSpec::Kind::Affine;
    f.offset = o.num("offset", 0.0);
    f.vec = o.nums("gradient");
    if (f.vec.empty()) f.vec.assign(n, 0.0);
    require_len(f.vec, n, o.at("gradient"));
  } else if (type == "power") {
    o.allow({"type", "alpha", "value"});
    f.kind = FieldSpec::Kind::Power;
    f.alpha = o.num("alpha");
    f.value = o.num("value", 1.0);
  } else if (type == "gaussian") {
    o.allow({"type", "center", "width", "value"});
    f.kind = FieldSpec::Kind::Gaussian;
    f.vec = o.nums("center");
    if (f.vec.empty()) f.vec.assign(n, 0.0);
    require_len(f.vec, n, o.at("center"));
    f.width = o.num("width", 0.25);
    if (!(f.width > 0.0)) fail(o.at("width"), "must be positive");
    f.value = o.num("value", 1.0);
  } else if (type == "smooth") {
    o.allow({"type", "value"});
    f.kind = FieldSpec::Kind::Smooth;
    f.value = o.num("value", 1.0);
  } else {
    fail(o.at("type"), "unknown field type '" + type + "' (zero, constant, bubble, affine, power, gaussian, smooth)");
  }
  return f;
}

json domain_json(const DomainSpec& d) {
  if (d.kind == DomainSpec::Kind::Ball)
    return {{"type", "ball"}, {"center", d.center}, {"radius", d.radius}, {"offset", d.offset}};
  return {{"type", "box"}, {"lo", d.lo}, {"hi", d.hi}, {"offset", d.offset}};
}

json operator_json(const OperatorSpec& op, int n) {
  switch (op.kind) {
    case OperatorSpec::Kind::Identity:
      return {{"type", "identity"}};
    case OperatorSpec::Kind::GilbargSerrin:
      return {{"type", "gilbarg_serrin"}, {"alpha", op.alpha}};
    case OperatorSpec::Kind::Perturbed:
      return {{"type", "perturbed"}, {"amplitude", op.amplitude}};
    case OperatorSpec::Kind::Custom: {
      json rows = json::array();
      for (int i = 0; i < n; ++i)
        rows.push_back(std::vector<double>(op.matrix.begin() + i * n, op.matrix.begin() + (i + 1) * n));
      json j = {{"type", "custom"}, {"matrix", rows}, {"c", op.c}};
      if (!op.b.empty()) j["b"] = op.b;
      return j;
    }
  }
  return {};
}

json field_json(const FieldSpec& f) {
  switch (f.kind) {
    case FieldSpec::Kind::Zero:
      return {{"type", "zero"}};
    case FieldSpec::Kind::Constant:
      return {{"type", "constant"}, {"value", f.value}};
    case FieldSpec::Kind::Bubble:
      return {{"type", "bubble"}, {"value", f.value}};
    case FieldSpec::Kind::Affine:
      return {{"type", "affine"}, {"offset", f.offset}, {"gradient", f.vec}};
    case FieldSpec::Kind::Power:
      return {{"type", "power"}, {"alpha", f.alpha}, {"value", f.value}};
    case FieldSpec::Kind::Gaussian:
      return {{"type", "gaussian"}, {"center", f.vec}, {"width", f.width}, {"value", f.value}};
    case FieldSpec::Kind::Smooth:
      return {{"type", "smooth"}, {"value", f.value}};
  }
  return {};
}

std::pair<int, int> line_col(const std::string& text, std::size_t pos) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < pos && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

// Walks JSON text without building values, to find where a pointer lands.
class Locator {
 public:
  explicit Locator(const std::string& s) : s_(s) {}

  // Position of the value at path[depth..] below the value starting at i_, or
  // npos when the path does not exist; best_ tracks the deepest match.
  std::size_t find(const std::vector<std::string>& path, std::size_t depth) {
    ws();
    if (i_ >= s_.size()) return npos;
    best_ = i_;
    if (depth == path.size()) return i_;
    if (s_[i_] == '{') {
      ++i_;
      while (true) {
        ws();
        if (i_ >= s_.size() || s_[i_] == '}') return npos;
        const std::string key = string_token();
        ws();
        if (i_ < s_.size() && s_[i_] == ':') ++i_;
        if (key == path[depth]) return find(path, depth + 1);
        skip();
        ws();
        if (i_ < s_.size() && s_[i_] == ',') {
          ++i_;
          continue;
        }
        return npos;
      }
    }
    if (s_[i_] == '[') {
      ++i_;
      long want = -1;
      try {
        want = std::stol(path[depth]);
      } catch (...) {
        return npos;
      }
      for (long idx = 0;; ++idx) {
        ws();
        if (i_ >= s_.size() || s_[i_] == ']') return npos;
        if (idx == want) return find(path, depth + 1);
        skip();
        ws();
        if (i_ < s_.size() && s_[i_] == ',') {
          ++i_;
          continue;
        }
        return npos;
      }
    }
    return npos;
  }

  std::size_t best() const { return best_; }
  static constexpr std::size_t npos = std::string::npos;

 private:
  void ws() {
    while (i_ < s_.size()) {
      const char c = s_[i_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        ++i_;
      } else if (c == '/' && i_ + 1 < s_.size() && s_[i_ + 1] == '/') {
        while (i_ < s_.size() && s_[i_] != '\n') ++i_;
      } else if (c == '/' && i_ + 1 < s_.size() && s_[i_ + 1] == '*') {
        const auto end = s_.find("*/", i_ + 2);
        i_ = end == std::string::npos ? s_.size() : end + 2;
      } else {
        break;
      }
    }
  }

  std::string string_token() {
    std::string out;
    if (i_ >= s_.size() || s_[i_] != '"') return out;
    ++i_;
    while (i_ < s_.size() && s_[i_] != '"') {
      if (s_[i_] == '\\' && i_ + 1 < s_.size()) ++i_;
      out += s_[i_++];
    }
    ++i_;
    return out;
  }

  void skip() {
    ws();
    if (i_ >= s_.size()) return;
    if (s_[i_] == '"') {
      string_token();
      return;
    }
    if (s_[i_] == '{' || s_[i_] == '[') {
      int level = 0;
      while (i_ < s_.size()) {
        const char c = s_[i_];
        if (c == '"') {
          string_token();
          continue;
        }
        if (c == '{' || c == '[') ++level;
        if (c == '}' || c == ']') {
          --level;
          if (level == 0) {
            ++i_;
            return;
          }
        }
        ++i_;
      }
      return;
    }
    while (i_ < s_.size() && s_[i_] != ',' && s_[i_] != '}' && s_[i_] != ']') ++i_;
  }

  const std::string& s_;
  std::size_t i_ = 0;
  std::size_t best_ = 0;
};

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::MaxPrinciple: return "max_principle";
    case ExperimentKind::Sharpness: return "sharpness";
    case ExperimentKind::LogFamily: return "log_family";
    case ExperimentKind::LocalMax: return "local_max";
    case ExperimentKind::Oscillation: return "oscillation";
    case ExperimentKind::W22: return "w22";
    case ExperimentKind::Solve: return "solve";
  }
  return "?";
}

std::optional<ExperimentKind> experiment_from_string(std::string_view name) {
  for (auto k : {ExperimentKind::MaxPrinciple, ExperimentKind::Sharpness, ExperimentKind::LogFamily,
                 ExperimentKind::LocalMax, ExperimentKind::Oscillation, ExperimentKind::W22, ExperimentKind::Solve})
    if (to_string(k) == name) return k;
  return std::nullopt;
}

fd::Domain DomainSpec::build(int n) const {
  (void)n;
  if (kind == Kind::Ball) return fd::Domain::ball(center, radius);
  return fd::Domain::box(lo, hi);
}

double DomainSpec::diameter() const {
  if (kind == Kind::Ball) return 2.0 * radius;
  double s = 0.0;
  for (std::size_t i = 0; i < lo.size(); ++i) s += (hi[i] - lo[i]) * (hi[i] - lo[i]);
  return std::sqrt(s);
}

bool ExperimentConfig::gated() const noexcept {
  return kind == ExperimentKind::MaxPrinciple || kind == ExperimentKind::LocalMax ||
         kind == ExperimentKind::Oscillation;
}

std::string ExperimentConfig::exponent_rule_violation() const {
  std::ostringstream os;
  if (2 * k > n) {
    if (q != k) os << "q = " << q << " but k = " << k << " > n/2 requires q = k";
  } else if (!(q > 0.5 * n)) {
    os << "q = " << q << " but k = " << k << " <= n/2 requires q > n/2 = " << 0.5 * n;
  }
  return os.str();
}

nlohmann::json ExperimentConfig::echo() const {
  json j = {{"name", name},
            {"experiment", std::string(to_string(kind))},
            {"n", n},
            {"k", k},
            {"q", q},
            {"mode", strict ? "strict" : "exploratory"},
            {"seed", seed}};
  if (lattice_kind(kind)) {
    j["domain"] = domain_json(domain);
    j["h"] = h;
    j["operator"] = operator_json(op, n);
    j["f"] = field_json(f);
    j["g"] = field_json(g);
  } else {
    j["operator"] = operator_json(op, n);
  }
  json p = json::object();
  switch (kind) {
    case ExperimentKind::Sharpness:
      p = {{"eps", eps}, {"q_list", q_list}, {"alpha", alpha}, {"tol", tol}};
      break;
    case ExperimentKind::LogFamily:
      p = {{"eps", eps}};
      break;
    case ExperimentKind::LocalMax:
      p = {{"sigma", sigma}, {"radius", ball_radius}, {"p", p_list}};
      break;
    case ExperimentKind::Oscillation:
      p = {{"radius", ball_radius}, {"sigma_ladder", sigma_ladder}, {"tol", tol}};
      if (!std::isnan(expected)) p["expected"] = expected;
      break;
    case ExperimentKind::W22:
      p = {{"radius", ball_radius}};
      break;
    default:
      break;
  }
  if (!p.empty()) j["params"] = p;
  return j;
}

ExperimentConfig parse_config(const nlohmann::json& j, const std::string& path) {
  const Obj o(j, path);
  o.allow({"name", "experiment", "n", "k", "q", "mode", "seed", "domain", "h", "operator", "f", "g", "params"});
  ExperimentConfig c;
  c.name = o.str("name");
  if (c.name.empty()) fail(o.at("name"), "must not be empty");
  for (char ch : c.name)
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-' || ch == '.'))
      fail(o.at("name"), "use letters, digits, '_', '-' or '.' only (it names the output directory)");
  const std::string exp = o.str("experiment");
  const auto kind = experiment_from_string(exp);
  if (!kind) fail(o.at("experiment"), "unknown experiment '" + exp + "'");
  c.kind = *kind;

  const long n = o.integer("n", 3);
  const bool lattice = lattice_kind(c.kind);
  if (lattice && (n < 2 || n > 3)) fail(o.at("n"), "lattice experiments need n = 2 or 3");
  if (!lattice && (n < 2 || n > 16)) fail(o.at("n"), "n must lie in [2, 16]");
  if (c.kind == ExperimentKind::W22 && n != 3) fail(o.at("n"), "the W22 experiment needs n = 3");
  c.n = static_cast<int>(n);
  const long k = o.integer("k", c.kind == ExperimentKind::W22 ? 2 : std::min<long>(2, n));
  if (k < 1 || k > n) fail(o.at("k"), "must lie in [1, n]");
  if (c.kind == ExperimentKind::W22 && k != 2) fail(o.at("k"), "the W22 experiment is the k = 2 estimate");
  c.k = static_cast<int>(k);
  c.q = o.num("q", c.kind == ExperimentKind::LogFamily ? 0.5 * c.n : static_cast<double>(c.k));
  if (!(c.q >= 1.0)) fail(o.at("q"), "must be at least 1");
  const std::string mode = o.str("mode", "strict");
  if (mode != "strict" && mode != "exploratory") fail(o.at("mode"), "expected 'strict' or 'exploratory'");
  c.strict = mode == "strict";
  const long seed = o.integer("seed", 1);
  if (seed < 0) fail(o.at("seed"), "must be nonnegative");
  c.seed = static_cast<std::uint64_t>(seed);

  if (lattice) {
    c.domain = o.has("domain") ? parse_domain(Obj(o.raw("domain"), o.at("domain")), c.n)
                               : parse_domain(Obj(json::object(), o.at("domain")), c.n);
    c.h = o.nums("h");
    if (c.h.empty()) fail(o.at("h"), "required: a spacing or a ladder of spacings");
    require_positive(c.h, o.at("h"));
  } else if (o.has("domain") || o.has("h")) {
    fail(o.has("domain") ? o.at("domain") : o.at("h"), "radial experiments take no lattice");
  }

  if (o.has("operator")) {
    c.op = parse_operator(Obj(o.raw("operator"), o.at("operator")), c.n);
  } else if (!lattice) {
    c.op.kind = OperatorSpec::Kind::GilbargSerrin;
  }
  if (!lattice && c.op.kind != OperatorSpec::Kind::GilbargSerrin)
    fail(o.at("operator"), "radial experiments use the gilbarg_serrin operator");
  if (c.kind == ExperimentKind::W22 && c.op.kind == OperatorSpec::Kind::Custom &&
      (c.op.c != 0.0 || !c.op.b.empty()))
    fail(o.at("operator"), "the W22 experiment needs a pure second-order operator");

  if (o.has("f")) c.f = parse_field(Obj(o.raw("f"), o.at("f")), c.n);
  if (o.has("g")) c.g = parse_field(Obj(o.raw("g"), o.at("g")), c.n);
  if (!lattice && (o.has("f") || o.has("g"))) fail(o.at("f"), "radial experiments build their own data");
  if (c.kind == ExperimentKind::W22 && c.g.kind != FieldSpec::Kind::Zero)
    fail(o.at("g"), "the W22 estimate is for zero boundary values");

  const json empty = json::object();
  const Obj p(o.has("params") ? o.raw("params") : empty, o.at("params"));
  switch (c.kind) {
    case ExperimentKind::Sharpness: {
      p.allow({"eps", "q_list", "alpha", "tol"});
      if (2 * c.k <= c.n) fail(o.at("k"), "sharpness needs k > n/2");
      c.alpha = p.num("alpha", 2.0 - static_cast<double>(c.n) / c.k);
      if (!(c.alpha > 0.0 && c.alpha < 1.0)) fail(p.at("alpha"), "must lie in (0, 1)");
      if (c.op.kind == OperatorSpec::Kind::GilbargSerrin && o.has("operator") && c.op.alpha != c.alpha)
        fail(o.at("operator") + "/alpha", "must equal params.alpha");
      c.op.alpha = c.alpha;
      c.q_list = p.nums("q_list");
      if (c.q_list.empty()) c.q_list = {c.q};
      for (std::size_t i = 0; i < c.q_list.size(); ++i)
        if (!(c.q_list[i] >= 1.0)) fail(p.at("q_list") + "/" + std::to_string(i), "must be at least 1");
      c.tol = p.num("tol", 0.1);
      break;
    }
    case ExperimentKind::LogFamily:
      p.allow({"eps"});
      if (2 * c.k > c.n) fail(o.at("k"), "the log family is the k <= n/2 counterexample");
      if (c.op.alpha != 0.0) fail(o.at("operator") + "/alpha", "the log family uses alpha = 0");
      break;
    case ExperimentKind::LocalMax:
      p.allow({"sigma", "radius", "p"});
      c.sigma = p.num("sigma", 0.5);
      if (!(c.sigma > 0.0 && c.sigma < 1.0)) fail(p.at("sigma"), "must lie in (0, 1)");
      c.ball_radius = p.num("radius", 0.5);
      c.p_list = p.nums("p");
      if (c.p_list.empty()) c.p_list = {1.0, 2.0};
      require_positive(c.p_list, p.at("p"));
      break;
    case ExperimentKind::Oscillation:
      p.allow({"radius", "sigma_ladder", "tol", "expected"});
      c.expected = p.num("expected", std::nan(""));
      c.ball_radius = p.num("radius", 0.75);
      c.sigma_ladder = p.nums("sigma_ladder");
      if (c.sigma_ladder.empty()) c.sigma_ladder = {0.125, 0.1875, 0.25, 0.375, 0.5};
      for (std::size_t i = 0; i < c.sigma_ladder.size(); ++i)
        if (!(c.sigma_ladder[i] > 0.0 && c.sigma_ladder[i] < 1.0))
          fail(p.at("sigma_ladder") + "/" + std::to_string(i), "must lie in (0, 1)");
      if (c.sigma_ladder.size() < 2) fail(p.at("sigma_ladder"), "need at least two radii to fit");
      c.tol = p.num("tol", 0.05);
      break;
    case ExperimentKind::W22:
      p.allow({"radius"});
      c.ball_radius = p.num("radius", 0.5);
      break;
    default:
      p.allow({});
      break;
  }
  if (c.kind == ExperimentKind::Sharpness || c.kind == ExperimentKind::LogFamily) {
    c.eps = p.nums("eps");
    if (c.eps.empty())
      for (int e = 3; e <= 10; ++e) c.eps.push_back(std::ldexp(1.0, -e));
    for (std::size_t i = 0; i < c.eps.size(); ++i)
      if (!(c.eps[i] > 0.0 && c.eps[i] < 1.0)) fail(p.at("eps") + "/" + std::to_string(i), "must lie in (0, 1)");
    if (c.eps.size() < 2) fail(p.at("eps"), "need at least two ladder points");
  }
  if (c.kind == ExperimentKind::LocalMax || c.kind == ExperimentKind::Oscillation ||
      c.kind == ExperimentKind::W22) {
    if (!(c.ball_radius > 0.0)) fail(p.at("radius"), "must be positive");
    if (c.domain.kind == DomainSpec::Kind::Ball && c.ball_radius > c.domain.radius)
      fail(p.at("radius"), "inner ball must fit inside the domain");
  }

  if (c.gated() && c.strict) {
    const auto v = c.exponent_rule_violation();
    if (!v.empty()) fail(o.at("q"), v + " (set \"mode\": \"exploratory\" to run anyway)");
  }
  return c;
}

nlohmann::json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    std::ostringstream os;
    std::string what = e.what();
    const auto cut = what.find("syntax error");
    os << source << ":" << line << ":" << col << ": " << (cut == std::string::npos ? what : what.substr(cut));
    throw ConfigError(os.str());
  }
}

std::string read_text_file(const std::string& file) {
  std::ifstream is(file, std::ios::binary);
  if (!is) throw IoError("cannot open " + file);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::pair<int, int> locate_pointer(const std::string& text, const std::string& pointer) {
  std::vector<std::string> path;
  std::size_t pos = 0;
  while (pos < pointer.size()) {
    const auto next = pointer.find('/', pos + 1);
    std::string tok = pointer.substr(pos + 1, next == std::string::npos ? std::string::npos : next - pos - 1);
    if (!tok.empty()) path.push_back(tok);
    if (next == std::string::npos) break;
    pos = next;
  }
  Locator loc(text);
  const auto at = loc.find(path, 0);
  return line_col(text, at == Locator::npos ? loc.best() : at);
}

ConfigError annotate(const std::string& text, const std::string& source, const ConfigFieldError& e) {
  const auto [line, col] = locate_pointer(text, e.pointer());
  std::ostringstream os;
  os << source << ":" << line << ":" << col << ": " << e.pointer() << ": " << e.message();
  return ConfigError(os.str());
}

ExperimentConfig load_config_file(const std::string& file) {
  const std::string text = read_text_file(file);
  const json j = parse_json_text(text, file);
  try {
    return parse_config(j);
  } catch (const ConfigFieldError& e) {
    throw annotate(text, file, e);
  }
}

}  // namespace conelab::lab
