// Copyright 2026 The hypercpf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hypercpf/run_config.hpp"

#include <cmath>
#include <fstream>

#include "hypercpf/errors.hpp"

namespace hypercpf {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ValidationError("config field '" + field + "': " + what);
}

const json& require_object(const json& doc, const std::string& field) {
  if (!doc.is_object()) fail(field, "expected an object");
  return doc;
}

double get_number(const json& obj, const std::string& key, const std::string& path,
                  std::optional<double> fallback = std::nullopt) {
  const std::string field = path + "." + key;
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    fail(field, "missing");
  }
  const json& v = obj.at(key);
  if (!v.is_number()) fail(field, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(field, "must be finite");
  return x;
}

Complex parse_complex(const json& v, const std::string& field) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    fail(field, "expected a complex number [re, im]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

ComplexPair parse_pair(const json& obj, const std::string& key, const std::string& path) {
  const std::string field = path + "." + key;
  if (!obj.contains(key)) return {1.0, 0.0};
  const json& v = obj.at(key);
  if (!v.is_array() || v.size() != 2) fail(field, "expected a pair of complex numbers");
  ComplexPair pair{parse_complex(v[0], field + "[0]"), parse_complex(v[1], field + "[1]")};
  const double n = std::norm(pair[0]) + std::norm(pair[1]);
  if (!(std::abs(n - 1.0) <= 1e-9)) fail(field, "pair is not normalized");
  return pair;
}

CavityParams parse_cavity(const json& obj, std::string& units) {
  const std::string path = "cavity";
  require_object(obj, path);
  units = obj.value("units", std::string("kappa"));
  CavityParams p;
  if (units == "kappa") {
    const double kappa = get_number(obj, "kappa", path, 1.0);
    if (!(kappa > 0.0)) fail(path + ".kappa", "must be > 0");
    p.g = get_number(obj, "g", path) / kappa;
    p.kappa_s = get_number(obj, "kappa_s", path, 0.0) / kappa;
    p.gamma = get_number(obj, "gamma", path, 0.1 * kappa) / kappa;
    p.omega_photon = get_number(obj, "omega_photon", path, 0.0) / kappa;
    p.omega_cavity = get_number(obj, "omega_cavity", path, 0.0) / kappa;
    p.omega_exciton = get_number(obj, "omega_exciton", path, 0.0) / kappa;
  } else if (units == "ueV") {
    const double kappa_s = get_number(obj, "kappa_s", path, 0.0);
    double kappa = 0.0;
    if (obj.contains("kappa")) {
      kappa = get_number(obj, "kappa", path);
    } else if (obj.contains("two_kappa_plus_kappa_s")) {
      kappa = (get_number(obj, "two_kappa_plus_kappa_s", path) - kappa_s) / 2.0;
    } else {
      fail(path + ".kappa", "missing (or give two_kappa_plus_kappa_s)");
    }
    if (!(kappa > 0.0)) fail(path + ".kappa", "must be > 0");
    p.g = get_number(obj, "g", path) / kappa;
    p.kappa_s = kappa_s / kappa;
    p.gamma = get_number(obj, "gamma", path, 0.1 * kappa) / kappa;
    p.omega_photon = get_number(obj, "omega_photon", path, 0.0) / kappa;
    p.omega_cavity = get_number(obj, "omega_cavity", path, 0.0) / kappa;
    p.omega_exciton = get_number(obj, "omega_exciton", path, 0.0) / kappa;
  } else {
    fail(path + ".units", "expected \"kappa\" or \"ueV\"");
  }
  p.kappa = 1.0;
  p.p = get_number(obj, "p", path, 1.0);
  try {
    p.validate();
  } catch (const ValidationError& e) {
    fail(path, e.what());
  }
  return p;
}

SweepAxis parse_axis(const json& obj, const std::string& path) {
  require_object(obj, path);
  SweepAxis axis;
  if (!obj.contains("name") || !obj.at("name").is_string()) fail(path + ".name", "missing");
  try {
    axis.kind = parse_axis_kind(obj.at("name").get<std::string>());
  } catch (const ValidationError& e) {
    fail(path + ".name", e.what());
  }
  axis.start = get_number(obj, "start", path);
  axis.stop = get_number(obj, "stop", path);
  const double count = get_number(obj, "count", path);
  if (count < 2 || count != std::floor(count)) fail(path + ".count", "must be an integer >= 2");
  axis.count = static_cast<std::size_t>(count);
  if (!(axis.start < axis.stop)) fail(path, "start must be < stop");
  if (obj.contains("open_start")) {
    if (!obj.at("open_start").is_boolean()) fail(path + ".open_start", "expected a boolean");
    axis.open_start = obj.at("open_start").get<bool>();
  }
  return axis;
}

void apply_axis(CavityParams& p, AxisKind kind, double value) {
  switch (kind) {
    case AxisKind::GOverKappa:
      p.g = value * p.kappa;
      break;
    case AxisKind::KappaSOverKappa:
      p.kappa_s = value * p.kappa;
      break;
    case AxisKind::GammaOverKappa:
      p.gamma = value * p.kappa;
      break;
    case AxisKind::P:
      p.p = value;
      break;
    case AxisKind::PSquared:
      p.p = value >= 0.0 ? std::sqrt(value) : std::nan("");
      break;
    case AxisKind::GOverSqrtKappaGamma:
      p.g = value * std::sqrt(p.kappa * p.gamma);
      break;
  }
}

}  // namespace

std::string_view to_string(AxisKind kind) {
  switch (kind) {
    case AxisKind::GOverKappa:
      return "g_over_kappa";
    case AxisKind::KappaSOverKappa:
      return "kappa_s_over_kappa";
    case AxisKind::GammaOverKappa:
      return "gamma_over_kappa";
    case AxisKind::P:
      return "p";
    case AxisKind::PSquared:
      return "p_squared";
    case AxisKind::GOverSqrtKappaGamma:
      return "g_over_sqrt_kappa_gamma";
  }
  return "?";
}

AxisKind parse_axis_kind(std::string_view name) {
  for (AxisKind k : {AxisKind::GOverKappa, AxisKind::KappaSOverKappa, AxisKind::GammaOverKappa,
                     AxisKind::P, AxisKind::PSquared, AxisKind::GOverSqrtKappaGamma}) {
    if (to_string(k) == name) return k;
  }
  throw ValidationError("unknown sweep axis '" + std::string(name) + "'");
}

std::vector<double> SweepAxis::values() const {
  std::vector<double> out;
  out.reserve(count);
  if (open_start) {
    for (std::size_t i = 1; i <= count; ++i) {
      out.push_back(start + (stop - start) * static_cast<double>(i) / static_cast<double>(count));
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      out.push_back(start +
                    (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1));
    }
  }
  return out;
}

RunConfig RunConfig::from_json(const json& doc) {
  require_object(doc, "<root>");
  RunConfig cfg;
  if (!doc.contains("cavity")) fail("cavity", "missing");
  cfg.params = parse_cavity(doc.at("cavity"), cfg.input_units);

  if (doc.contains("input")) {
    const json& in = require_object(doc.at("input"), "input");
    cfg.input.alpha = parse_pair(in, "alpha", "input");
    cfg.input.beta = parse_pair(in, "beta", "input");
    cfg.input.lambda = parse_pair(in, "lambda", "input");
    cfg.input.varpi = parse_pair(in, "varpi", "input");
  }

  if (doc.contains("outcome_policy")) {
    const json& pol = doc.at("outcome_policy");
    if (!pol.is_string()) fail("outcome_policy", "expected a string");
    const auto text = pol.get<std::string>();
    if (text != "report_all_branches") {
      try {
        cfg.policy = OutcomePolicy::fix_outcome(SpinOutcome::parse(text));
      } catch (const ValidationError& e) {
        fail("outcome_policy", e.what());
      }
    }
  }

  if (doc.contains("sweep")) {
    const json& sweep = require_object(doc.at("sweep"), "sweep");
    if (sweep.contains("axes")) {
      const json& axes = sweep.at("axes");
      if (!axes.is_array()) fail("sweep.axes", "expected an array");
      for (std::size_t i = 0; i < axes.size(); ++i) {
        cfg.axes.push_back(parse_axis(axes[i], "sweep.axes[" + std::to_string(i) + "]"));
      }
    }
    if (sweep.contains("workers")) {
      const double w = get_number(sweep, "workers", "sweep");
      if (w < 0 || w != std::floor(w)) fail("sweep.workers", "must be a non-negative integer");
      cfg.workers = static_cast<std::size_t>(w);
    }
  }
  return cfg;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("config file '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return from_json(doc);
}

CavityParams RunConfig::at_point(double axis1, double axis2) const {
  CavityParams p = params;
  const double values[] = {axis1, axis2};
  // g/sqrt(kappa gamma) depends on gamma, so apply it after the others.
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t i = 0; i < axes.size() && i < 2; ++i) {
      const bool derived = axes[i].kind == AxisKind::GOverSqrtKappaGamma;
      if (derived == (pass == 1)) apply_axis(p, axes[i].kind, values[i]);
    }
  }
  p.validate();
  return p;
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json RunConfig::params_json() const {
  return {{"units", "kappa"},
          {"input_units", input_units},
          {"g", params.g},
          {"kappa", params.kappa},
          {"kappa_s", params.kappa_s},
          {"gamma", params.gamma},
          {"p", params.p},
          {"omega_photon", params.omega_photon},
          {"omega_cavity", params.omega_cavity},
          {"omega_exciton", params.omega_exciton}};
}

json RunConfig::input_json() const {
  auto pair = [](const ComplexPair& p) {
    return json::array({complex_to_json(p[0]), complex_to_json(p[1])});
  };
  return {{"alpha", pair(input.alpha)},
          {"beta", pair(input.beta)},
          {"lambda", pair(input.lambda)},
          {"varpi", pair(input.varpi)}};
}

}  // namespace hypercpf
