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

#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "hypercpf/gatecircuit.hpp"
#include "hypercpf/hyperstate.hpp"
#include "hypercpf/qdcavity.hpp"
#include "json.hpp"

namespace hypercpf {

/// Sweep axis identifiers, matching the efficiency plot axes.
enum class AxisKind {
  GOverKappa,
  KappaSOverKappa,
  GammaOverKappa,
  P,
  PSquared,
  GOverSqrtKappaGamma,
};

std::string_view to_string(AxisKind kind);
AxisKind parse_axis_kind(std::string_view name);

struct SweepAxis {
  AxisKind kind = AxisKind::GOverKappa;
  double start = 0.0;
  double stop = 1.0;
  std::size_t count = 2;
  /// Drop the start value: `count` points evenly spaced on (start, stop].
  bool open_start = false;

  std::vector<double> values() const;
};

/// Everything one CLI invocation needs. Cavity parameters are stored
/// resolved to units of kappa.
struct RunConfig {
  CavityParams params;
  std::string input_units = "kappa";
  InputAmplitudes input;
  OutcomePolicy policy;
  std::vector<SweepAxis> axes;
  std::size_t workers = 0;  // 0: hardware concurrency

  /// Throws ValidationError whose message names the offending field.
  static RunConfig from_json(const nlohmann::json& doc);
  static RunConfig load(const std::filesystem::path& path);

  /// Applies axis values to a copy of `params`; the result is validated.
  CavityParams at_point(double axis1, double axis2) const;

  nlohmann::json params_json() const;
  nlohmann::json input_json() const;
};

nlohmann::json complex_to_json(Complex z);

}  // namespace hypercpf
