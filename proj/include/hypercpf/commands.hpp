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

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "hypercpf/gatecircuit.hpp"
#include "hypercpf/run_config.hpp"
#include "json.hpp"

namespace hypercpf {

/// GateResult plus the resolved run parameters, as written by `simulate`.
nlohmann::json gate_result_to_json(const GateResult& result, const RunConfig& config);

/// Runs the gate for `config`. Throws GateInoperativeError when |c| is too small.
nlohmann::json cmd_simulate(const RunConfig& config);

struct SweepRow {
  double axis1 = 0.0;
  double axis2 = 0.0;
  double eta_pipeline = 0.0;
  double eta_closed_form = 0.0;  // NaN when the closed form does not apply
  double fidelity = 0.0;         // NaN when the gate is inoperative
};

struct SweepTable {
  AxisKind axis1 = AxisKind::GOverKappa;
  AxisKind axis2 = AxisKind::KappaSOverKappa;
  nlohmann::json header;
  std::vector<SweepRow> rows;  // axis1-major grid order
};

/// Resonance with gamma = 0.1 kappa: the closed-form efficiency is valid.
bool closed_form_applies(const CavityParams& params);

/// Evaluates the two-axis grid on `workers` threads (0 = config.workers,
/// then hardware concurrency). Row order never depends on scheduling.
SweepTable cmd_sweep(const RunConfig& config, std::size_t workers = 0);

/// Comment header lines ("# ...") then
/// axis1,axis2,eta_pipeline,eta_closed_form,fidelity
void write_csv(const SweepTable& table, std::ostream& out);

/// Random draws used by the verification suite: g/kappa in [0.2, 5],
/// kappa_s/kappa in [0, 2], gamma/kappa in [0.05, 0.5], p in [0.3, 1],
/// detunings within +-kappa.
CavityParams random_params(std::mt19937_64& rng);
InputAmplitudes random_input(std::mt19937_64& rng);

struct VerifyOptions {
  std::uint64_t seed = 42;
  std::size_t draws = 100;
  bool oracle = true;
  /// Flip the sign of the +- correction; used to show the suite catches it.
  bool mutate_feed_forward = false;
};

struct VerifyCheck {
  std::string name;
  double tolerance = 0.0;
  double worst = 0.0;
  bool pass = true;
};

struct VerifyReport {
  bool pass = true;
  std::vector<VerifyCheck> checks;
  std::string text;
};

VerifyReport cmd_verify(const VerifyOptions& options);

}  // namespace hypercpf
