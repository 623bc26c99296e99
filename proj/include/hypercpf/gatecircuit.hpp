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

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hypercpf/hyperstate.hpp"
#include "hypercpf/optics.hpp"
#include "hypercpf/qdcavity.hpp"

namespace hypercpf {

/// Below this |c| the post-selected state is too small to normalize.
inline constexpr double kGateInoperativeThreshold = 1e-6;

struct StageSteps {
  std::string name;
  std::vector<ElementStep> steps;
};

/// The hyper-CPF layout: mode space, emitter coefficients and the ordered
/// element sequence, grouped in stages:
///   control_stage1, control_stage2, control_detect, spin_hadamard,
///   target_stage1, target_stage2, target_detect.
struct ModeGraph {
  std::shared_ptr<const ModeSpace> modes;
  CavityParams params;
  EmitterCoeffs coeffs;
  std::vector<StageSteps> stages;

  /// Port declarations, detector sinks and reachability from the boundary
  /// modes. Throws ValidationError.
  void validate() const;

  std::vector<DetectorPort> detectors() const;
  const StageSteps& stage(std::string_view name) const;
};

ModeGraph build_circuit(const CavityParams& params);

/// Same layout driven directly by emitter coefficients (params left default).
ModeGraph build_circuit(const EmitterCoeffs& coeffs);

enum class Checkpoint { AfterStage1, AfterStage2, AfterTarget };

std::string_view to_string(Checkpoint checkpoint);

using StepObserver = std::function<void(const ElementStep&, const SparseState&)>;

/// Runs stages [0, stage_count) of `graph`, calling `observer` after every step.
SparseState run_stages(const ModeGraph& graph, const SparseState& input, std::size_t stage_count,
                       const StepObserver& observer = {});

/// State after control stage 1, after control stage 2 (detector terms still
/// present) or after the target pass with every detector post-selected.
SparseState checkpoint_state(Checkpoint checkpoint, const SparseState& input,
                             const CavityParams& params);

/// Two independent CPF gates: sign flip on (S, S) and on (second, second)
/// boundary modes.
SparseState ideal_hyper_cpf(const SparseState& input);

struct OutcomePolicy {
  std::optional<SpinOutcome> fixed;  // empty: report all branches

  static OutcomePolicy report_all_branches() { return {}; }
  static OutcomePolicy fix_outcome(SpinOutcome outcome) { return {outcome}; }
};

struct BranchResult {
  SpinOutcome outcome;
  double probability = 0.0;
  FeedForwardOp correction = FeedForwardOp::None;
  SparseState corrected_state;
  double fidelity = 0.0;
};

struct GateResult {
  EmitterCoeffs coeffs;
  /// Post-selected state before the spin measurement.
  SparseState output_state;
  double success_probability = 0.0;
  std::map<std::string, double> heralded_failure;
  double unheralded_loss = 0.0;
  /// Minimum over branches, or the fixed branch's value.
  double fidelity_vs_ideal = 0.0;
  std::vector<BranchResult> spin_branches;
  SparseState ideal_state;
};

/// Full protocol: circuit, post-selection, spin measurement and
/// feed-forward. Throws GateInoperativeError when |c| <= 1e-6.
GateResult run_hyper_cpf(const SparseState& input, const CavityParams& params,
                         const OutcomePolicy& policy = OutcomePolicy::report_all_branches(),
                         const FeedForwardTable& feed_forward = standard_feed_forward());

GateResult run_hyper_cpf(const SparseState& input, const EmitterCoeffs& coeffs,
                         const OutcomePolicy& policy = OutcomePolicy::report_all_branches(),
                         const FeedForwardTable& feed_forward = standard_feed_forward());

/// |c|^8 from the emitter coefficients.
double efficiency_pipeline(const CavityParams& params);
double efficiency_pipeline(const EmitterCoeffs& coeffs);

/// Resonant closed form with gamma = 0.1 kappa, in units kappa = 1.
double efficiency_closed_form(double g_over_kappa, double kappa_s_over_kappa, double p);

}  // namespace hypercpf
