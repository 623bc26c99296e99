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

#include "hypercpf/gatecircuit.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "hypercpf/errors.hpp"

namespace hypercpf {

namespace {

std::string tag(PhotonSlot photon, const char* element) {
  return std::string(photon == PhotonSlot::Control ? "c." : "t.") + element;
}

// First pass through QD1: split both boundary modes by polarization.
StageSteps first_stage(PhotonSlot photon) {
  using namespace mode;
  return {photon == PhotonSlot::Control ? "control_stage1" : "target_stage1",
          {
              ElementStep::pbs(tag(photon, "PBS1"), photon, k1, std::nullopt, k11, k12),
              ElementStep::circulator(tag(photon, "C1"), photon, k12),
              ElementStep::qd_scatter(tag(photon, "QD1"), photon, k12, 1),
              ElementStep::hwp(tag(photon, "HWP1"), photon, k12),
              ElementStep::wfc(tag(photon, "WFC1"), photon, k11),
              ElementStep::pbs(tag(photon, "PBS3"), photon, k2, std::nullopt, k22, k21),
              ElementStep::circulator(tag(photon, "C2"), photon, k21),
              ElementStep::qd_scatter(tag(photon, "QD1"), photon, k21, 1),
              ElementStep::wfc(tag(photon, "WFC2"), photon, k22),
          }};
}

// Recombination and the pass through QD2.
StageSteps second_stage(PhotonSlot photon) {
  using namespace mode;
  return {photon == PhotonSlot::Control ? "control_stage2" : "target_stage2",
          {
              ElementStep::pbs(tag(photon, "PBS2"), photon, k11, k12, k1, kD1),
              ElementStep::wfc(tag(photon, "WFC3"), photon, k1),
              ElementStep::pbs(tag(photon, "PBS4"), photon, k21, std::nullopt, k21, kD2),
              ElementStep::circulator(tag(photon, "C3"), photon, k21),
              ElementStep::qd_scatter(tag(photon, "QD2"), photon, k21, 2),
              ElementStep::circulator(tag(photon, "C4"), photon, k22),
              ElementStep::qd_scatter(tag(photon, "QD2"), photon, k22, 2),
              ElementStep::hwp(tag(photon, "HWP2"), photon, k22),
              ElementStep::pbs(tag(photon, "PBS5"), photon, k22, k21, k2, kD3),
          }};
}

StageSteps detection_stage(PhotonSlot photon) {
  using namespace mode;
  return {photon == PhotonSlot::Control ? "control_detect" : "target_detect",
          {
              ElementStep::detector(tag(photon, "D1"), photon, kD1),
              ElementStep::detector(tag(photon, "D2"), photon, kD2),
              ElementStep::detector(tag(photon, "D3"), photon, kD3),
          }};
}

std::size_t stage_count_for(Checkpoint checkpoint) {
  switch (checkpoint) {
    case Checkpoint::AfterStage1:
      return 1;
    case Checkpoint::AfterStage2:
      return 2;
    case Checkpoint::AfterTarget:
      return 7;
  }
  return 0;
}

}  // namespace

// ModeGraph ----------------------------------------------------------------------

void ModeGraph::validate() const {
  if (!modes) throw ValidationError("ModeGraph: no mode space");
  for (PhotonSlot photon : {PhotonSlot::Control, PhotonSlot::Target}) {
    std::set<ModeId> detector_modes;
    std::map<ModeId, std::set<ModeId>> edges;
    std::set<ModeId> touched;
    for (const auto& stage : stages) {
      for (const auto& step : stage.steps) {
        step.validate(*modes);
        if (step.kind == ElementKind::SpinHadamard || step.photon != photon) continue;
        if (step.kind == ElementKind::Detector) {
          detector_modes.insert(*step.in[0]);
          continue;
        }
        for (ModeId from : step.input_modes()) {
          touched.insert(from);
          for (ModeId to : step.output_modes()) {
            edges[from].insert(to);
            touched.insert(to);
          }
        }
      }
    }
    for (ModeId d : detector_modes) {
      if (edges.contains(d)) {
        throw ValidationError("ModeGraph: detector mode '" + modes->name(photon, d) +
                              "' has outgoing steps");
      }
    }
    std::set<ModeId> reached{modes->first_boundary(), modes->second_boundary()};
    std::vector<ModeId> frontier(reached.begin(), reached.end());
    while (!frontier.empty()) {
      const ModeId m = frontier.back();
      frontier.pop_back();
      for (ModeId next : edges[m])
        if (reached.insert(next).second) frontier.push_back(next);
    }
    for (ModeId m : touched) {
      if (!reached.contains(m)) {
        throw ValidationError("ModeGraph: mode '" + modes->name(photon, m) +
                              "' is unreachable from the inputs");
      }
    }
  }
}

std::vector<DetectorPort> ModeGraph::detectors() const {
  std::vector<DetectorPort> out;
  for (const auto& stage : stages)
    for (const auto& step : stage.steps)
      if (step.kind == ElementKind::Detector) out.push_back({step.photon, *step.in[0]});
  return out;
}

const StageSteps& ModeGraph::stage(std::string_view name) const {
  for (const auto& s : stages)
    if (s.name == name) return s;
  throw ValidationError("ModeGraph: no stage named '" + std::string(name) + "'");
}

ModeGraph build_circuit(const CavityParams& params) {
  ModeGraph graph = build_circuit(emitter_coefficients(params));
  graph.params = params;
  return graph;
}

ModeGraph build_circuit(const EmitterCoeffs& coeffs) {
  ModeGraph graph;
  graph.modes = ModeSpace::standard();
  graph.coeffs = coeffs;
  graph.stages = {
      first_stage(PhotonSlot::Control),
      second_stage(PhotonSlot::Control),
      detection_stage(PhotonSlot::Control),
      {"spin_hadamard",
       {ElementStep::spin_hadamard("He1", 1), ElementStep::spin_hadamard("He2", 2)}},
      first_stage(PhotonSlot::Target),
      second_stage(PhotonSlot::Target),
      detection_stage(PhotonSlot::Target),
  };
  graph.validate();
  return graph;
}

std::string_view to_string(Checkpoint checkpoint) {
  switch (checkpoint) {
    case Checkpoint::AfterStage1:
      return "after_stage1";
    case Checkpoint::AfterStage2:
      return "after_stage2";
    case Checkpoint::AfterTarget:
      return "after_target";
  }
  return "?";
}

SparseState run_stages(const ModeGraph& graph, const SparseState& input, std::size_t stage_count,
                       const StepObserver& observer) {
  if (!(input.modes() == *graph.modes)) {
    throw ModeMismatchError("run_stages: input state does not use the circuit's mode space");
  }
  SparseState state = input;
  const std::size_t n = std::min(stage_count, graph.stages.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& step : graph.stages[i].steps) {
      state = apply_step(state, step, graph.coeffs);
      if (observer) observer(step, state);
    }
  }
  return state;
}

SparseState checkpoint_state(Checkpoint checkpoint, const SparseState& input,
                             const CavityParams& params) {
  return run_stages(build_circuit(params), input, stage_count_for(checkpoint));
}

SparseState ideal_hyper_cpf(const SparseState& input) {
  const ModeId second = input.modes().second_boundary();
  AmplitudeMap out = input.amplitudes();
  for (auto& [label, amp] : out) {
    if (label.pol_c == Polarization::S && label.pol_t == Polarization::S) amp = -amp;
    if (label.spat_c == second && label.spat_t == second) amp = -amp;
  }
  return SparseState(input.mode_space(), std::move(out), input.ledger());
}

GateResult run_hyper_cpf(const SparseState& input, const CavityParams& params,
                         const OutcomePolicy& policy, const FeedForwardTable& feed_forward) {
  return run_hyper_cpf(input, emitter_coefficients(params), policy, feed_forward);
}

GateResult run_hyper_cpf(const SparseState& input, const EmitterCoeffs& coeffs,
                         const OutcomePolicy& policy, const FeedForwardTable& feed_forward) {
  if (std::abs(input.norm_squared() - 1.0) > 1e-9) {
    throw ValidationError("run_hyper_cpf: input state must have unit norm");
  }
  const ModeGraph graph = build_circuit(coeffs);
  if (std::abs(graph.coeffs.c) <= kGateInoperativeThreshold) {
    throw GateInoperativeError("run_hyper_cpf: |c| = " + std::to_string(std::abs(graph.coeffs.c)) +
                               " is at or below the inoperative threshold");
  }

  GateResult result;
  result.coeffs = graph.coeffs;
  result.output_state = run_stages(graph, input, graph.stages.size());
  result.success_probability = result.output_state.norm_squared();
  result.heralded_failure = result.output_state.ledger().heralded;
  result.unheralded_loss = result.output_state.ledger().unheralded;
  result.ideal_state = ideal_hyper_cpf(photon_part(input));

  double worst = 1.0;
  for (auto& branch : measure_spins(result.output_state)) {
    BranchResult br;
    br.outcome = branch.outcome;
    br.probability = branch.probability;
    br.correction = feed_forward[branch.outcome.index()];
    br.corrected_state = apply_feed_forward(branch.state, branch.outcome, feed_forward);
    br.fidelity = fidelity(br.corrected_state, result.ideal_state);
    if (!policy.fixed) {
      worst = std::min(worst, br.fidelity);
    } else if (*policy.fixed == br.outcome) {
      worst = br.fidelity;
    }
    result.spin_branches.push_back(std::move(br));
  }
  result.fidelity_vs_ideal = worst;
  return result;
}

double efficiency_pipeline(const CavityParams& params) {
  return efficiency_pipeline(emitter_coefficients(params));
}

double efficiency_pipeline(const EmitterCoeffs& coeffs) { return std::pow(std::abs(coeffs.c), 8); }

double efficiency_closed_form(double g_over_kappa, double kappa_s_over_kappa, double p) {
  const double g = g_over_kappa;
  const double total = kappa_s_over_kappa + 1.0;
  const double numerator = 65536.0 * std::pow(g, 16) * std::pow(p, 8);
  const double denominator = std::pow(total, 8) * std::pow(4.0 * g * g + total / 10.0, 8);
  return numerator / denominator;
}

}  // namespace hypercpf
