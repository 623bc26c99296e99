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

#include "hypercpf/optics.hpp"

#include <algorithm>
#include <cmath>

#include "hypercpf/errors.hpp"

namespace hypercpf {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

void require_mode(const SparseState& state, PhotonSlot photon, ModeId mode, const char* op) {
  require(state.modes().contains(photon, mode),
          std::string(op) + ": mode id not declared for the " + std::string(to_string(photon)) +
              " photon");
}

void require_spin_index(int index, const char* op) {
  require(index == 1 || index == 2, std::string(op) + ": spin index must be 1 or 2");
}

SpinSign flipped(SpinSign sign) {
  return sign == SpinSign::Plus ? SpinSign::Minus : SpinSign::Plus;
}

// Resolves a PBS port pair to the partner mode for `mode`, or nullopt when
// `mode` is not on either side of the swap.
std::optional<ModeId> swap_partner(ModeId mode, std::optional<ModeId> a, std::optional<ModeId> b) {
  if (!a || !b) return std::nullopt;
  if (mode == *a) return *b;
  if (mode == *b) return *a;
  return std::nullopt;
}

void validate_pbs_ports(const std::array<std::optional<ModeId>, 2>& in,
                        const std::array<ModeId, 2>& out) {
  require(in[0] || in[1], "PBS: at least one input port must be connected");
  require(out[0] != out[1], "PBS: output modes collide");
  require(!(in[0] && in[1] && *in[0] == *in[1]), "PBS: input modes collide");
  require(!(in[0] && *in[0] == out[1]), "PBS: input 0 collides with the reflect output");
  require(!(in[1] && *in[1] == out[0]), "PBS: input 1 collides with the reflect output");
}

}  // namespace

std::string_view to_string(ElementKind kind) {
  switch (kind) {
    case ElementKind::PBS:
      return "PBS";
    case ElementKind::HWP:
      return "HWP";
    case ElementKind::WFC:
      return "WFC";
    case ElementKind::QDScatter:
      return "QDScatter";
    case ElementKind::Circulator:
      return "Circulator";
    case ElementKind::Detector:
      return "Detector";
    case ElementKind::SpinHadamard:
      return "SpinHadamard";
  }
  return "?";
}

std::string_view to_string(FeedForwardOp op) {
  switch (op) {
    case FeedForwardOp::None:
      return "none";
    case FeedForwardOp::SpatialSigmaZ:
      return "spatial_sigma_z";
    case FeedForwardOp::PolarizedSigmaZ:
      return "polarized_sigma_z";
    case FeedForwardOp::Both:
      return "both";
  }
  return "?";
}

// ElementStep ------------------------------------------------------------------

ElementStep ElementStep::pbs(std::string name, PhotonSlot photon, std::optional<ModeId> in0,
                             std::optional<ModeId> in1, ModeId out0, ModeId out1) {
  validate_pbs_ports({in0, in1}, {out0, out1});
  ElementStep step;
  step.kind = ElementKind::PBS;
  step.name = std::move(name);
  step.photon = photon;
  step.in = {in0, in1};
  step.out = {out0, out1};
  return step;
}

namespace {

ElementStep single_mode(ElementKind kind, std::string name, PhotonSlot photon, ModeId mode) {
  ElementStep step;
  step.kind = kind;
  step.name = std::move(name);
  step.photon = photon;
  step.in[0] = mode;
  if (kind != ElementKind::Detector) step.out[0] = mode;
  return step;
}

}  // namespace

ElementStep ElementStep::hwp(std::string name, PhotonSlot photon, ModeId mode) {
  return single_mode(ElementKind::HWP, std::move(name), photon, mode);
}

ElementStep ElementStep::wfc(std::string name, PhotonSlot photon, ModeId mode) {
  return single_mode(ElementKind::WFC, std::move(name), photon, mode);
}

ElementStep ElementStep::qd_scatter(std::string name, PhotonSlot photon, ModeId mode,
                                    int spin_index) {
  require_spin_index(spin_index, "ElementStep::qd_scatter");
  auto step = single_mode(ElementKind::QDScatter, std::move(name), photon, mode);
  step.spin_index = spin_index;
  return step;
}

ElementStep ElementStep::circulator(std::string name, PhotonSlot photon, ModeId mode) {
  return single_mode(ElementKind::Circulator, std::move(name), photon, mode);
}

ElementStep ElementStep::detector(std::string name, PhotonSlot photon, ModeId mode) {
  return single_mode(ElementKind::Detector, std::move(name), photon, mode);
}

ElementStep ElementStep::spin_hadamard(std::string name, int spin_index) {
  require_spin_index(spin_index, "ElementStep::spin_hadamard");
  ElementStep step;
  step.kind = ElementKind::SpinHadamard;
  step.name = std::move(name);
  step.spin_index = spin_index;
  return step;
}

std::vector<ModeId> ElementStep::input_modes() const {
  std::vector<ModeId> modes;
  for (const auto& port : in)
    if (port) modes.push_back(*port);
  return modes;
}

std::vector<ModeId> ElementStep::output_modes() const {
  std::vector<ModeId> modes;
  for (const auto& port : out)
    if (port) modes.push_back(*port);
  return modes;
}

void ElementStep::validate(const ModeSpace& modes) const {
  const std::string where = "ElementStep '" + name + "': ";
  for (ModeId m : input_modes()) require(modes.contains(photon, m), where + "undeclared input mode");
  for (ModeId m : output_modes())
    require(modes.contains(photon, m), where + "undeclared output mode");
  switch (kind) {
    case ElementKind::PBS:
      require(out[0] && out[1], where + "PBS needs exactly two output modes");
      validate_pbs_ports(in, {*out[0], *out[1]});
      break;
    case ElementKind::Detector:
      require(in[0] && !in[1] && !out[0] && !out[1],
              where + "detector needs exactly one input and no output");
      break;
    case ElementKind::QDScatter:
      require(spin_index == 1 || spin_index == 2, where + "QD scatter needs one spin index");
      [[fallthrough]];
    case ElementKind::HWP:
    case ElementKind::WFC:
    case ElementKind::Circulator:
      require(in[0] && out[0] && *in[0] == *out[0] && !in[1] && !out[1],
              where + "single-mode element needs one mode");
      break;
    case ElementKind::SpinHadamard:
      require(spin_index == 1 || spin_index == 2, where + "spin Hadamard needs a spin index");
      require(!in[0] && !in[1] && !out[0] && !out[1], where + "spin Hadamard has no ports");
      break;
  }
}

// SpinOutcome ------------------------------------------------------------------

std::size_t SpinOutcome::index() const {
  return static_cast<std::size_t>(spin1) * 2 + static_cast<std::size_t>(spin2);
}

std::string SpinOutcome::label() const {
  return std::string(to_string(spin1)) + std::string(to_string(spin2));
}

SpinOutcome SpinOutcome::parse(std::string_view text) {
  auto sign = [&](char ch) {
    if (ch == '+') return SpinSign::Plus;
    if (ch == '-') return SpinSign::Minus;
    throw ValidationError("SpinOutcome: expected '+' or '-', got '" + std::string(text) + "'");
  };
  if (text.size() != 2) {
    throw ValidationError("SpinOutcome: expected two signs, got '" + std::string(text) + "'");
  }
  return {sign(text[0]), sign(text[1])};
}

std::array<SpinOutcome, 4> all_spin_outcomes() {
  return {SpinOutcome{SpinSign::Plus, SpinSign::Plus}, SpinOutcome{SpinSign::Plus, SpinSign::Minus},
          SpinOutcome{SpinSign::Minus, SpinSign::Plus},
          SpinOutcome{SpinSign::Minus, SpinSign::Minus}};
}

FeedForwardTable standard_feed_forward() {
  return {FeedForwardOp::None, FeedForwardOp::SpatialSigmaZ, FeedForwardOp::PolarizedSigmaZ,
          FeedForwardOp::Both};
}

// Elements ---------------------------------------------------------------------

SparseState apply_pbs(const SparseState& state, const std::array<std::optional<ModeId>, 2>& in_modes,
                      const std::array<ModeId, 2>& out_modes, PhotonSlot photon) {
  validate_pbs_ports(in_modes, out_modes);
  for (const auto& m : in_modes)
    if (m) require_mode(state, photon, *m, "apply_pbs");
  for (ModeId m : out_modes) require_mode(state, photon, m, "apply_pbs");

  AmplitudeMap out;
  for (const auto& [label, amp] : state.amplitudes()) {
    const Polarization pol = label.pol(photon);
    const ModeId spat = label.spat(photon);
    std::optional<ModeId> target;
    if (pol == Polarization::F) {
      target = swap_partner(spat, in_modes[0], out_modes[0]);
      if (!target) target = swap_partner(spat, in_modes[1], out_modes[1]);
    } else {
      target = swap_partner(spat, in_modes[0], out_modes[1]);
      if (!target) target = swap_partner(spat, in_modes[1], out_modes[0]);
    }
    accumulate(out, label.with_photon(photon, pol, target.value_or(spat)), amp);
  }
  return SparseState(state.mode_space(), std::move(out), state.ledger());
}

SparseState apply_hwp(const SparseState& state, ModeId mode, PhotonSlot photon) {
  require_mode(state, photon, mode, "apply_hwp");
  AmplitudeMap out;
  for (const auto& [label, amp] : state.amplitudes()) {
    if (label.spat(photon) == mode) {
      accumulate(out, label.with_photon(photon, flipped(label.pol(photon)), mode), amp);
    } else {
      accumulate(out, label, amp);
    }
  }
  return SparseState(state.mode_space(), std::move(out), state.ledger());
}

SparseState apply_wfc(const SparseState& state, ModeId mode, PhotonSlot photon,
                      const EmitterCoeffs& coeffs) {
  require_mode(state, photon, mode, "apply_wfc");
  AmplitudeMap out = state.amplitudes();
  double mode_mass = 0.0;
  for (auto& [label, amp] : out) {
    if (label.spat(photon) != mode) continue;
    mode_mass += std::norm(amp);
    amp *= coeffs.c;
  }
  LossLedger ledger = state.ledger();
  ledger.unheralded += (1.0 - std::norm(coeffs.c)) * mode_mass;
  return SparseState(state.mode_space(), std::move(out), std::move(ledger));
}

SparseState apply_qd_scatter(const SparseState& state, ModeId mode, PhotonSlot photon,
                             int spin_index, const EmitterCoeffs& coeffs) {
  require_mode(state, photon, mode, "apply_qd_scatter");
  require_spin_index(spin_index, "apply_qd_scatter");

  const Spin spins[] = {Spin::Up, Spin::Down};
  const SpinSign signs[] = {SpinSign::Plus, SpinSign::Minus};

  AmplitudeMap out;
  for (const auto& [label, amp] : state.amplitudes()) {
    if (label.spat(photon) != mode) {
      accumulate(out, label, amp);
      continue;
    }
    const Spin spin = label.spin(spin_index);
    require(spin != Spin::Detached, "apply_qd_scatter: state has no spin factor");
    const Polarization pol = label.pol(photon);
    // Rotate the spin into the +/- basis, scatter, rotate back.
    for (SpinSign sign : signs) {
      const Complex in_pm = amp * spin_overlap(sign, spin);
      const struct {
        Polarization pol;
        SpinSign sign;
        Complex weight;
      } branches[] = {{flipped(pol), flipped(sign), coeffs.c}, {pol, sign, coeffs.f}};
      for (const auto& br : branches) {
        for (Spin s : spins) {
          const HyperBasisLabel next =
              label.with_photon(photon, br.pol, mode).with_spin(spin_index, s);
          accumulate(out, next, in_pm * br.weight * spin_overlap(br.sign, s));
        }
      }
    }
  }
  SparseState result(state.mode_space(), std::move(out), state.ledger());
  LossLedger ledger = state.ledger();
  ledger.unheralded += state.norm_squared() - result.norm_squared();
  return result.with_ledger(std::move(ledger));
}

SparseState apply_spin_hadamard(const SparseState& state, int spin_index) {
  require_spin_index(spin_index, "apply_spin_hadamard");
  AmplitudeMap out;
  for (const auto& [label, amp] : state.amplitudes()) {
    const Spin spin = label.spin(spin_index);
    require(spin != Spin::Detached, "apply_spin_hadamard: state has no spin factor");
    const double down_sign = spin == Spin::Up ? 1.0 : -1.0;
    accumulate(out, label.with_spin(spin_index, Spin::Up), amp * kInvSqrt2);
    accumulate(out, label.with_spin(spin_index, Spin::Down), amp * (kInvSqrt2 * down_sign));
  }
  return SparseState(state.mode_space(), std::move(out), state.ledger());
}

DetectionResult detect_and_postselect(const SparseState& state,
                                      const std::vector<DetectorPort>& detectors) {
  std::map<std::string, double> removed;
  for (const auto& det : detectors) {
    require_mode(state, det.photon, det.mode, "detect_and_postselect");
    removed.try_emplace(state.modes().name(det.photon, det.mode), 0.0);
  }
  AmplitudeMap kept;
  for (const auto& [label, amp] : state.amplitudes()) {
    const DetectorPort* hit = nullptr;
    for (const auto& det : detectors) {
      if (label.spat(det.photon) == det.mode) {
        hit = &det;
        break;
      }
    }
    if (hit) {
      removed[state.modes().name(hit->photon, hit->mode)] += std::norm(amp);
    } else {
      kept.emplace(label, amp);
    }
  }
  LossLedger ledger = state.ledger();
  for (const auto& [name, mass] : removed) ledger.heralded[name] += mass;
  return {SparseState(state.mode_space(), std::move(kept), std::move(ledger)), std::move(removed)};
}

std::array<SpinBranch, 4> measure_spins(const SparseState& state) {
  const double total = state.norm_squared();
  if (total == 0.0) throw ZeroNormError("measure_spins: state has zero norm");
  const auto outcomes = all_spin_outcomes();
  std::array<SpinBranch, 4> branches{
      SpinBranch{outcomes[0], 0.0, SparseState(state.mode_space())},
      SpinBranch{outcomes[1], 0.0, SparseState(state.mode_space())},
      SpinBranch{outcomes[2], 0.0, SparseState(state.mode_space())},
      SpinBranch{outcomes[3], 0.0, SparseState(state.mode_space())}};
  for (auto& branch : branches) {
    branch.state = project_spins(state, branch.outcome.spin1, branch.outcome.spin2);
    branch.probability = branch.state.norm_squared() / total;
  }
  return branches;
}

SparseState apply_feed_forward_op(const SparseState& state, FeedForwardOp op, PhotonSlot photon) {
  const bool spatial = op == FeedForwardOp::SpatialSigmaZ || op == FeedForwardOp::Both;
  const bool polarized = op == FeedForwardOp::PolarizedSigmaZ || op == FeedForwardOp::Both;
  const ModeId second = state.modes().second_boundary();
  AmplitudeMap out = state.amplitudes();
  for (auto& [label, amp] : out) {
    if (spatial && label.spat(photon) == second) amp = -amp;
    if (polarized && label.pol(photon) == Polarization::S) amp = -amp;
  }
  return SparseState(state.mode_space(), std::move(out), state.ledger());
}

SparseState apply_feed_forward(const SparseState& state, SpinOutcome outcome,
                               const FeedForwardTable& table) {
  return apply_feed_forward_op(state, table[outcome.index()], PhotonSlot::Control);
}

SparseState apply_step(const SparseState& state, const ElementStep& step,
                       const EmitterCoeffs& coeffs) {
  step.validate(state.modes());
  switch (step.kind) {
    case ElementKind::PBS:
      return apply_pbs(state, step.in, {*step.out[0], *step.out[1]}, step.photon);
    case ElementKind::HWP:
      return apply_hwp(state, *step.in[0], step.photon);
    case ElementKind::WFC:
      return apply_wfc(state, *step.in[0], step.photon, coeffs);
    case ElementKind::QDScatter:
      return apply_qd_scatter(state, *step.in[0], step.photon, step.spin_index, coeffs);
    case ElementKind::Circulator:
      return state;
    case ElementKind::Detector:
      return detect_and_postselect(state, {{step.photon, *step.in[0]}}).state;
    case ElementKind::SpinHadamard:
      return apply_spin_hadamard(state, step.spin_index);
  }
  return state;
}

}  // namespace hypercpf
