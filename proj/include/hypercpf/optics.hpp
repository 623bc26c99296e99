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

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hypercpf/hyperstate.hpp"
#include "hypercpf/qdcavity.hpp"

namespace hypercpf {

enum class ElementKind { PBS, HWP, WFC, QDScatter, Circulator, Detector, SpinHadamard };

std::string_view to_string(ElementKind kind);

/// One optical (or spin) element acting on a SparseState.
///
/// PBS ports follow the usual four-port convention: F transmits
/// in[k] <-> out[k], S reflects in[k] <-> out[1-k]. An input port may be left
/// empty (vacuum). An input may share its mode with the output on the same
/// side, meaning the transmitted light keeps the path name. Single-mode
/// elements (HWP, WFC, QDScatter, Circulator, Detector) use `in[0]` only.
struct ElementStep {
  ElementKind kind = ElementKind::Circulator;
  std::string name;
  PhotonSlot photon = PhotonSlot::Control;
  std::array<std::optional<ModeId>, 2> in{};
  std::array<std::optional<ModeId>, 2> out{};
  int spin_index = 0;

  static ElementStep pbs(std::string name, PhotonSlot photon, std::optional<ModeId> in0,
                         std::optional<ModeId> in1, ModeId out0, ModeId out1);
  static ElementStep hwp(std::string name, PhotonSlot photon, ModeId mode);
  static ElementStep wfc(std::string name, PhotonSlot photon, ModeId mode);
  static ElementStep qd_scatter(std::string name, PhotonSlot photon, ModeId mode, int spin_index);
  static ElementStep circulator(std::string name, PhotonSlot photon, ModeId mode);
  static ElementStep detector(std::string name, PhotonSlot photon, ModeId mode);
  static ElementStep spin_hadamard(std::string name, int spin_index);

  /// Modes light enters through / leaves by. Single-mode pass-through
  /// elements report the same mode on both sides; detectors have no outputs.
  std::vector<ModeId> input_modes() const;
  std::vector<ModeId> output_modes() const;

  /// Throws ValidationError if the step is malformed for `modes`.
  void validate(const ModeSpace& modes) const;
};

enum class FeedForwardOp { None, SpatialSigmaZ, PolarizedSigmaZ, Both };

std::string_view to_string(FeedForwardOp op);

struct SpinOutcome {
  SpinSign spin1 = SpinSign::Plus;
  SpinSign spin2 = SpinSign::Plus;

  std::size_t index() const;  // ++ -> 0, +- -> 1, -+ -> 2, -- -> 3
  std::string label() const;  // e.g. "+-"
  static SpinOutcome parse(std::string_view text);
  bool operator==(const SpinOutcome&) const = default;
};

/// The four outcomes in index order.
std::array<SpinOutcome, 4> all_spin_outcomes();

/// Corrections on the control photon indexed by SpinOutcome::index().
using FeedForwardTable = std::array<FeedForwardOp, 4>;

/// ++ none, +- spatial sigma_z, -+ polarized sigma_z, -- both.
/// The target photon is never corrected.
FeedForwardTable standard_feed_forward();

SparseState apply_pbs(const SparseState& state, const std::array<std::optional<ModeId>, 2>& in_modes,
                      const std::array<ModeId, 2>& out_modes, PhotonSlot photon);

/// Half-wave plate at 0 degrees: F <-> S on `mode`.
SparseState apply_hwp(const SparseState& state, ModeId mode, PhotonSlot photon);

/// Multiplies the amplitudes on `mode` by coeffs.c and books the removed
/// mass as unheralded loss.
SparseState apply_wfc(const SparseState& state, ModeId mode, PhotonSlot photon,
                      const EmitterCoeffs& coeffs);

/// Photon-dot scattering on `mode`, acting jointly on the photon's
/// polarization and the indexed spin:
///   F,+ -> c S,- + f F,+    F,- -> c S,+ + f F,-
///   S,+ -> c F,- + f S,+    S,- -> c F,+ + f S,-
SparseState apply_qd_scatter(const SparseState& state, ModeId mode, PhotonSlot photon,
                             int spin_index, const EmitterCoeffs& coeffs);

SparseState apply_spin_hadamard(const SparseState& state, int spin_index);

struct DetectorPort {
  PhotonSlot photon = PhotonSlot::Control;
  ModeId mode = 0;
};

struct DetectionResult {
  SparseState state;
  /// Squared mass removed, keyed by detector mode name.
  std::map<std::string, double> removed;
};

/// Removes every amplitude whose photon sits on a detector mode and books it
/// as heralded loss.
DetectionResult detect_and_postselect(const SparseState& state,
                                      const std::vector<DetectorPort>& detectors);

struct SpinBranch {
  SpinOutcome outcome;
  double probability = 0.0;  // relative to the measured state's norm
  SparseState state;         // unnormalized, spins detached
};

/// Projects both spins on |+-1>|+-2>. Throws ZeroNormError on a zero state.
std::array<SpinBranch, 4> measure_spins(const SparseState& state);

SparseState apply_feed_forward_op(const SparseState& state, FeedForwardOp op, PhotonSlot photon);

SparseState apply_feed_forward(const SparseState& state, SpinOutcome outcome,
                               const FeedForwardTable& table = standard_feed_forward());

/// Dispatches `step`; `coeffs` is consulted by WFC and QDScatter only.
/// Detector steps are applied through detect_and_postselect.
SparseState apply_step(const SparseState& state, const ElementStep& step,
                       const EmitterCoeffs& coeffs);

}  // namespace hypercpf
