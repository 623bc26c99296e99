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
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hypercpf/qdcavity.hpp"
#include "json.hpp"

namespace hypercpf {

enum class Polarization : std::uint8_t { F = 0, S = 1 };

/// Electron-spin label. Amplitudes are always stored in the up/down basis;
/// `Detached` marks a state whose spin factor has been projected out.
enum class Spin : std::uint8_t { Up = 0, Down = 1, Detached = 2 };

/// Outcome of a spin measurement in the {|+>, |->} basis.
enum class SpinSign : std::uint8_t { Plus = 0, Minus = 1 };

enum class PhotonSlot : std::uint8_t { Control = 0, Target = 1 };

using ModeId = std::uint8_t;

Polarization flipped(Polarization pol);
std::string_view to_string(Polarization pol);
std::string_view to_string(Spin spin);
std::string_view to_string(SpinSign sign);
std::string_view to_string(PhotonSlot slot);

/// <sign|spin> for spin in {Up, Down}.
double spin_overlap(SpinSign sign, Spin spin);

/// Named spatial modes available to each photon.
///
/// The control photon owns one list of names and the target photon another.
/// Two of the names per photon are the input/output boundary modes; the
/// spatial sigma_z correction acts on the second of them.
class ModeSpace {
 public:
  ModeSpace(std::vector<std::string> control_modes, std::vector<std::string> target_modes,
            ModeId first_boundary, ModeId second_boundary);

  /// The nine-mode-per-photon space of the hyper-CPF layout:
  /// a1 a2 a11 a12 a21 a22 aD1 aD2 aD3 (and the b-prefixed mirror).
  static std::shared_ptr<const ModeSpace> standard();

  std::size_t size(PhotonSlot slot) const { return names(slot).size(); }
  const std::vector<std::string>& names(PhotonSlot slot) const;
  const std::string& name(PhotonSlot slot, ModeId mode) const;
  ModeId id(PhotonSlot slot, std::string_view name) const;
  bool contains(PhotonSlot slot, ModeId mode) const { return mode < size(slot); }
  ModeId first_boundary() const { return first_boundary_; }
  ModeId second_boundary() const { return second_boundary_; }

  bool operator==(const ModeSpace& other) const = default;

 private:
  std::vector<std::string> control_;
  std::vector<std::string> target_;
  ModeId first_boundary_;
  ModeId second_boundary_;
};

/// Mode indices inside ModeSpace::standard(); identical for both photons.
namespace mode {
inline constexpr ModeId k1 = 0;
inline constexpr ModeId k2 = 1;
inline constexpr ModeId k11 = 2;
inline constexpr ModeId k12 = 3;
inline constexpr ModeId k21 = 4;
inline constexpr ModeId k22 = 5;
inline constexpr ModeId kD1 = 6;
inline constexpr ModeId kD2 = 7;
inline constexpr ModeId kD3 = 8;
}  // namespace mode

struct HyperBasisLabel {
  Polarization pol_c = Polarization::F;
  ModeId spat_c = 0;
  Polarization pol_t = Polarization::F;
  ModeId spat_t = 0;
  Spin spin1 = Spin::Up;
  Spin spin2 = Spin::Up;

  Polarization pol(PhotonSlot slot) const;
  ModeId spat(PhotonSlot slot) const;
  Spin spin(int index) const;
  HyperBasisLabel with_photon(PhotonSlot slot, Polarization pol, ModeId spat) const;
  HyperBasisLabel with_spin(int index, Spin spin) const;

  auto operator<=>(const HyperBasisLabel&) const = default;
};

using AmplitudeMap = std::map<HyperBasisLabel, Complex>;

/// Adds `amp` to the entry for `label`, creating it if needed.
void accumulate(AmplitudeMap& amps, const HyperBasisLabel& label, Complex amp);

/// Probability removed from a state so far.
///
/// `heralded` is keyed by detector mode name. `unheralded` is the signed
/// balance of every non-detector mass change (attenuation, imperfect
/// scattering); it can go negative when the imperfect-interaction map
/// amplifies a component.
struct LossLedger {
  std::map<std::string, double> heralded;
  double unheralded = 0.0;

  double heralded_total() const;
};

/// Sparse, possibly sub-normalized amplitude table over HyperBasisLabel.
///
/// Immutable once constructed. Amplitudes with magnitude below
/// kZeroThreshold are dropped on construction.
class SparseState {
 public:
  static constexpr double kZeroThreshold = 1e-15;

  /// Empty state on ModeSpace::standard().
  SparseState();
  SparseState(std::shared_ptr<const ModeSpace> modes, AmplitudeMap amplitudes = {},
              LossLedger ledger = {});

  const ModeSpace& modes() const { return *modes_; }
  const std::shared_ptr<const ModeSpace>& mode_space() const { return modes_; }
  const AmplitudeMap& amplitudes() const { return amplitudes_; }
  const LossLedger& ledger() const { return ledger_; }

  Complex amplitude(const HyperBasisLabel& label) const;
  std::size_t size() const { return amplitudes_.size(); }
  bool empty() const { return amplitudes_.empty(); }
  double norm_squared() const;
  double norm() const;

  SparseState scaled(Complex factor) const;
  SparseState with_ledger(LossLedger ledger) const;

 private:
  std::shared_ptr<const ModeSpace> modes_;
  AmplitudeMap amplitudes_;
  LossLedger ledger_;
};

using ComplexPair = std::array<Complex, 2>;

/// Input amplitudes of both photons: polarization (alpha, lambda) and
/// spatial (beta, varpi) for control and target respectively.
struct InputAmplitudes {
  ComplexPair alpha{1.0, 0.0};
  ComplexPair beta{1.0, 0.0};
  ComplexPair lambda{1.0, 0.0};
  ComplexPair varpi{1.0, 0.0};
};

/// Product input (a1 F + a2 S)(b1 m1 + b2 m2) for each photon, with both
/// spins in |+>, expanded in the up/down spin basis. Each pair must be
/// normalized within 1e-9.
SparseState make_input_state(const ComplexPair& alpha, const ComplexPair& beta,
                             const ComplexPair& lambda, const ComplexPair& varpi);
SparseState make_input_state(const InputAmplitudes& amps);

/// <a|b>, conjugate-linear in `a`. Throws ModeMismatchError if the mode
/// spaces differ.
Complex inner_product(const SparseState& a, const SparseState& b);

/// |<real|ideal>| after normalizing both. Throws ZeroNormError on a
/// zero-norm argument.
double fidelity(const SparseState& real_state, const SparseState& ideal_state);

/// max |a(label) - b(label)| over the union of stored labels.
double max_amplitude_difference(const SparseState& a, const SparseState& b);

/// Projects both spins onto <s1| <s2| and detaches them. Labels that already
/// have detached spins are rejected.
SparseState project_spins(const SparseState& state, SpinSign s1, SpinSign s2);

/// Photon-only part of a make_input_state() output (spins projected on |+>|+>).
SparseState photon_part(const SparseState& input);

nlohmann::json state_to_json(const SparseState& state);
SparseState state_from_json(const nlohmann::json& doc, std::shared_ptr<const ModeSpace> modes);

}  // namespace hypercpf
