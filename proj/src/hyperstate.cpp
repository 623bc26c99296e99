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

#include "hypercpf/hyperstate.hpp"

#include <algorithm>
#include <cmath>

#include "hypercpf/errors.hpp"

namespace hypercpf {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void check_label(const ModeSpace& modes, const HyperBasisLabel& label) {
  if (!modes.contains(PhotonSlot::Control, label.spat_c) ||
      !modes.contains(PhotonSlot::Target, label.spat_t)) {
    throw ValidationError("SparseState: label references an undeclared spatial mode");
  }
  const bool detached1 = label.spin1 == Spin::Detached;
  const bool detached2 = label.spin2 == Spin::Detached;
  if (detached1 != detached2) {
    throw ValidationError("SparseState: spins must be both present or both detached");
  }
}

Polarization parse_pol(const std::string& s) {
  if (s == "F") return Polarization::F;
  if (s == "S") return Polarization::S;
  throw ValidationError("state JSON: unknown polarization '" + s + "'");
}

Spin parse_spin(const std::string& s) {
  if (s == "up") return Spin::Up;
  if (s == "down") return Spin::Down;
  if (s == "detached") return Spin::Detached;
  throw ValidationError("state JSON: unknown spin '" + s + "'");
}

void check_pair(const ComplexPair& pair, const char* name) {
  const double n = std::norm(pair[0]) + std::norm(pair[1]);
  if (!(std::abs(n - 1.0) <= 1e-9)) {
    throw ValidationError(std::string("make_input_state: pair '") + name +
                          "' is not normalized (|x1|^2+|x2|^2 = " + std::to_string(n) + ")");
  }
}

}  // namespace

Polarization flipped(Polarization pol) {
  return pol == Polarization::F ? Polarization::S : Polarization::F;
}

std::string_view to_string(Polarization pol) { return pol == Polarization::F ? "F" : "S"; }

std::string_view to_string(Spin spin) {
  switch (spin) {
    case Spin::Up:
      return "up";
    case Spin::Down:
      return "down";
    case Spin::Detached:
      return "detached";
  }
  return "?";
}

std::string_view to_string(SpinSign sign) { return sign == SpinSign::Plus ? "+" : "-"; }

std::string_view to_string(PhotonSlot slot) {
  return slot == PhotonSlot::Control ? "control" : "target";
}

double spin_overlap(SpinSign sign, Spin spin) {
  if (spin == Spin::Detached) throw ValidationError("spin_overlap: spin is detached");
  if (sign == SpinSign::Minus && spin == Spin::Down) return -kInvSqrt2;
  return kInvSqrt2;
}

// ModeSpace -----------------------------------------------------------------

ModeSpace::ModeSpace(std::vector<std::string> control_modes, std::vector<std::string> target_modes,
                     ModeId first_boundary, ModeId second_boundary)
    : control_(std::move(control_modes)),
      target_(std::move(target_modes)),
      first_boundary_(first_boundary),
      second_boundary_(second_boundary) {
  if (control_.size() > 255 || target_.size() > 255) {
    throw ValidationError("ModeSpace: too many modes");
  }
  if (first_boundary_ == second_boundary_ || !contains(PhotonSlot::Control, second_boundary_) ||
      !contains(PhotonSlot::Target, second_boundary_) ||
      !contains(PhotonSlot::Control, first_boundary_) ||
      !contains(PhotonSlot::Target, first_boundary_)) {
    throw ValidationError("ModeSpace: boundary modes must be two distinct declared modes");
  }
  for (const auto* list : {&control_, &target_}) {
    auto sorted = *list;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ValidationError("ModeSpace: duplicate mode name");
    }
  }
}

std::shared_ptr<const ModeSpace> ModeSpace::standard() {
  static const auto space = std::make_shared<const ModeSpace>(
      std::vector<std::string>{"a1", "a2", "a11", "a12", "a21", "a22", "aD1", "aD2", "aD3"},
      std::vector<std::string>{"b1", "b2", "b11", "b12", "b21", "b22", "bD1", "bD2", "bD3"},
      mode::k1, mode::k2);
  return space;
}

const std::vector<std::string>& ModeSpace::names(PhotonSlot slot) const {
  return slot == PhotonSlot::Control ? control_ : target_;
}

const std::string& ModeSpace::name(PhotonSlot slot, ModeId mode) const {
  if (!contains(slot, mode)) throw ValidationError("ModeSpace: mode id out of range");
  return names(slot)[mode];
}

ModeId ModeSpace::id(PhotonSlot slot, std::string_view name) const {
  const auto& list = names(slot);
  auto it = std::find(list.begin(), list.end(), name);
  if (it == list.end()) {
    throw ValidationError("ModeSpace: unknown " + std::string(to_string(slot)) + " mode '" +
                          std::string(name) + "'");
  }
  return static_cast<ModeId>(it - list.begin());
}

// HyperBasisLabel ------------------------------------------------------------

Polarization HyperBasisLabel::pol(PhotonSlot slot) const {
  return slot == PhotonSlot::Control ? pol_c : pol_t;
}

ModeId HyperBasisLabel::spat(PhotonSlot slot) const {
  return slot == PhotonSlot::Control ? spat_c : spat_t;
}

Spin HyperBasisLabel::spin(int index) const { return index == 1 ? spin1 : spin2; }

HyperBasisLabel HyperBasisLabel::with_photon(PhotonSlot slot, Polarization pol,
                                             ModeId spat) const {
  HyperBasisLabel out = *this;
  if (slot == PhotonSlot::Control) {
    out.pol_c = pol;
    out.spat_c = spat;
  } else {
    out.pol_t = pol;
    out.spat_t = spat;
  }
  return out;
}

HyperBasisLabel HyperBasisLabel::with_spin(int index, Spin spin) const {
  HyperBasisLabel out = *this;
  (index == 1 ? out.spin1 : out.spin2) = spin;
  return out;
}

void accumulate(AmplitudeMap& amps, const HyperBasisLabel& label, Complex amp) {
  auto [it, inserted] = amps.try_emplace(label, amp);
  if (!inserted) it->second += amp;
}

double LossLedger::heralded_total() const {
  double total = 0.0;
  for (const auto& [name, mass] : heralded) total += mass;
  return total;
}

// SparseState ----------------------------------------------------------------

SparseState::SparseState() : SparseState(ModeSpace::standard()) {}

SparseState::SparseState(std::shared_ptr<const ModeSpace> modes, AmplitudeMap amplitudes,
                         LossLedger ledger)
    : modes_(std::move(modes)), amplitudes_(std::move(amplitudes)), ledger_(std::move(ledger)) {
  if (!modes_) throw ValidationError("SparseState: null mode space");
  std::erase_if(amplitudes_, [](const auto& kv) { return std::abs(kv.second) < kZeroThreshold; });
  for (const auto& [label, amp] : amplitudes_) check_label(*modes_, label);
}

Complex SparseState::amplitude(const HyperBasisLabel& label) const {
  auto it = amplitudes_.find(label);
  return it == amplitudes_.end() ? Complex{} : it->second;
}

double SparseState::norm_squared() const {
  double total = 0.0;
  for (const auto& [label, amp] : amplitudes_) total += std::norm(amp);
  return total;
}

double SparseState::norm() const { return std::sqrt(norm_squared()); }

SparseState SparseState::scaled(Complex factor) const {
  AmplitudeMap out = amplitudes_;
  for (auto& [label, amp] : out) amp *= factor;
  return SparseState(modes_, std::move(out), ledger_);
}

SparseState SparseState::with_ledger(LossLedger ledger) const {
  return SparseState(modes_, amplitudes_, std::move(ledger));
}

// Construction and overlaps --------------------------------------------------

SparseState make_input_state(const ComplexPair& alpha, const ComplexPair& beta,
                             const ComplexPair& lambda, const ComplexPair& varpi) {
  check_pair(alpha, "alpha");
  check_pair(beta, "beta");
  check_pair(lambda, "lambda");
  check_pair(varpi, "varpi");

  const auto modes = ModeSpace::standard();
  const Polarization pols[] = {Polarization::F, Polarization::S};
  const ModeId spats[] = {modes->first_boundary(), modes->second_boundary()};
  const Spin spins[] = {Spin::Up, Spin::Down};

  AmplitudeMap amps;
  for (int pc = 0; pc < 2; ++pc)
    for (int sc = 0; sc < 2; ++sc)
      for (int pt = 0; pt < 2; ++pt)
        for (int st = 0; st < 2; ++st) {
          // |+>|+> contributes 1/2 to each of the four up/down products.
          const Complex photon = alpha[pc] * beta[sc] * lambda[pt] * varpi[st] * 0.5;
          for (Spin s1 : spins)
            for (Spin s2 : spins) {
              accumulate(amps, {pols[pc], spats[sc], pols[pt], spats[st], s1, s2}, photon);
            }
        }
  return SparseState(modes, std::move(amps));
}

SparseState make_input_state(const InputAmplitudes& amps) {
  return make_input_state(amps.alpha, amps.beta, amps.lambda, amps.varpi);
}

Complex inner_product(const SparseState& a, const SparseState& b) {
  if (a.mode_space() != b.mode_space() && !(a.modes() == b.modes())) {
    throw ModeMismatchError("inner_product: states live on different mode spaces");
  }
  Complex total{};
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  for (const auto& [label, amp] : small.amplitudes()) {
    auto it = large.amplitudes().find(label);
    if (it == large.amplitudes().end()) continue;
    total += &small == &a ? std::conj(amp) * it->second : std::conj(it->second) * amp;
  }
  return total;
}

double fidelity(const SparseState& real_state, const SparseState& ideal_state) {
  const double n_real = real_state.norm();
  const double n_ideal = ideal_state.norm();
  if (n_real == 0.0) throw ZeroNormError("fidelity: realized state has zero norm");
  if (n_ideal == 0.0) throw ZeroNormError("fidelity: ideal state has zero norm");
  const double f = std::abs(inner_product(real_state, ideal_state)) / (n_real * n_ideal);
  return std::clamp(f, 0.0, 1.0);
}

double max_amplitude_difference(const SparseState& a, const SparseState& b) {
  if (a.mode_space() != b.mode_space() && !(a.modes() == b.modes())) {
    throw ModeMismatchError("max_amplitude_difference: states live on different mode spaces");
  }
  double worst = 0.0;
  for (const auto& [label, amp] : a.amplitudes()) {
    worst = std::max(worst, std::abs(amp - b.amplitude(label)));
  }
  for (const auto& [label, amp] : b.amplitudes()) {
    if (!a.amplitudes().contains(label)) worst = std::max(worst, std::abs(amp));
  }
  return worst;
}

SparseState project_spins(const SparseState& state, SpinSign s1, SpinSign s2) {
  AmplitudeMap out;
  for (const auto& [label, amp] : state.amplitudes()) {
    if (label.spin1 == Spin::Detached) {
      throw ValidationError("project_spins: state has no spin factor");
    }
    const double weight = spin_overlap(s1, label.spin1) * spin_overlap(s2, label.spin2);
    accumulate(out, label.with_spin(1, Spin::Detached).with_spin(2, Spin::Detached), weight * amp);
  }
  return SparseState(state.mode_space(), std::move(out), state.ledger());
}

SparseState photon_part(const SparseState& input) {
  return project_spins(input, SpinSign::Plus, SpinSign::Plus).with_ledger({});
}

// JSON -------------------------------------------------------------------------

nlohmann::json state_to_json(const SparseState& state) {
  const auto& modes = state.modes();
  nlohmann::json records = nlohmann::json::array();
  for (const auto& [label, amp] : state.amplitudes()) {
    records.push_back({{"pol_c", to_string(label.pol_c)},
                       {"spat_c", modes.name(PhotonSlot::Control, label.spat_c)},
                       {"pol_t", to_string(label.pol_t)},
                       {"spat_t", modes.name(PhotonSlot::Target, label.spat_t)},
                       {"spin1", to_string(label.spin1)},
                       {"spin2", to_string(label.spin2)},
                       {"re", amp.real()},
                       {"im", amp.imag()}});
  }
  nlohmann::json heralded = nlohmann::json::object();
  for (const auto& [name, mass] : state.ledger().heralded) heralded[name] = mass;
  return {{"amplitudes", records},
          {"norm_squared", state.norm_squared()},
          {"heralded_loss", heralded},
          {"unheralded_loss", state.ledger().unheralded}};
}

SparseState state_from_json(const nlohmann::json& doc, std::shared_ptr<const ModeSpace> modes) {
  AmplitudeMap amps;
  for (const auto& rec : doc.at("amplitudes")) {
    HyperBasisLabel label{parse_pol(rec.at("pol_c").get<std::string>()),
                          modes->id(PhotonSlot::Control, rec.at("spat_c").get<std::string>()),
                          parse_pol(rec.at("pol_t").get<std::string>()),
                          modes->id(PhotonSlot::Target, rec.at("spat_t").get<std::string>()),
                          parse_spin(rec.at("spin1").get<std::string>()),
                          parse_spin(rec.at("spin2").get<std::string>())};
    accumulate(amps, label, {rec.at("re").get<double>(), rec.at("im").get<double>()});
  }
  LossLedger ledger;
  if (doc.contains("heralded_loss")) {
    for (const auto& [name, mass] : doc.at("heralded_loss").items()) {
      ledger.heralded[name] = mass.get<double>();
    }
  }
  if (doc.contains("unheralded_loss")) ledger.unheralded = doc.at("unheralded_loss").get<double>();
  return SparseState(std::move(modes), std::move(amps), std::move(ledger));
}

}  // namespace hypercpf
