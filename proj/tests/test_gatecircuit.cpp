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

#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "hypercpf/analytic_states.hpp"
#include "hypercpf/commands.hpp"
#include "hypercpf/errors.hpp"
#include "hypercpf/gatecircuit.hpp"
#include "test_support.hpp"

using namespace hypercpf;
using hypercpf::testing::single;

namespace {

constexpr auto F = Polarization::F;
constexpr auto S = Polarization::S;

// |pol_c, spat_c>|F, b1> (x) |s1>_1 |+>_2 in the up/down basis.
SparseState control_with_spins(Polarization pol, ModeId spat, SpinSign s1, Complex amp) {
  const double h = 0.5;
  const double d1 = s1 == SpinSign::Plus ? 1.0 : -1.0;
  AmplitudeMap m;
  for (Spin a : {Spin::Up, Spin::Down})
    for (Spin b : {Spin::Up, Spin::Down}) {
      const double sign = a == Spin::Down ? d1 : 1.0;
      m[{pol, spat, F, mode::k1, a, b}] = amp * h * sign;
    }
  return SparseState(ModeSpace::standard(), m);
}

CavityParams ideal_params(double g, double ks = 0.0, double p = 1.0) {
  return CavityParams::resonant(g, ks, 0.1, p);
}

}  // namespace

TEST_CASE("the circuit graph is well formed") {
  std::mt19937_64 rng(1);
  const auto graph = build_circuit(random_params(rng));
  CHECK_NOTHROW(graph.validate());
  const char* names[] = {"control_stage1", "control_stage2", "control_detect", "spin_hadamard",
                         "target_stage1",  "target_stage2",  "target_detect"};
  REQUIRE(graph.stages.size() == 7);
  for (std::size_t i = 0; i < 7; ++i) CHECK(graph.stages[i].name == names[i]);
  CHECK(graph.detectors().size() == 6);
  CHECK_THROWS_AS(graph.stage("nope"), ValidationError);
}

TEST_CASE("malformed graphs are rejected") {
  std::mt19937_64 rng(2);
  SUBCASE("undeclared port") {
    auto graph = build_circuit(random_params(rng));
    graph.stages[0].steps[0].out[0] = 42;
    CHECK_THROWS_AS(graph.validate(), ValidationError);
  }
  SUBCASE("edge leaving a detector mode") {
    auto graph = build_circuit(random_params(rng));
    graph.stages[1].steps.push_back(ElementStep::hwp("HWPx", PhotonSlot::Control, mode::kD1));
    CHECK_THROWS_AS(graph.validate(), ValidationError);
  }
  SUBCASE("unreachable mode") {
    auto graph = build_circuit(random_params(rng));
    // Dropping the first PBS leaves a11 and a12 without a source.
    graph.stages[0].steps.erase(graph.stages[0].steps.begin());
    CHECK_THROWS_AS(graph.validate(), ValidationError);
  }
}

TEST_CASE("stage-1 basis examples") {
  const auto params = ideal_params(1.3, 0.2, 0.8);
  const auto k = emitter_coefficients(params);
  SUBCASE("|F>|a1> -> c |F>|a11>|+>") {
    const auto in = make_input_state({1, 0}, {1, 0}, {1, 0}, {1, 0});
    const auto out = checkpoint_state(Checkpoint::AfterStage1, in, params);
    const auto expected = control_with_spins(F, mode::k11, SpinSign::Plus, k.c);
    CHECK(max_amplitude_difference(out, expected) < 1e-15);
  }
  SUBCASE("|S>|a2> -> c |F>|a21>|-> + f |S>|a21>|+>") {
    const auto in = make_input_state({0, 1}, {0, 1}, {1, 0}, {1, 0});
    const auto out = checkpoint_state(Checkpoint::AfterStage1, in, params);
    const auto expected = testing::combine(
        1.0, control_with_spins(F, mode::k21, SpinSign::Minus, k.c), 1.0,
        control_with_spins(S, mode::k21, SpinSign::Plus, k.f));
    CHECK(max_amplitude_difference(out, expected) < 1e-15);
  }
}

TEST_CASE("checkpoints match the closed-form term lists") {
  std::mt19937_64 rng(3);
  for (int n = 0; n < 30; ++n) {
    const auto params = random_params(rng);
    const auto amps = random_input(rng);
    const auto k = emitter_coefficients(params);
    const auto in = make_input_state(amps);

    const auto s1 = checkpoint_state(Checkpoint::AfterStage1, in, params);
    const auto s2 = checkpoint_state(Checkpoint::AfterStage2, in, params);
    const auto s3 = checkpoint_state(Checkpoint::AfterTarget, in, params);
    CHECK(max_amplitude_difference(s1, analytic::after_stage1(amps, k)) < 1e-12);
    CHECK(max_amplitude_difference(s2, analytic::after_stage2(amps, k)) < 1e-12);
    CHECK(max_amplitude_difference(s3, analytic::after_target(amps, k)) < 1e-12);
    // 16 photon terms; the control photon fixes the spin label of each.
    CHECK(s3.size() == 16);
  }
}

TEST_CASE("closed-form term structure") {
  // Basis-vector inputs isolate the six stage-1 coefficients and the eight
  // stage-2 terms.
  EmitterCoeffs k = EmitterCoeffs::from_reflections({-0.7, 0.2}, {0.9, 0.1}, 0.8);
  const Complex a1{0.6, 0.1}, a2{0.3, -0.7}, b1{0.5, 0.5}, b2{-0.2, 0.6};
  InputAmplitudes amps{{a1, a2}, {b1, b2}, {1, 0}, {1, 0}};
  std::set<std::pair<int, int>> stage1_labels, stage2_labels;
  for (const auto& [label, amp] : analytic::after_stage1(amps, k).amplitudes())
    stage1_labels.insert({static_cast<int>(label.pol_c), label.spat_c});
  for (const auto& [label, amp] : analytic::after_stage2(amps, k).amplitudes())
    stage2_labels.insert({static_cast<int>(label.pol_c), label.spat_c});
  CHECK(stage1_labels.size() == 6);
  bool has_detector = false;
  for (const auto& [pol, spat] : stage2_labels) has_detector |= spat >= mode::kD1;
  CHECK(has_detector);
}

TEST_CASE("ideal hyper-CPF sign rules") {
  auto label = [](Polarization pc, ModeId sc, Polarization pt, ModeId st) {
    return HyperBasisLabel{pc, sc, pt, st, Spin::Detached, Spin::Detached};
  };
  using namespace mode;
  CHECK(ideal_hyper_cpf(single(label(F, k1, F, k1))).amplitude(label(F, k1, F, k1)) == Complex{1.0});
  CHECK(ideal_hyper_cpf(single(label(S, k1, S, k1))).amplitude(label(S, k1, S, k1)) == Complex{-1.0});
  CHECK(ideal_hyper_cpf(single(label(S, k2, S, k2))).amplitude(label(S, k2, S, k2)) == Complex{1.0});
  CHECK(ideal_hyper_cpf(single(label(F, k2, S, k2))).amplitude(label(F, k2, S, k2)) == Complex{-1.0});
  CHECK(ideal_hyper_cpf(single(label(S, k2, F, k1))).amplitude(label(S, k2, F, k1)) == Complex{1.0});
}

TEST_CASE("every branch reaches the ideal gate") {
  std::mt19937_64 rng(4);
  for (int n = 0; n < 20; ++n) {
    const auto params = random_params(rng);
    const auto amps = random_input(rng);
    const auto result = run_hyper_cpf(make_input_state(amps), params);
    CAPTURE(n);
    CHECK(result.fidelity_vs_ideal > 1.0 - 1e-10);
    CHECK(result.fidelity_vs_ideal <= 1.0);
    REQUIRE(result.spin_branches.size() == 4);
    const auto expected = analytic::corrected_branch(amps, result.coeffs);
    for (const auto& br : result.spin_branches) {
      CHECK(std::abs(br.fidelity - 1.0) < 1e-10);
      CHECK(std::abs(br.probability - 0.25) < 1e-12);
      CHECK(max_amplitude_difference(br.corrected_state, expected) < 1e-12);
    }
  }
}

TEST_CASE("fixed outcome selects the reported fidelity") {
  const auto in = make_input_state({0.6, 0.8}, {0.8, 0.6}, {0, 1}, {1, 0});
  const auto result = run_hyper_cpf(in, ideal_params(2.4),
                                    OutcomePolicy::fix_outcome({SpinSign::Minus, SpinSign::Plus}));
  REQUIRE(result.spin_branches.size() == 4);
  const auto& chosen = result.spin_branches[SpinOutcome{SpinSign::Minus, SpinSign::Plus}.index()];
  CHECK(chosen.correction == FeedForwardOp::PolarizedSigmaZ);
  CHECK(result.fidelity_vs_ideal == chosen.fidelity);
  CHECK(std::abs(result.fidelity_vs_ideal - 1.0) < 1e-10);
}

TEST_CASE("ideal emitter: certain success and empty ledgers") {
  const auto k = EmitterCoeffs::from_reflections(-1.0, 1.0, 1.0);
  std::mt19937_64 rng(5);
  const auto result = run_hyper_cpf(make_input_state(random_input(rng)), k);
  CHECK(std::abs(result.success_probability - 1.0) < 1e-12);
  for (const auto& [name, mass] : result.heralded_failure) CHECK(std::abs(mass) < 1e-12);
  CHECK(std::abs(result.unheralded_loss) < 1e-12);
}

TEST_CASE("spot efficiency at g = 2.4") {
  const auto in = make_input_state({1, 0}, {1, 0}, {1, 0}, {1, 0});
  const auto result = run_hyper_cpf(in, ideal_params(2.4));
  const double oracle = std::pow(5.76 / 23.14, 8) * 65536.0;
  CHECK(std::abs(result.success_probability - oracle) < 1e-12);
  CHECK(result.success_probability == doctest::Approx(0.966).epsilon(5e-4));
}

TEST_CASE("inoperative gate is a distinct error") {
  const auto in = make_input_state({1, 0}, {1, 0}, {1, 0}, {1, 0});
  CAPTURE(emitter_coefficients(ideal_params(0.0)).c);
  CHECK_THROWS_AS(run_hyper_cpf(in, ideal_params(0.0)), GateInoperativeError);
  CHECK_THROWS_AS(run_hyper_cpf(in, EmitterCoeffs::from_reflections(0.3, 0.3, 1.0)),
                  GateInoperativeError);
  CHECK_THROWS_AS(run_hyper_cpf(in.scaled(2.0), ideal_params(1.0)), ValidationError);
}

TEST_CASE("success is input independent and conserves probability") {
  std::mt19937_64 rng(6);
  for (int n = 0; n < 10; ++n) {
    const auto params = random_params(rng);
    const double eta = efficiency_pipeline(params);
    for (int m = 0; m < 5; ++m) {
      const auto result = run_hyper_cpf(make_input_state(random_input(rng)), params);
      CHECK(std::abs(result.success_probability - eta) < 1e-12);
      double heralded = 0.0;
      for (const auto& [name, mass] : result.heralded_failure) heralded += mass;
      CHECK(std::abs(result.success_probability + heralded + result.unheralded_loss - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("pipeline efficiency") {
  CHECK(efficiency_pipeline(EmitterCoeffs::from_reflections(-1.0, 1.0, 1.0)) == doctest::Approx(1.0));
  CHECK(std::abs(efficiency_pipeline(EmitterCoeffs::from_reflections(-1.0, 1.0, 0.9)) -
                 std::pow(0.9, 8)) < 1e-15);
  CHECK(std::pow(0.9, 8) == doctest::Approx(0.43047).epsilon(1e-5));
  // (1/256) p^8 |r0 - rh|^8
  std::mt19937_64 rng(7);
  for (int n = 0; n < 20; ++n) {
    const auto params = random_params(rng);
    const auto k = emitter_coefficients(params);
    CHECK(std::abs(efficiency_pipeline(params) -
                   std::pow(params.p, 8) * std::pow(std::abs(k.r0 - k.rh), 8) / 256.0) < 1e-12);
  }
}

TEST_CASE("p-scaling at fixed reflections") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  for (int n = 0; n < 20; ++n) {
    const Complex r0 = testing::random_complex(rng) * 0.5, rh = testing::random_complex(rng) * 0.5;
    const double p1 = u(rng), p2 = u(rng);
    const double ratio = efficiency_pipeline(EmitterCoeffs::from_reflections(r0, rh, p2)) /
                         efficiency_pipeline(EmitterCoeffs::from_reflections(r0, rh, p1));
    CHECK(std::abs(ratio - std::pow(p2 / p1, 8)) < 1e-12 * std::max(1.0, ratio));
  }
}

TEST_CASE("closed form") {
  CHECK(std::abs(efficiency_closed_form(1e3, 0.0, 1.0) - 1.0) < 1e-6);
  CHECK(std::abs(efficiency_closed_form(2.4, 0.0, 1.0) - 65536.0 * std::pow(5.76 / 23.14, 8)) < 1e-14);
  SUBCASE("matches the pipeline on a grid") {
    for (int i = 0; i < 25; ++i)
      for (int j = 0; j < 25; ++j) {
        const double g = 0.1 + 4.9 * i / 24.0;
        const double ks = 2.0 * j / 24.0;
        for (double p : {0.5, 1.0}) {
          CHECK(std::abs(efficiency_closed_form(g, ks, p) -
                         efficiency_pipeline(ideal_params(g, ks, p))) < 1e-12);
        }
      }
  }
  SUBCASE("monotone in g and kappa_s") {
    for (int i = 0; i < 50; ++i) {
      const double g = 0.1 + 4.9 * i / 49.0, g2 = 0.1 + 4.9 * (i + 1) / 49.0;
      const double ks = 2.0 * i / 49.0, ks2 = 2.0 * (i + 1) / 49.0;
      CHECK(efficiency_closed_form(g2, 0.5, 1.0) > efficiency_closed_form(g, 0.5, 1.0));
      CHECK(efficiency_closed_form(2.0, ks2, 1.0) < efficiency_closed_form(2.0, ks, 1.0));
    }
  }
  SUBCASE("p^8 limit at large g") {
    for (double p : {0.3, 0.7, 1.0}) {
      CHECK(std::abs(efficiency_closed_form(1e3, 0.0, p) - std::pow(p, 8)) < 1e-6);
    }
  }
}
