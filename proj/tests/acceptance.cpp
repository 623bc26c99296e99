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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hypercpf/analytic_states.hpp"
#include "hypercpf/commands.hpp"
#include "hypercpf/gatecircuit.hpp"
#include "hypercpf/oracle.hpp"

using namespace hypercpf;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

CavityParams resonant(double g, double ks, double p) { return CavityParams::resonant(g, ks, 0.1, p); }

// Worst |1 - F| over every branch of every (params, input) draw.
double worst_fidelity_gap(std::uint64_t seed, int param_sets, int inputs,
                          const FeedForwardTable& table) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int i = 0; i < param_sets; ++i) {
    const auto params = random_params(rng);
    for (int j = 0; j < inputs; ++j) {
      const auto result = run_hyper_cpf(make_input_state(random_input(rng)), params,
                                        OutcomePolicy::report_all_branches(), table);
      for (const auto& br : result.spin_branches) worst = std::max(worst, std::abs(1.0 - br.fidelity));
    }
  }
  return worst;
}

Outcome unity_fidelity() {
  const auto t0 = Clock::now();
  const double worst = worst_fidelity_gap(101, 60, 25, standard_feed_forward());
  const double t = seconds_since(t0);
  return {worst <= 1e-10 && t < 10.0,
          fmt("60 param sets x 25 inputs, worst |1-F| = %.2e (tol 1e-10), %.2f s (limit 10 s)", worst, t)};
}

Outcome closed_form_equivalence() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (double p : {0.5, 1.0}) {
    for (int i = 0; i < 50; ++i) {
      for (int j = 0; j < 50; ++j) {
        const double g = 0.1 + 4.9 * i / 49.0;
        const double ks = 2.0 * j / 49.0;
        worst = std::max(worst, std::abs(efficiency_pipeline(resonant(g, ks, p)) -
                                         efficiency_closed_form(g, ks, p)));
      }
    }
  }
  const double t = seconds_since(t0);
  return {worst < 1e-12 && t < 5.0,
          fmt("50x50 grid, p in {0.5, 1}, max diff = %.2e (tol 1e-12), %.3f s (limit 5 s)", worst, t)};
}

Outcome checkpoint_exactness() {
  std::mt19937_64 rng(303);
  double worst = 0.0;
  bool detector_terms = true;
  for (int n = 0; n < 100; ++n) {
    const auto params = random_params(rng);
    const auto amps = random_input(rng);
    const auto k = emitter_coefficients(params);
    const auto in = make_input_state(amps);
    const auto s2 = checkpoint_state(Checkpoint::AfterStage2, in, params);
    worst = std::max({worst,
                      max_amplitude_difference(checkpoint_state(Checkpoint::AfterStage1, in, params),
                                               analytic::after_stage1(amps, k)),
                      max_amplitude_difference(s2, analytic::after_stage2(amps, k)),
                      max_amplitude_difference(checkpoint_state(Checkpoint::AfterTarget, in, params),
                                               analytic::after_target(amps, k))});
    bool any = false;
    for (const auto& [label, amp] : s2.amplitudes()) any |= label.spat_c >= mode::kD1;
    detector_terms &= any;
  }
  return {worst <= 1e-12 && detector_terms,
          fmt("100 draws x 3 checkpoints, max coefficient diff = %.2e (tol 1e-12)", worst)};
}

Outcome herald_identities() {
  std::mt19937_64 rng(404);
  double spread = 0.0, equi = 0.0, conservation = 0.0, vs_c8 = 0.0;
  for (int i = 0; i < 30; ++i) {
    const auto params = random_params(rng);
    const double c8 = std::pow(std::abs(emitter_coefficients(params).c), 8);
    double lo = 1e300, hi = -1e300;
    for (int j = 0; j < 10; ++j) {
      const auto r = run_hyper_cpf(make_input_state(random_input(rng)), params);
      lo = std::min(lo, r.success_probability);
      hi = std::max(hi, r.success_probability);
      vs_c8 = std::max(vs_c8, std::abs(r.success_probability - c8));
      double heralded = 0.0;
      for (const auto& [name, mass] : r.heralded_failure) heralded += mass;
      conservation = std::max(conservation, std::abs(r.success_probability + heralded + r.unheralded_loss - 1.0));
      for (const auto& br : r.spin_branches) equi = std::max(equi, std::abs(br.probability - 0.25));
    }
    spread = std::max(spread, hi - lo);
  }
  const bool pass = spread < 1e-12 && vs_c8 < 1e-12 && equi <= 1e-12 && conservation <= 1e-12;
  return {pass, fmt("success spread %.2e, |P - |c|^8| %.2e, |P(o) - 1/4| %.2e", spread, vs_c8, equi) +
                    fmt(", conservation %.2e (all tol 1e-12)", conservation)};
}

Outcome spot_values() {
  const auto in = make_input_state({0.6, 0.8}, {0.8, 0.6}, {1, 0}, {0, 1});
  const double eta = run_hyper_cpf(in, resonant(2.4, 0.0, 1.0)).success_probability;
  const double oracle = 65536.0 * std::pow(5.76 / 23.14, 8);
  const bool eta_ok = std::abs(eta - oracle) < 1e-12 && std::abs(eta - 0.966) < 5e-4;

  const double eta09 =
      run_hyper_cpf(in, EmitterCoeffs::from_reflections(-1.0, 1.0, 0.9)).success_probability;
  const bool p_ok = std::abs(eta09 - std::pow(0.9, 8)) < 1e-12 && std::abs(eta09 - 0.43047) < 1e-5;

  std::mt19937_64 rng(505);
  std::uniform_real_distribution<double> phase(-M_PI, M_PI);
  double conservation = 0.0;
  for (int n = 0; n < 50; ++n) {
    const auto k = EmitterCoeffs::from_reflections(std::polar(1.0, phase(rng)), std::polar(1.0, phase(rng)), 1.0);
    if (std::abs(k.c) <= kGateInoperativeThreshold) continue;
    const auto r = run_hyper_cpf(make_input_state(random_input(rng)), k);
    double heralded = 0.0;
    for (const auto& [name, mass] : r.heralded_failure) heralded += mass;
    conservation = std::max(conservation, std::abs(r.success_probability + heralded + r.unheralded_loss - 1.0));
  }
  return {eta_ok && p_ok && conservation <= 1e-12,
          fmt("eta(g=2.4) = %.6f, eta(p=0.9) = %.6f, unitary-limit conservation %.2e", eta, eta09,
              conservation)};
}

Outcome oracle_equivalence() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(606);
  double worst = 0.0;
  bool pass = true;
  for (int n = 0; n < 100; ++n) {
    const auto params = random_params(rng);
    const auto input = make_input_state(random_input(rng));
    const auto path = oracle::compare_circuit_paths(build_circuit(params), input, 1e-12);
    worst = std::max(worst, path.max_discrepancy);
    pass &= path.pass;
  }
  auto mutated = standard_feed_forward();
  mutated[SpinOutcome{SpinSign::Plus, SpinSign::Plus}.index()] = FeedForwardOp::SpatialSigmaZ;
  const double mutant_gap = worst_fidelity_gap(101, 5, 5, mutated);
  const bool caught = mutant_gap > 1e-10;
  return {pass && worst <= 1e-12 && caught,
          fmt("100 draws, max dense-sparse diff = %.2e (tol 1e-12), %.1f s", worst, seconds_since(t0)) +
              fmt("; mutated feed-forward worst |1-F| = %.2f ", mutant_gap) +
              (caught ? "(caught)" : "(NOT caught)")};
}

// Pointwise monotonicity along each grid axis: +1 increasing, -1 decreasing.
bool monotone(const SweepTable& t, std::size_t n1, std::size_t n2, int dir1, int dir2) {
  auto at = [&](std::size_t i, std::size_t j) { return t.rows[i * n2 + j].eta_pipeline; };
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      if (i + 1 < n1 && dir1 * (at(i + 1, j) - at(i, j)) <= 0.0) return false;
      if (j + 1 < n2 && dir2 * (at(i, j + 1) - at(i, j)) <= 0.0) return false;
    }
  }
  return true;
}

Outcome surfaces() {
  using nlohmann::json;
  const json cavity = {{"g", 1.0}, {"kappa_s", 0.0}, {"gamma", 0.1}, {"p", 1.0}};
  // Efficiency against g/kappa and kappa_s/kappa.
  const auto b = RunConfig::from_json(
      {{"cavity", cavity},
       {"sweep", {{"axes", {{{"name", "g_over_kappa"}, {"start", 0.1}, {"stop", 3.0}, {"count", 30}},
                            {{"name", "kappa_s_over_kappa"}, {"start", 0.0}, {"stop", 2.0}, {"count", 21}}}}}}});
  // Efficiency against g/sqrt(kappa gamma) and p^2.
  const auto a = RunConfig::from_json(
      {{"cavity", cavity},
       {"sweep", {{"axes", {{{"name", "g_over_sqrt_kappa_gamma"}, {"start", 0.1}, {"stop", 5.0}, {"count", 50}},
                            {{"name", "p_squared"}, {"start", 0.0}, {"stop", 1.0}, {"count", 20}, {"open_start", true}}}}}}});
  const auto tb = cmd_sweep(b);
  const auto ta = cmd_sweep(a);
  double worst = 0.0;
  for (const auto* t : {&tb, &ta}) {
    for (const auto& row : t->rows) worst = std::max(worst, std::abs(row.eta_pipeline - row.eta_closed_form));
  }
  const bool mono = monotone(tb, 30, 21, +1, -1) && monotone(ta, 50, 20, +1, +1);
  double limit = 0.0;
  for (double p : {0.3, 0.5, 0.8, 1.0}) {
    limit = std::max({limit, std::abs(efficiency_pipeline(resonant(1e3, 0.0, p)) - std::pow(p, 8)),
                      std::abs(efficiency_closed_form(1e3, 0.0, p) - std::pow(p, 8))});
  }
  const bool shape = tb.rows.size() == 30 * 21 && ta.rows.size() == 50 * 20;
  return {shape && mono && worst < 1e-12 && limit < 1e-6,
          fmt("both surfaces, pipeline vs closed form %.2e, |eta(g=1e3) - p^8| = %.2e (tol 1e-6), ", worst, limit) +
              (mono ? "monotone in both axes" : "NOT monotone")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"1 unity fidelity after feed-forward", unity_fidelity},
      {"2 closed-form efficiency equals pipeline", closed_form_equivalence},
      {"3 checkpoint states match term lists", checkpoint_exactness},
      {"4 herald identities", herald_identities},
      {"5 spot values", spot_values},
      {"6 dense oracle equivalence and mutation", oracle_equivalence},
      {"7 efficiency surfaces", surfaces},
  };
  bool all = true;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all &= o.pass;
    std::printf("%s  %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
