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

#include "hypercpf/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include "hypercpf/analytic_states.hpp"
#include "hypercpf/errors.hpp"
#include "hypercpf/oracle.hpp"

namespace hypercpf {

namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

json coeffs_json(const EmitterCoeffs& k) {
  return {{"r0", complex_to_json(k.r0)},
          {"rh", complex_to_json(k.rh)},
          {"c", complex_to_json(k.c)},
          {"f", complex_to_json(k.f)}};
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

}  // namespace

json gate_result_to_json(const GateResult& result, const RunConfig& config) {
  json branches = json::array();
  for (const auto& br : result.spin_branches) {
    branches.push_back({{"outcome", br.outcome.label()},
                        {"probability", br.probability},
                        {"correction", to_string(br.correction)},
                        {"fidelity", br.fidelity},
                        {"state", state_to_json(br.corrected_state)}});
  }
  json heralded = json::object();
  for (const auto& [name, mass] : result.heralded_failure) heralded[name] = mass;
  json policy = config.policy.fixed ? json(config.policy.fixed->label()) : json("report_all_branches");
  return {{"params", config.params_json()},
          {"input", config.input_json()},
          {"outcome_policy", policy},
          {"coefficients", coeffs_json(result.coeffs)},
          {"success_probability", result.success_probability},
          {"heralded_failure", heralded},
          {"unheralded_loss", result.unheralded_loss},
          {"fidelity_vs_ideal", result.fidelity_vs_ideal},
          {"spin_branches", branches},
          {"output_state", state_to_json(result.output_state)}};
}

json cmd_simulate(const RunConfig& config) {
  const GateResult result = run_hyper_cpf(make_input_state(config.input), config.params, config.policy);
  return gate_result_to_json(result, config);
}

// Sweep --------------------------------------------------------------------------

bool closed_form_applies(const CavityParams& p) {
  return p.kappa == 1.0 && p.omega_photon == p.omega_cavity &&
         p.omega_photon == p.omega_exciton && std::abs(p.gamma - 0.1) <= 1e-12;
}

SweepTable cmd_sweep(const RunConfig& config, std::size_t workers) {
  if (config.axes.size() != 2) {
    throw ValidationError("sweep: exactly two axes are required, got " +
                          std::to_string(config.axes.size()));
  }
  const auto xs = config.axes[0].values();
  const auto ys = config.axes[1].values();

  SweepTable table;
  table.axis1 = config.axes[0].kind;
  table.axis2 = config.axes[1].kind;
  json axes = json::array();
  for (const auto& a : config.axes) {
    axes.push_back({{"name", to_string(a.kind)},
                    {"start", a.start},
                    {"stop", a.stop},
                    {"count", a.count},
                    {"open_start", a.open_start}});
  }
  table.header = {{"params", config.params_json()}, {"input", config.input_json()}, {"axes", axes}};

  // Resolve every grid point up front so invalid points fail before any work.
  std::vector<CavityParams> points;
  points.reserve(xs.size() * ys.size());
  for (double x : xs)
    for (double y : ys) {
      try {
        points.push_back(config.at_point(x, y));
      } catch (const ValidationError& e) {
        throw ValidationError("sweep: grid point (" + format_double(x) + ", " + format_double(y) +
                              ") is invalid: " + e.what());
      }
    }

  table.rows.resize(points.size());
  const SparseState input = make_input_state(config.input);
  auto evaluate = [&](std::size_t i) {
    const CavityParams& p = points[i];
    SweepRow& row = table.rows[i];
    row.axis1 = xs[i / ys.size()];
    row.axis2 = ys[i % ys.size()];
    row.eta_pipeline = efficiency_pipeline(p);
    row.eta_closed_form = closed_form_applies(p) ? efficiency_closed_form(p.g, p.kappa_s, p.p) : kNaN;
    try {
      row.fidelity = run_hyper_cpf(input, p, config.policy).fidelity_vs_ideal;
    } catch (const GateInoperativeError&) {
      row.fidelity = kNaN;
    }
  };

  std::size_t n_workers = workers ? workers : config.workers;
  if (n_workers == 0) n_workers = std::max(1u, std::thread::hardware_concurrency());
  n_workers = std::min(n_workers, points.size());

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n_workers);
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = next++; i < points.size(); i = next++) evaluate(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return table;
}

void write_csv(const SweepTable& table, std::ostream& out) {
  out << "# hypercpf sweep\n";
  out << "# axis1 = " << to_string(table.axis1) << "\n";
  out << "# axis2 = " << to_string(table.axis2) << "\n";
  out << "# params = " << table.header.at("params").dump() << "\n";
  out << "# input = " << table.header.at("input").dump() << "\n";
  out << "# axes = " << table.header.at("axes").dump() << "\n";
  out << "axis1,axis2,eta_pipeline,eta_closed_form,fidelity\n";
  for (const auto& r : table.rows) {
    out << format_double(r.axis1) << ',' << format_double(r.axis2) << ','
        << format_double(r.eta_pipeline) << ',' << format_double(r.eta_closed_form) << ','
        << format_double(r.fidelity) << '\n';
  }
}

// Verification ---------------------------------------------------------------------

CavityParams random_params(std::mt19937_64& rng) {
  auto uniform = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  CavityParams p;
  p.kappa = 1.0;
  p.g = uniform(0.2, 5.0);
  p.kappa_s = uniform(0.0, 2.0);
  p.gamma = uniform(0.05, 0.5);
  p.p = uniform(0.3, 1.0);
  p.omega_photon = 0.0;
  p.omega_cavity = uniform(-1.0, 1.0);
  p.omega_exciton = uniform(-1.0, 1.0);
  return p;
}

InputAmplitudes random_input(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  auto pair = [&] {
    ComplexPair z{Complex{normal(rng), normal(rng)}, Complex{normal(rng), normal(rng)}};
    const double n = std::sqrt(std::norm(z[0]) + std::norm(z[1]));
    return ComplexPair{z[0] / n, z[1] / n};
  };
  InputAmplitudes in;
  in.alpha = pair();
  in.beta = pair();
  in.lambda = pair();
  in.varpi = pair();
  return in;
}

VerifyReport cmd_verify(const VerifyOptions& options) {
  if (options.draws < 1) throw ValidationError("verify: draws must be >= 1");

  VerifyReport report;
  report.checks = {
      {"checkpoint_equality", 1e-12},   {"oracle_equivalence", 1e-12},
      {"fidelity_one", 1e-10},          {"equiprobable_heralds", 1e-12},
      {"probability_conservation", 1e-12}, {"success_equals_c8", 1e-12},
  };
  if (!options.oracle) report.checks.erase(report.checks.begin() + 1);
  auto check = [&](std::string_view name) -> VerifyCheck& {
    return *std::find_if(report.checks.begin(), report.checks.end(),
                         [&](const VerifyCheck& c) { return c.name == name; });
  };

  FeedForwardTable table = standard_feed_forward();
  if (options.mutate_feed_forward) table[0] = FeedForwardOp::SpatialSigmaZ;

  std::ostringstream failures;
  bool first_failure_reported = false;
  std::mt19937_64 master(options.seed);
  for (std::size_t draw = 0; draw < options.draws; ++draw) {
    const std::uint64_t draw_seed = master();
    std::mt19937_64 rng(draw_seed);
    const CavityParams params = random_params(rng);
    const InputAmplitudes amps = random_input(rng);
    const SparseState input = make_input_state(amps);
    const ModeGraph graph = build_circuit(params);
    const EmitterCoeffs& k = graph.coeffs;

    std::vector<std::pair<std::string, double>> deviations;

    double cp = 0.0;
    cp = std::max(cp, max_amplitude_difference(run_stages(graph, input, 1), analytic::after_stage1(amps, k)));
    cp = std::max(cp, max_amplitude_difference(run_stages(graph, input, 2), analytic::after_stage2(amps, k)));
    const GateResult result = run_hyper_cpf(input, params, OutcomePolicy::report_all_branches(), table);
    cp = std::max(cp, max_amplitude_difference(result.output_state, analytic::after_target(amps, k)));
    deviations.emplace_back("checkpoint_equality", cp);

    if (options.oracle) {
      deviations.emplace_back("oracle_equivalence",
                              oracle::compare_circuit_paths(graph, input, 1e-12).max_discrepancy);
    }

    double fid = 0.0;
    double equi = 0.0;
    for (const auto& br : result.spin_branches) {
      fid = std::max(fid, 1.0 - br.fidelity);
      equi = std::max(equi, std::abs(br.probability - 0.25));
    }
    deviations.emplace_back("fidelity_one", fid);
    deviations.emplace_back("equiprobable_heralds", equi);

    double heralded = 0.0;
    for (const auto& [name, mass] : result.heralded_failure) heralded += mass;
    deviations.emplace_back("probability_conservation",
                            std::abs(result.success_probability + heralded + result.unheralded_loss - 1.0));
    deviations.emplace_back("success_equals_c8",
                            std::abs(result.success_probability - std::pow(std::abs(k.c), 8)));

    for (const auto& [name, dev] : deviations) {
      VerifyCheck& c = check(name);
      c.worst = std::max(c.worst, dev);
      if (!(dev <= c.tolerance)) {
        c.pass = false;
        report.pass = false;
        if (!first_failure_reported) {
          first_failure_reported = true;
          failures << "first failure: draw " << draw << " (draw_seed=" << draw_seed << ") check "
                   << name << " deviation " << format_sci(dev) << " > " << format_sci(c.tolerance)
                   << "\n";
        }
      }
    }
  }

  std::ostringstream text;
  text << "hypercpf verify seed=" << options.seed << " draws=" << options.draws
       << " oracle=" << (options.oracle ? "on" : "off")
       << " feed_forward=" << (options.mutate_feed_forward ? "mutated" : "standard") << "\n";
  for (const auto& c : report.checks) {
    char line[128];
    std::snprintf(line, sizeof line, "check %-26s %s  worst=%s  tol=%s\n", c.name.c_str(),
                  c.pass ? "PASS" : "FAIL", format_sci(c.worst).c_str(),
                  format_sci(c.tolerance).c_str());
    text << line;
  }
  text << failures.str();
  text << "result: " << (report.pass ? "PASS" : "FAIL") << "\n";
  report.text = text.str();
  return report;
}

}  // namespace hypercpf
