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

// hypercpf: command-line front end for the hyper-CPF gate simulator.

#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "hypercpf/commands.hpp"
#include "hypercpf/errors.hpp"
#include "hypercpf/gatecircuit.hpp"

namespace {

constexpr int kExitInvalid = 1;
constexpr int kExitInoperative = 2;
constexpr int kExitVerifyFailed = 3;

int write_text(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return kExitInvalid;
  }
  out << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heralded hyperparallel controlled-phase-flip gate simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::size_t workers = 0;
  std::uint64_t seed = 42;
  std::size_t draws = 100;
  bool no_oracle = false;
  bool mutate = false;
  double g = 0.0;
  double ks = 0.0;
  double p = 1.0;

  auto* simulate = app.add_subcommand("simulate", "Run the gate once and print the result as JSON");
  simulate->add_option("--config", config_path, "JSON run configuration")->required();
  simulate->add_option("--out", out_path, "Write JSON here instead of stdout");

  auto* sweep = app.add_subcommand("sweep", "Evaluate a two-axis parameter grid to CSV");
  sweep->add_option("--config", config_path, "JSON run configuration")->required();
  sweep->add_option("--out", out_path, "CSV output path ('-' for stdout)")->required();
  sweep->add_option("--workers", workers, "Worker threads (default: config, then #cpus)");

  auto* verify = app.add_subcommand("verify", "Run the invariant suite on seeded random draws");
  verify->add_option("--seed", seed, "Master seed");
  verify->add_option("--draws", draws, "Number of random draws")->check(CLI::PositiveNumber);
  verify->add_flag("--no-oracle", no_oracle, "Skip the dense-matrix comparison");
  verify->add_flag("--mutate-feed-forward", mutate,
                   "Inject a sign flip into the ++ correction (the suite must fail)");

  auto* closed = app.add_subcommand("closed-form", "Resonant efficiency at gamma = 0.1 kappa");
  closed->add_option("--g", g, "g / kappa")->required();
  closed->add_option("--ks", ks, "kappa_s / kappa")->required();
  closed->add_option("--p", p, "interaction completeness p")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) {
      const auto config = hypercpf::RunConfig::load(config_path);
      return write_text(hypercpf::cmd_simulate(config).dump(2) + "\n", out_path);
    }
    if (*sweep) {
      const auto config = hypercpf::RunConfig::load(config_path);
      const auto table = hypercpf::cmd_sweep(config, workers);
      std::ostringstream csv;
      hypercpf::write_csv(table, csv);
      return write_text(csv.str(), out_path);
    }
    if (*verify) {
      hypercpf::VerifyOptions options;
      options.seed = seed;
      options.draws = draws;
      options.oracle = !no_oracle;
      options.mutate_feed_forward = mutate;
      const auto report = hypercpf::cmd_verify(options);
      std::cout << report.text;
      return report.pass ? 0 : kExitVerifyFailed;
    }
    if (*closed) {
      if (!(p > 0.0 && p <= 1.0)) throw hypercpf::ValidationError("--p must lie in (0, 1]");
      if (g < 0.0 || ks < 0.0) throw hypercpf::ValidationError("--g and --ks must be >= 0");
      std::printf("%.17g\n", hypercpf::efficiency_closed_form(g, ks, p));
      return 0;
    }
  } catch (const hypercpf::GateInoperativeError& e) {
    std::cerr << "gate inoperative: " << e.what() << "\n";
    return kExitInoperative;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return 0;
}
