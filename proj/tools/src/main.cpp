// Copyright 2026 The BellForge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <bellforge/types.hpp>
#include <iostream>

#include "CLI11.hpp"
#include "bellforge_cli/commands.hpp"

int main(int argc, char** argv) {
  using bellforge::cli::RunConfig;
  CLI::App app{"Nonlocal two-Bell-pair conversion with linear optics"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file (flags win)");
  app.add_option("--out", cfg.out, "Output directory");
  app.add_option("--seed", cfg.seed, "Base RNG seed");
  app.add_option("--L", cfg.spatial_modes, "Number of spatial modes");
  app.add_option("--restarts", cfg.restarts, "Optimizer restarts");
  app.add_option("--epsilon", cfg.epsilon, "Fidelity floor is 1 - epsilon");
  app.add_option("--grid-step", cfg.grid_step, "Sensitivity grid step");
  app.add_option("--eta", cfg.eta, "Detector efficiency on mode 1'");
  app.add_option("--eta-prime", cfg.eta_prime, "Detector efficiency on mode 2'");
  app.add_option("--threads", cfg.threads, "Worker threads (0 = auto)");

  auto* table1 = app.add_subcommand("table1", "Reference success probabilities");
  table1->add_flag("--skip-optimizer", cfg.skip_optimizer,
                   "Only check the named converters");
  app.add_subcommand("sensitivity", "Transmittance sweep of the C4 converter");
  auto* schmidt = app.add_subcommand("schmidt", "Schmidt coefficients and verdicts");
  schmidt->add_option("--state", cfg.state_path, "Extra four-qubit state file");
  auto* optimize = app.add_subcommand("optimize", "Maximize p_suc for a target");
  optimize->add_option("--target", cfg.target, "Target name")->required();
  optimize->add_option("--initial", cfg.initial, "Input target name or state file");
  optimize->add_flag("--trace", cfg.trace, "Write per-iteration CSV");
  auto* constraints =
      app.add_subcommand("constraints", "Coincidence residuals of a circuit");
  constraints->add_option("--target", cfg.target, "Target name")->required();
  constraints->add_option("--circuit", cfg.circuit_path, "Circuit JSON")->required();
  app.add_subcommand("composite", "Ancilla-assisted probability algebra");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_path.empty()) {
      const std::map<std::string, std::string> flag_of = {
          {"out", "--out"},         {"seed", "--seed"},
          {"L", "--L"},             {"restarts", "--restarts"},
          {"epsilon", "--epsilon"}, {"grid_step", "--grid-step"},
          {"eta", "--eta"},         {"eta_prime", "--eta-prime"},
          {"threads", "--threads"}};
      bellforge::cli::apply_config_file(
          config_path, cfg, [&](const std::string& key) {
            return app.count(flag_of.at(key)) > 0;
          });
    }
    auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "table1") return bellforge::cli::cmd_table1(cfg, std::cout);
    if (name == "sensitivity") return bellforge::cli::cmd_sensitivity(cfg, std::cout);
    if (name == "schmidt") return bellforge::cli::cmd_schmidt(cfg, std::cout);
    if (name == "optimize") return bellforge::cli::cmd_optimize(cfg, std::cout);
    if (name == "constraints") return bellforge::cli::cmd_constraints(cfg, std::cout);
    if (name == "composite") return bellforge::cli::cmd_composite(cfg, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
