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


#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace bellforge::cli {

struct RunConfig {
  std::string out = ".";
  std::uint64_t seed = 0;
  int spatial_modes = 2;
  int restarts = 64;
  double epsilon = 1e-6;
  double grid_step = 0.01;
  double eta = 1.0;
  double eta_prime = 1.0;
  int threads = 0;
  std::string target;
  std::string circuit_path;
  std::string state_path;
  /// Target name or state file used as the optimizer input instead of the
  /// Bell pairs.
  std::string initial;
  bool trace = false;
  bool skip_optimizer = false;
};

/// Fills fields of `cfg` from a JSON config file, leaving keys for which
/// `explicit_flag(key)` is true untouched. Keys: out, seed, L, restarts,
/// epsilon, grid_step, eta, eta_prime, threads.
template <class ExplicitFlag>
void apply_config_file(const std::string& path, RunConfig& cfg,
                       ExplicitFlag explicit_flag);

// Each command writes its files under cfg.out, logs a summary to `log`, and
// returns 0 iff every embedded check passes.
int cmd_table1(const RunConfig& cfg, std::ostream& log);
int cmd_sensitivity(const RunConfig& cfg, std::ostream& log);
int cmd_schmidt(const RunConfig& cfg, std::ostream& log);
int cmd_optimize(const RunConfig& cfg, std::ostream& log);
int cmd_constraints(const RunConfig& cfg, std::ostream& log);
int cmd_composite(const RunConfig& cfg, std::ostream& log);

}  // namespace bellforge::cli

#include "bellforge_cli/config_impl.hpp"
