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

#include <bellforge/serialization.hpp>

namespace bellforge::cli {

template <class ExplicitFlag>
void apply_config_file(const std::string& path, RunConfig& cfg,
                       ExplicitFlag explicit_flag) {
  const json j = read_json_file(path);
  if (!j.is_object()) {
    throw std::invalid_argument("config file must hold a JSON object");
  }
  auto take = [&](const char* key, auto& field) {
    if (!j.contains(key) || explicit_flag(key)) return;
    try {
      field = j.at(key).get<std::decay_t<decltype(field)>>();
    } catch (const json::exception& e) {
      throw std::invalid_argument(
          std::string("bad config key '") + key + "': " + e.what());
    }
  };
  take("out", cfg.out);
  take("seed", cfg.seed);
  take("L", cfg.spatial_modes);
  take("restarts", cfg.restarts);
  take("epsilon", cfg.epsilon);
  take("grid_step", cfg.grid_step);
  take("eta", cfg.eta);
  take("eta_prime", cfg.eta_prime);
  take("threads", cfg.threads);
}

}  // namespace bellforge::cli
