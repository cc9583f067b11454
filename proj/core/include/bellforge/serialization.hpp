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

#include <nlohmann/json.hpp>
#include <string>

#include "bellforge/converters.hpp"
#include "bellforge/optimizer.hpp"
#include "bellforge/postselect.hpp"
#include "bellforge/schmidt_kak.hpp"
#include "bellforge/states.hpp"

namespace bellforge {

using json = nlohmann::json;

inline constexpr int kCircuitFormatVersion = 1;

/// Fixed 17-significant-digit rendering used by every CSV writer.
std::string format_double(double x);
std::string format_rational(const Rational& r);
/// Parses "a/b" or "a"; throws std::invalid_argument.
Rational parse_rational(const std::string& s);

// Complex numbers are [re, im] pairs. All from_json overloads throw
// std::invalid_argument on malformed input.
void to_json(json& j, const FourQubitState& s);
void from_json(const json& j, FourQubitState& s);

json joint_state_to_json(const JointState& s);
JointState joint_state_from_json(const json& j);

/// {"version": 1, "L": ..., "elements": [{"kind": "PDBS", ...}, ...]}
void to_json(json& j, const Circuit& c);
/// Validates the circuit after parsing.
void from_json(const json& j, Circuit& c);

void to_json(json& j, const ConversionOutcome& o);
void to_json(json& j, const SchmidtData& s);
void to_json(json& j, const CompositeScheme& s);

void to_json(json& j, const OptimizerConfig& c);
/// Missing keys keep their defaults.
void from_json(const json& j, OptimizerConfig& c);
void to_json(json& j, const RestartRecord& r);
void to_json(json& j, const OptimizationResult& r);

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

/// Reads and parses a JSON file; throws std::runtime_error on IO failure and
/// std::invalid_argument on malformed JSON.
json read_json_file(const std::string& path);
Circuit load_circuit(const std::string& path);
FourQubitState load_four_qubit_state_file(const std::string& path);

}  // namespace bellforge
