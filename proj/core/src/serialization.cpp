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


#include "bellforge/serialization.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace bellforge {

namespace {

template <class T>
T get_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw std::invalid_argument(std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(
        std::string("bad field '") + key + "': " + e.what());
  }
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number()) {
    throw std::invalid_argument("complex numbers are [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

const char* polarization_select_name(PolarizationSelect p) {
  switch (p) {
    case PolarizationSelect::H:
      return "H";
    case PolarizationSelect::V:
      return "V";
    default:
      return "both";
  }
}

PolarizationSelect parse_polarization_select(const std::string& s) {
  if (s == "H") return PolarizationSelect::H;
  if (s == "V") return PolarizationSelect::V;
  if (s == "both") return PolarizationSelect::Both;
  throw std::invalid_argument("polarization must be H, V or both");
}

std::pair<int, int> mode_pair(const json& e) {
  const auto modes = get_field<std::vector<int>>(e, "modes");
  if (modes.size() != 2) {
    throw std::invalid_argument("two-mode elements need \"modes\": [j, k]");
  }
  return {modes[0], modes[1]};
}

json element_to_json(const CircuitElement& e) {
  json j;
  j["kind"] = element_kind(e);
  if (const auto* p = std::get_if<element::Pdbs>(&e)) {
    j["tH"] = p->t_h;
    j["tV"] = p->t_v;
    j["modes"] = {p->first, p->second};
  } else if (const auto* p = std::get_if<element::Pbs>(&e)) {
    j["modes"] = {p->first, p->second};
  } else if (const auto* p = std::get_if<element::Swap>(&e)) {
    j["modes"] = {p->first, p->second};
  } else if (const auto* p = std::get_if<element::Hwp>(&e)) {
    j["angle"] = p->angle;
    j["mode"] = p->mode;
  } else if (const auto* p = std::get_if<element::PhaseShifter>(&e)) {
    j["phase"] = p->phase;
    j["mode"] = p->mode;
    j["polarization"] = polarization_select_name(p->polarization);
  } else if (const auto* p = std::get_if<element::Hadamard>(&e)) {
    j["mode"] = p->mode;
  } else if (const auto* p = std::get_if<element::PauliX>(&e)) {
    j["mode"] = p->mode;
  } else if (const auto* p = std::get_if<element::PauliZ>(&e)) {
    j["mode"] = p->mode;
  }
  return j;
}

CircuitElement element_from_json(const json& j) {
  const auto kind = get_field<std::string>(j, "kind");
  if (kind == "PDBS") {
    const auto [a, b] = mode_pair(j);
    return element::Pdbs{get_field<double>(j, "tH"), get_field<double>(j, "tV"),
                         a, b};
  }
  if (kind == "PBS") {
    const auto [a, b] = mode_pair(j);
    return element::Pbs{a, b};
  }
  if (kind == "Swap") {
    const auto [a, b] = mode_pair(j);
    return element::Swap{a, b};
  }
  if (kind == "HWP") {
    return element::Hwp{get_field<double>(j, "angle"), get_field<int>(j, "mode")};
  }
  if (kind == "PhaseShifter") {
    const std::string pol =
        j.contains("polarization") ? get_field<std::string>(j, "polarization")
                                   : "both";
    return element::PhaseShifter{get_field<double>(j, "phase"),
                                 get_field<int>(j, "mode"),
                                 parse_polarization_select(pol)};
  }
  if (kind == "Hadamard") return element::Hadamard{get_field<int>(j, "mode")};
  if (kind == "PauliX") return element::PauliX{get_field<int>(j, "mode")};
  if (kind == "PauliZ") return element::PauliZ{get_field<int>(j, "mode")};
  throw std::invalid_argument("unknown element kind '" + kind + "'");
}

const char* kBlockNames[4] = {"HH", "HV", "VH", "VV"};

}  // namespace

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string format_rational(const Rational& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << '/' << r.denominator();
  return os.str();
}

Rational parse_rational(const std::string& s) {
  try {
    std::size_t used = 0;
    const auto slash = s.find('/');
    const long long num = std::stoll(s.substr(0, slash), &used);
    if (used != (slash == std::string::npos ? s.size() : slash)) {
      throw std::invalid_argument("");
    }
    if (slash == std::string::npos) return Rational(num);
    const std::string den_str = s.substr(slash + 1);
    const long long den = std::stoll(den_str, &used);
    if (used != den_str.size() || den == 0) throw std::invalid_argument("");
    return Rational(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed rational '" + s + "'");
  }
}

void to_json(json& j, const FourQubitState& s) {
  j = json::array();
  for (int i = 0; i < 16; ++i) j.push_back(complex_to_json(s[i]));
}

void from_json(const json& j, FourQubitState& s) {
  const json& arr = j.is_object() && j.contains("amplitudes") ? j["amplitudes"] : j;
  if (arr.is_object()) {
    s = FourQubitState();
    for (const auto& [label, value] : arr.items()) {
      s.at(label) = complex_from_json(value);
    }
    return;
  }
  if (!arr.is_array() || arr.size() != 16) {
    throw std::invalid_argument(
        "four-qubit state needs 16 amplitudes or a label map");
  }
  for (int i = 0; i < 16; ++i) s[i] = complex_from_json(arr[i]);
}

json joint_state_to_json(const JointState& s) {
  json j;
  j["L"] = s.spatial_modes();
  json blocks = json::object();
  for (int b = 0; b < 4; ++b) {
    json flat = json::array();
    const Matrix& m = s.block(b).amplitudes();
    for (int r = 0; r < m.rows(); ++r) {
      for (int c = 0; c < m.cols(); ++c) flat.push_back(complex_to_json(m(r, c)));
    }
    blocks[kBlockNames[b]] = std::move(flat);
  }
  j["blocks"] = std::move(blocks);
  return j;
}

JointState joint_state_from_json(const json& j) {
  const int l = get_field<int>(j, "L");
  JointState s(l);
  const json& blocks = j.at("blocks");
  const int n = 2 * l;
  for (int b = 0; b < 4; ++b) {
    if (!blocks.contains(kBlockNames[b])) continue;
    const json& flat = blocks[kBlockNames[b]];
    if (!flat.is_array() || static_cast<int>(flat.size()) != n * n) {
      throw std::invalid_argument(
          std::string("block ") + kBlockNames[b] + " needs (2L)^2 entries");
    }
    Matrix m(n, n);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) m(r, c) = complex_from_json(flat[r * n + c]);
    }
    s.block(b) = TwoPhotonState::from_matrix(l, m);
  }
  return s;
}

void to_json(json& j, const Circuit& c) {
  j = json::object();
  j["version"] = kCircuitFormatVersion;
  j["L"] = c.spatial_modes;
  j["elements"] = json::array();
  for (const auto& e : c.elements) j["elements"].push_back(element_to_json(e));
}

void from_json(const json& j, Circuit& c) {
  if (j.contains("version") && get_field<int>(j, "version") != kCircuitFormatVersion) {
    throw std::invalid_argument("unsupported circuit format version");
  }
  Circuit out;
  out.spatial_modes = get_field<int>(j, "L");
  if (!j.contains("elements") || !j["elements"].is_array()) {
    throw std::invalid_argument("circuit needs an \"elements\" array");
  }
  for (const auto& e : j["elements"]) out.elements.push_back(element_from_json(e));
  validate(out);
  c = std::move(out);
}

void to_json(json& j, const ConversionOutcome& o) {
  j = json::object();
  j["p_suc"] = o.p_suc;
  j["fidelity"] = o.fidelity ? json(*o.fidelity) : json(nullptr);
  j["output"] = o.output ? json(*o.output) : json(nullptr);
  j["eta_product"] = o.eta_product;
}

void to_json(json& j, const SchmidtData& s) {
  j = json::object();
  j["coefficients"] = s.coefficients;
  j["rank"] = s.rank;
}

void to_json(json& j, const CompositeScheme& s) {
  j = json::object();
  j["name"] = s.name;
  j["stages"] = json::array();
  for (const auto& st : s.stages) {
    j["stages"].push_back({{"label", st.label},
                           {"probability", format_rational(st.probability)},
                           {"ancillas", st.ancillas}});
  }
  j["total_probability"] = format_rational(s.total_probability);
  j["total_ancillas"] = s.total_ancillas;
}

void to_json(json& j, const OptimizerConfig& c) {
  j = json::object();
  j["L"] = c.spatial_modes;
  j["restarts"] = c.restarts;
  j["epsilon"] = c.epsilon;
  j["penalty_schedule"] = c.penalty_schedule;
  j["max_iterations"] = c.max_iterations;
  j["seed"] = c.seed;
  j["tolerance"] = c.tolerance;
  j["zero_threshold"] = c.zero_threshold;
}

void from_json(const json& j, OptimizerConfig& c) {
  if (!j.is_object()) throw std::invalid_argument("optimizer config must be an object");
  if (j.contains("L")) c.spatial_modes = get_field<int>(j, "L");
  if (j.contains("restarts")) c.restarts = get_field<int>(j, "restarts");
  if (j.contains("epsilon")) c.epsilon = get_field<double>(j, "epsilon");
  if (j.contains("penalty_schedule")) {
    c.penalty_schedule = get_field<std::vector<double>>(j, "penalty_schedule");
  }
  if (j.contains("max_iterations")) {
    c.max_iterations = get_field<int>(j, "max_iterations");
  }
  if (j.contains("seed")) c.seed = get_field<std::uint64_t>(j, "seed");
  if (j.contains("tolerance")) c.tolerance = get_field<double>(j, "tolerance");
  if (j.contains("zero_threshold")) {
    c.zero_threshold = get_field<double>(j, "zero_threshold");
  }
  c.validate();
}

void to_json(json& j, const RestartRecord& r) {
  j = json::object();
  j["restart"] = r.index;
  j["seed"] = r.seed;
  j["p"] = r.p;
  j["fidelity"] = r.fidelity;
  j["feasible"] = r.feasible;
  j["stages"] = r.stages;
  j["iterations"] = r.iterations;
}

void to_json(json& j, const OptimizationResult& r) {
  j = json::object();
  j["best_p"] = r.best_p;
  j["fidelity"] = r.fidelity;
  j["best_effort_p"] = r.best_effort_p;
  j["converged"] = r.converged;
  j["restarts_used"] = r.restarts_used;
  j["best_restart"] = r.best_restart;
  j["best_unitary"] = matrix_to_json(r.best_unitary.matrix());
  j["history"] = r.history;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw std::invalid_argument("matrix must be an array of rows");
  }
  const auto rows = static_cast<int>(j.size());
  const auto cols = static_cast<int>(j[0].size());
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols) {
      throw std::invalid_argument("matrix rows must have equal length");
    }
    for (int c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[r][c]);
  }
  return m;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in '" + path + "': " + e.what());
  }
}

Circuit load_circuit(const std::string& path) {
  return read_json_file(path).get<Circuit>();
}

FourQubitState load_four_qubit_state_file(const std::string& path) {
  return read_json_file(path).get<FourQubitState>();
}

}  // namespace bellforge
