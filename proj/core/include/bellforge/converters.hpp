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

#include <array>
#include <boost/rational.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bellforge/optics.hpp"
#include "bellforge/postselect.hpp"
#include "bellforge/states.hpp"

namespace bellforge {

using Rational = boost::rational<std::int64_t>;

/// Transmittances shared by every PDBS of the cluster-state converter.
struct PdbsParams {
  double t_h = 1.0;
  double t_v = 1.0 / 3.0;

  /// Throws std::invalid_argument unless both lie in [0, 1].
  void validate() const;
};

/**
 * Placement of the two vacuum-coupled attenuating PDBSs relative to the
 * central PDBS. Both reproduce the closed forms; AttenuateFirst is the
 * default.
 */
enum class C4Layout { AttenuateFirst, AttenuateLast };

/// Four spatial modes: signals 0, 1 and vacuum (failure) modes 2, 3.
Circuit c4_converter(const PdbsParams& p = {},
                     C4Layout layout = C4Layout::AttenuateFirst);

struct ClosedForm {
  double p_suc = 0.0;
  /// Empty when the radicand vanishes.
  std::optional<double> fidelity;
};

ClosedForm c4_closed_form(const PdbsParams& p, const DetectorModel& d = {});

/// PBS on the two signal modes followed by Z on mode 0.
Circuit ghz_converter();

enum class BellRewire { Pairs13_24, Pairs14_23 };

Circuit bell_rewire_converter(BellRewire target);

/// Acts on |C4> loaded with load_four_qubit_state(2, ...).
Circuit chi_from_c4_converter();

struct SensitivityPoint {
  double t_h = 0.0;
  double t_v = 0.0;
  double eta = 1.0;
  double eta_prime = 1.0;
  double p_closed = 0.0;
  double p_sim = 0.0;
  std::optional<double> fidelity_closed;
  std::optional<double> fidelity_sim;
};

struct GridRange {
  double lo = 0.0;
  double hi = 1.0;
};

/// Row-major over t_h then t_v; points are lo + k*step up to hi (inclusive
/// within 1e-9 of a step). Throws std::invalid_argument on a bad grid.
std::vector<SensitivityPoint> sensitivity_grid(
    GridRange t_h, GridRange t_v, double step, const DetectorModel& d = {},
    int threads = 0);

SensitivityPoint sensitivity_point(
    const PdbsParams& p, const DetectorModel& d = {});

struct CompositeStage {
  std::string label;
  Rational probability;
  int ancillas = 0;
};

struct CompositeScheme {
  std::string name;
  std::vector<CompositeStage> stages;
  Rational total_probability{1};
  int total_ancillas = 0;
};

inline constexpr std::array<std::string_view, 5> kCompositeSchemeNames = {
    "D4_via_KLM", "Chi_via_KLM", "W4_via_fusion", "KLM_C4", "KLM_3CZ"};

/// Throws std::invalid_argument for unknown names.
CompositeScheme composite_scheme(std::string_view name);

/// Half-wave-plate angles theta_+ and theta_- of the Dicke-state stage, with
/// 2 theta = arcsin sqrt((5 +- sqrt 5) / 10).
double dicke_hwp_theta_plus();
double dicke_hwp_theta_minus();

/// Optimal success probability from the two-Bell-pair input.
Rational table1_value(Target t);

/// A hand-built circuit together with the state it acts on.
struct NamedConverter {
  std::string name;
  Circuit circuit;
  JointState initial;
};

/// Hand-built converter reaching table1_value(t) from the Bell pairs, if one
/// exists for the target.
std::optional<NamedConverter> named_converter(Target t);

}  // namespace bellforge
