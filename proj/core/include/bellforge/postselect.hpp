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

#include <optional>

#include "bellforge/optics.hpp"
#include "bellforge/states.hpp"

namespace bellforge {

/// Coincidence probabilities at or below this are treated as exact zero.
inline constexpr double kZeroProbability = 1e-28;

/// Efficiencies of the two polarization-insensitive threshold detectors on
/// output spatial modes 0 and 1.
struct DetectorModel {
  double eta = 1.0;
  double eta_prime = 1.0;

  DetectorModel() = default;
  /// Throws std::invalid_argument unless both lie in [0, 1].
  DetectorModel(double eta_, double eta_prime_);

  double product() const { return eta * eta_prime; }
};

/**
 * Result of running a circuit and postselecting on one photon in each of the
 * two detector modes.
 *
 * `fidelity` is the modulus |<t|psi_out>| (not its square). Both `fidelity`
 * and `output` are empty when no amplitude survives postselection.
 */
struct ConversionOutcome {
  double p_suc = 0.0;
  std::optional<double> fidelity;
  std::optional<FourQubitState> output;
  double eta_product = 1.0;
};

/**
 * Unnormalized four-qubit amplitudes kept by the coincidence projector:
 * A[s1 s2 s3 s4] is the amplitude of (qubits 1,4 in s1,s4) x (one photon in
 * spatial mode 0 with polarization s2, one in spatial mode 1 with s3).
 */
FourQubitState coincidence_amplitudes(const JointState& s);

/// Throws std::invalid_argument if `target` is not unit norm to 1e-9.
ConversionOutcome evaluate(
    const JointState& s, const FourQubitState& target,
    const DetectorModel& detectors = {});

/// evaluate(apply(compose(c), initial), target, detectors).
ConversionOutcome simulate(
    const Circuit& c, const JointState& initial, const FourQubitState& target,
    const DetectorModel& detectors = {});

/// simulate() on make_bell_pairs(c.spatial_modes).
ConversionOutcome simulate(
    const Circuit& c, const FourQubitState& target,
    const DetectorModel& detectors = {});

}  // namespace bellforge
