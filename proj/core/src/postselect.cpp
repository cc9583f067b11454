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

#include "bellforge/postselect.hpp"

#include <algorithm>
#include <cmath>

namespace bellforge {

DetectorModel::DetectorModel(double eta_, double eta_prime_)
    : eta(eta_), eta_prime(eta_prime_) {
  if (!(eta >= 0.0 && eta <= 1.0) || !(eta_prime >= 0.0 && eta_prime <= 1.0)) {
    throw std::invalid_argument("detector efficiencies must lie in [0, 1]");
  }
}

FourQubitState coincidence_amplitudes(const JointState& s) {
  FourQubitState a;
  for (int s1 = 0; s1 < 2; ++s1) {
    for (int s4 = 0; s4 < 2; ++s4) {
      const TwoPhotonState& b = s.block(2 * s1 + s4);
      for (int s2 = 0; s2 < 2; ++s2) {
        for (int s3 = 0; s3 < 2; ++s3) {
          a[FourQubitState::index(s1, s2, s3, s4)] =
              b.pair_amplitude(mode_index(0, pol_from_bit(s2)),
                               mode_index(1, pol_from_bit(s3)));
        }
      }
    }
  }
  return a;
}

ConversionOutcome evaluate(
    const JointState& s, const FourQubitState& target,
    const DetectorModel& detectors) {
  if (!target.is_normalized(1e-9)) {
    throw std::invalid_argument("target state must be unit norm");
  }
  ConversionOutcome out;
  out.eta_product = detectors.product();
  const FourQubitState amps = coincidence_amplitudes(s);
  const double raw = amps.norm_squared();
  out.p_suc = std::clamp(out.eta_product * raw, 0.0, 1.0);
  if (raw <= kZeroProbability) {
    out.p_suc = 0.0;
    return out;
  }
  FourQubitState psi = amps.normalized();
  out.fidelity = std::min(1.0, std::abs(overlap(target, psi)));
  out.output = std::move(psi);
  return out;
}

ConversionOutcome simulate(
    const Circuit& c, const JointState& initial, const FourQubitState& target,
    const DetectorModel& detectors) {
  return evaluate(apply(compose(c), initial), target, detectors);
}

ConversionOutcome simulate(
    const Circuit& c, const FourQubitState& target,
    const DetectorModel& detectors) {
  return simulate(c, make_bell_pairs(c.spatial_modes), target, detectors);
}

}  // namespace bellforge
