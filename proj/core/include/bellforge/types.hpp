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

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace bellforge {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;

enum class Polarization : int { H = 0, V = 1 };

constexpr int pol_bit(Polarization p) { return static_cast<int>(p); }
constexpr Polarization pol_from_bit(int b) {
  return b == 0 ? Polarization::H : Polarization::V;
}
inline char pol_char(Polarization p) { return p == Polarization::H ? 'H' : 'V'; }

/**
 * A single-photon mode: spatial index (0-based, < L) and polarization.
 * The flat index used by every matrix in the library is 2*spatial + pol.
 */
struct PhotonMode {
  int spatial = 0;
  Polarization polarization = Polarization::H;

  constexpr int index() const { return 2 * spatial + pol_bit(polarization); }
  friend constexpr bool operator==(const PhotonMode&, const PhotonMode&) =
      default;
};

inline int mode_index(int spatial, Polarization p) {
  return 2 * spatial + pol_bit(p);
}

/// Thrown when a state does not satisfy the equal-Schmidt-coefficient
/// criterion required by the two-qubit unitary construction.
class NotConvertible : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace bellforge
