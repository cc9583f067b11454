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
#include <string>
#include <string_view>
#include <vector>

#include "bellforge/types.hpp"

namespace bellforge {

/**
 * Two photons distributed over L spatial modes with two polarizations each.
 *
 * The state is sum_{m,m'} C_{mm'} b^dag_m b^dag_{m'} |vac>, with C stored
 * exactly symmetric. Its squared norm is 2 * sum |C_{mm'}|^2, so one photon
 * in each of two distinct modes with unit amplitude has C_{mm'} = C_{m'm} =
 * 1/2. A passive mode unitary U acts as C -> U C U^T.
 */
class TwoPhotonState {
 public:
  explicit TwoPhotonState(int spatial_modes);

  /// Symmetrizes `amps`; operator ordering makes (M + M^T)/2 the same state.
  static TwoPhotonState from_matrix(int spatial_modes, const Matrix& amps);

  int spatial_modes() const { return spatial_modes_; }
  int dim() const { return 2 * spatial_modes_; }
  const Matrix& amplitudes() const { return amps_; }

  /// Adds `amplitude` times the normalized basis state with one photon in `a`
  /// and one in `b` (for a == b, b^dag_a^2 |vac> / sqrt(2)).
  void add_pair(PhotonMode a, PhotonMode b, Complex amplitude);

  /// Amplitude on the normalized basis state |1_a 1_b> for a != b.
  Complex pair_amplitude(int a, int b) const;

  double norm_squared() const;

  TwoPhotonState transformed(const Matrix& unitary) const;

 private:
  void check_mode(PhotonMode m) const;

  int spatial_modes_;
  Matrix amps_;
};

/// 16 amplitudes of a four-qubit state, index (s1 s2 s3 s4) read as a binary
/// number with H = 0, V = 1 and qubit 1 the most significant bit.
class FourQubitState {
 public:
  FourQubitState() { amps_.fill(Complex(0.0, 0.0)); }
  explicit FourQubitState(const std::array<Complex, 16>& amps) : amps_(amps) {}

  static constexpr int index(int s1, int s2, int s3, int s4) {
    return (s1 << 3) | (s2 << 2) | (s3 << 1) | s4;
  }
  /// Index of a label such as "HHVV"; throws on malformed input.
  static int index(std::string_view label);
  static std::string label(int index);

  Complex& operator[](int i) { return amps_.at(i); }
  const Complex& operator[](int i) const { return amps_.at(i); }
  Complex& at(std::string_view label) { return amps_.at(index(label)); }
  const Complex& at(std::string_view label) const {
    return amps_.at(index(label));
  }

  const std::array<Complex, 16>& amplitudes() const { return amps_; }

  double norm_squared() const;
  double norm() const;
  bool is_normalized(double tol = 1e-12) const;
  /// Returns the unit vector along this state; throws if the norm is zero.
  FourQubitState normalized() const;

  FourQubitState operator*(Complex s) const;
  FourQubitState operator+(const FourQubitState& o) const;
  FourQubitState operator-(const FourQubitState& o) const;

  /// 4x4 reshaping with rows (s1, s4) and columns (s2, s3); the bipartition
  /// between the remote nodes and the co-located nodes.
  Matrix4 bipartite_matrix() const;
  static FourQubitState from_bipartite_matrix(const Matrix4& m);

 private:
  std::array<Complex, 16> amps_;
};

/// <a|b>, conjugate-linear in the first argument.
Complex overlap(const FourQubitState& a, const FourQubitState& b);

/**
 * Network state: polarization qubits at nodes 1 and 4 tensored with the
 * two-photon state of nodes 2 and 3, stored as one TwoPhotonState per
 * (s1, s4) pair.
 */
class JointState {
 public:
  explicit JointState(int spatial_modes);

  int spatial_modes() const { return spatial_modes_; }
  int dim() const { return 2 * spatial_modes_; }

  TwoPhotonState& block(Polarization s1, Polarization s4) {
    return blocks_.at(2 * pol_bit(s1) + pol_bit(s4));
  }
  const TwoPhotonState& block(Polarization s1, Polarization s4) const {
    return blocks_.at(2 * pol_bit(s1) + pol_bit(s4));
  }
  /// Block by flat index 2*s1 + s4.
  TwoPhotonState& block(int i) { return blocks_.at(i); }
  const TwoPhotonState& block(int i) const { return blocks_.at(i); }

  double norm_squared() const;

 private:
  int spatial_modes_;
  std::vector<TwoPhotonState> blocks_;
};

/// |Phi+>_{1,2} |Phi+>_{3,4}: node-2 photon in spatial mode 0, node-3 photon
/// in spatial mode 1, polarizations copied from nodes 1 and 4.
JointState make_bell_pairs(int spatial_modes);

/**
 * Loads a four-qubit state with the node-2/3 qubits carried by photons in
 * spatial modes 0 and 1, the same way make_bell_pairs loads the Bell pairs.
 */
JointState load_four_qubit_state(int spatial_modes, const FourQubitState& psi);

enum class Target {
  C4,
  GHZ4,
  W4,
  D4_2,
  BellPairs_13_24,
  BellPairs_14_23,
  Chi,
};

inline constexpr std::array<Target, 7> kAllTargets = {
    Target::C4,   Target::GHZ4,           Target::W4,
    Target::D4_2, Target::BellPairs_13_24, Target::BellPairs_14_23,
    Target::Chi};

std::string target_name(Target t);
/// Accepts the names returned by target_name; throws std::invalid_argument.
Target parse_target(std::string_view name);

FourQubitState target_state(Target t);
/// Overload for the string form; unknown names throw std::invalid_argument.
FourQubitState target_state(std::string_view name);

/// |Phi+>_{1,2}|Phi+>_{3,4} as a four-qubit vector (the identity-circuit
/// output after coincidence postselection).
FourQubitState initial_bell_pairs_state();

}  // namespace bellforge
