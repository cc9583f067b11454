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

#include "bellforge/states.hpp"

#include <cmath>

namespace bellforge {

namespace {

void require_modes(int spatial_modes) {
  if (spatial_modes < 2) {
    throw std::invalid_argument(
        "spatial mode count must be at least 2, got " +
        std::to_string(spatial_modes));
  }
}

}  // namespace

/******************************* TwoPhotonState *******************************/

TwoPhotonState::TwoPhotonState(int spatial_modes)
    : spatial_modes_(spatial_modes) {
  require_modes(spatial_modes);
  amps_ = Matrix::Zero(dim(), dim());
}

TwoPhotonState TwoPhotonState::from_matrix(
    int spatial_modes, const Matrix& amps) {
  TwoPhotonState s(spatial_modes);
  if (amps.rows() != s.dim() || amps.cols() != s.dim()) {
    throw std::invalid_argument("two-photon amplitude matrix has wrong shape");
  }
  s.amps_ = 0.5 * (amps + amps.transpose());
  // Averaging can leave the two halves differing in the last bit.
  for (int i = 0; i < s.dim(); ++i) {
    for (int j = i + 1; j < s.dim(); ++j) s.amps_(j, i) = s.amps_(i, j);
  }
  return s;
}

void TwoPhotonState::check_mode(PhotonMode m) const {
  if (m.spatial < 0 || m.spatial >= spatial_modes_) {
    throw std::invalid_argument(
        "spatial mode " + std::to_string(m.spatial) + " out of range for L=" +
        std::to_string(spatial_modes_));
  }
}

void TwoPhotonState::add_pair(PhotonMode a, PhotonMode b, Complex amplitude) {
  check_mode(a);
  check_mode(b);
  const int i = a.index();
  const int j = b.index();
  if (i == j) {
    // b^dag^2 |vac> has norm sqrt(2).
    amps_(i, i) += amplitude / std::sqrt(2.0);
  } else {
    amps_(i, j) += 0.5 * amplitude;
    amps_(j, i) += 0.5 * amplitude;
  }
}

Complex TwoPhotonState::pair_amplitude(int a, int b) const {
  return amps_(a, b) + amps_(b, a);
}

double TwoPhotonState::norm_squared() const {
  return 2.0 * amps_.squaredNorm();
}

TwoPhotonState TwoPhotonState::transformed(const Matrix& unitary) const {
  if (unitary.rows() != dim() || unitary.cols() != dim()) {
    throw std::invalid_argument("mode unitary dimension does not match state");
  }
  TwoPhotonState out(spatial_modes_);
  Matrix c = unitary * amps_ * unitary.transpose();
  out.amps_ = 0.5 * (c + c.transpose());
  for (int i = 0; i < dim(); ++i) {
    for (int j = i + 1; j < dim(); ++j) out.amps_(j, i) = out.amps_(i, j);
  }
  return out;
}

/******************************* FourQubitState *******************************/

int FourQubitState::index(std::string_view label) {
  if (label.size() != 4) {
    throw std::invalid_argument(
        "four-qubit label must have 4 characters: " + std::string(label));
  }
  int idx = 0;
  for (char c : label) {
    idx <<= 1;
    if (c == 'V' || c == 'v' || c == '1') {
      idx |= 1;
    } else if (c != 'H' && c != 'h' && c != '0') {
      throw std::invalid_argument(
          "bad polarization in label: " + std::string(label));
    }
  }
  return idx;
}

std::string FourQubitState::label(int index) {
  std::string out(4, 'H');
  for (int q = 0; q < 4; ++q) {
    if ((index >> (3 - q)) & 1) out[q] = 'V';
  }
  return out;
}

double FourQubitState::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

double FourQubitState::norm() const { return std::sqrt(norm_squared()); }

bool FourQubitState::is_normalized(double tol) const {
  return std::abs(norm() - 1.0) <= tol;
}

FourQubitState FourQubitState::normalized() const {
  const double n = norm();
  if (n == 0.0) throw std::invalid_argument("cannot normalize the zero vector");
  return *this * Complex(1.0 / n, 0.0);
}

FourQubitState FourQubitState::operator*(Complex s) const {
  FourQubitState out(*this);
  for (auto& a : out.amps_) a *= s;
  return out;
}

FourQubitState FourQubitState::operator+(const FourQubitState& o) const {
  FourQubitState out(*this);
  for (int i = 0; i < 16; ++i) out.amps_[i] += o.amps_[i];
  return out;
}

FourQubitState FourQubitState::operator-(const FourQubitState& o) const {
  FourQubitState out(*this);
  for (int i = 0; i < 16; ++i) out.amps_[i] -= o.amps_[i];
  return out;
}

Matrix4 FourQubitState::bipartite_matrix() const {
  Matrix4 m;
  for (int i = 0; i < 16; ++i) {
    const int s1 = (i >> 3) & 1, s2 = (i >> 2) & 1, s3 = (i >> 1) & 1,
              s4 = i & 1;
    m(2 * s1 + s4, 2 * s2 + s3) = amps_[i];
  }
  return m;
}

FourQubitState FourQubitState::from_bipartite_matrix(const Matrix4& m) {
  FourQubitState out;
  for (int i = 0; i < 16; ++i) {
    const int s1 = (i >> 3) & 1, s2 = (i >> 2) & 1, s3 = (i >> 1) & 1,
              s4 = i & 1;
    out.amps_[i] = m(2 * s1 + s4, 2 * s2 + s3);
  }
  return out;
}

Complex overlap(const FourQubitState& a, const FourQubitState& b) {
  Complex s(0.0, 0.0);
  for (int i = 0; i < 16; ++i) s += std::conj(a[i]) * b[i];
  return s;
}

/********************************* JointState *********************************/

JointState::JointState(int spatial_modes) : spatial_modes_(spatial_modes) {
  require_modes(spatial_modes);
  blocks_.assign(4, TwoPhotonState(spatial_modes));
}

double JointState::norm_squared() const {
  double s = 0.0;
  for (const auto& b : blocks_) s += b.norm_squared();
  return s;
}

JointState make_bell_pairs(int spatial_modes) {
  JointState s(spatial_modes);
  for (int s1 = 0; s1 < 2; ++s1) {
    for (int s4 = 0; s4 < 2; ++s4) {
      s.block(2 * s1 + s4)
          .add_pair(
              PhotonMode{0, pol_from_bit(s1)}, PhotonMode{1, pol_from_bit(s4)},
              Complex(0.5, 0.0));
    }
  }
  return s;
}

JointState load_four_qubit_state(int spatial_modes, const FourQubitState& psi) {
  JointState s(spatial_modes);
  for (int i = 0; i < 16; ++i) {
    if (psi[i] == Complex(0.0, 0.0)) continue;
    const int s1 = (i >> 3) & 1, s2 = (i >> 2) & 1, s3 = (i >> 1) & 1,
              s4 = i & 1;
    s.block(2 * s1 + s4)
        .add_pair(
            PhotonMode{0, pol_from_bit(s2)}, PhotonMode{1, pol_from_bit(s3)},
            psi[i]);
  }
  return s;
}

/******************************* Named targets ********************************/

std::string target_name(Target t) {
  switch (t) {
    case Target::C4:
      return "C4";
    case Target::GHZ4:
      return "GHZ4";
    case Target::W4:
      return "W4";
    case Target::D4_2:
      return "D4_2";
    case Target::BellPairs_13_24:
      return "BellPairs_13_24";
    case Target::BellPairs_14_23:
      return "BellPairs_14_23";
    case Target::Chi:
      return "Chi";
  }
  throw std::invalid_argument("unknown target");
}

Target parse_target(std::string_view name) {
  for (Target t : kAllTargets) {
    if (name == target_name(t)) return t;
  }
  throw std::invalid_argument("unknown target state: " + std::string(name));
}

FourQubitState target_state(Target t) {
  FourQubitState s;
  const double half = 0.5;
  const double r2 = 1.0 / std::sqrt(2.0);
  switch (t) {
    case Target::C4:
      s.at("HHHH") = half;
      s.at("HHVV") = half;
      s.at("VVHH") = half;
      s.at("VVVV") = -half;
      break;
    case Target::GHZ4:
      s.at("HHHH") = r2;
      s.at("VVVV") = r2;
      break;
    case Target::W4:
      for (auto l : {"HHHV", "HHVH", "HVHH", "VHHH"}) s.at(l) = half;
      break;
    case Target::D4_2: {
      const double r6 = 1.0 / std::sqrt(6.0);
      for (auto l : {"HHVV", "HVHV", "VHHV", "HVVH", "VHVH", "VVHH"}) {
        s.at(l) = r6;
      }
      break;
    }
    case Target::BellPairs_13_24:
      // q1 = q3 and q2 = q4.
      for (auto l : {"HHHH", "HVHV", "VHVH", "VVVV"}) s.at(l) = half;
      break;
    case Target::BellPairs_14_23:
      // q1 = q4 and q2 = q3.
      for (auto l : {"HHHH", "HVVH", "VHHV", "VVVV"}) s.at(l) = half;
      break;
    case Target::Chi: {
      const double c = 1.0 / (2.0 * std::sqrt(2.0));
      for (auto l : {"HHHH", "VHHV", "HVVH", "VHVH", "VVHH", "VVVV"}) {
        s.at(l) = c;
      }
      s.at("HHVV") = -c;
      s.at("HVHV") = -c;
      break;
    }
  }
  return s;
}

FourQubitState target_state(std::string_view name) {
  return target_state(parse_target(name));
}

FourQubitState initial_bell_pairs_state() {
  FourQubitState s;
  // q1 = q2 and q3 = q4.
  for (auto l : {"HHHH", "HHVV", "VVHH", "VVVV"}) s.at(l) = 0.5;
  return s;
}

}  // namespace bellforge
