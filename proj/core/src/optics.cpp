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

#include "bellforge/optics.hpp"

#include <cmath>
#include <numbers>

namespace bellforge {

double unitarity_error(const Matrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  const Matrix d = m.adjoint() * m - Matrix::Identity(m.rows(), m.cols());
  return d.cwiseAbs().maxCoeff();
}

ModeUnitary::ModeUnitary(int spatial_modes, Matrix matrix, double tolerance)
    : spatial_modes_(spatial_modes), matrix_(std::move(matrix)) {
  if (spatial_modes < 1) {
    throw std::invalid_argument("mode unitary needs at least one spatial mode");
  }
  if (matrix_.rows() != dim() || matrix_.cols() != dim()) {
    throw std::invalid_argument(
        "mode unitary must be " + std::to_string(dim()) + "x" +
        std::to_string(dim()));
  }
  const double err = bellforge::unitarity_error(matrix_);
  if (!(err <= tolerance)) {
    throw std::invalid_argument(
        "matrix is not unitary (max |U^dag U - I| = " + std::to_string(err) +
        ")");
  }
}

ModeUnitary ModeUnitary::identity(int spatial_modes) {
  return ModeUnitary(
      spatial_modes, Matrix::Identity(2 * spatial_modes, 2 * spatial_modes));
}

double ModeUnitary::unitarity_error() const {
  return bellforge::unitarity_error(matrix_);
}

ModeUnitary ModeUnitary::then_after(const ModeUnitary& first) const {
  if (first.dim() != dim()) {
    throw std::invalid_argument("cannot compose unitaries of different size");
  }
  return ModeUnitary(spatial_modes_, matrix_ * first.matrix_);
}

/********************************* Elements ***********************************/

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_mode(int mode, int spatial_modes) {
  if (mode < 0 || mode >= spatial_modes) {
    throw std::invalid_argument(
        "element mode index " + std::to_string(mode) +
        " out of range for L=" + std::to_string(spatial_modes));
  }
}

void check_pair(int a, int b, int spatial_modes) {
  check_mode(a, spatial_modes);
  check_mode(b, spatial_modes);
  if (a == b) {
    throw std::invalid_argument("two-mode element needs distinct modes");
  }
}

void check_transmittance(double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument(
        "transmittance must lie in [0, 1], got " + std::to_string(t));
  }
}

void put_splitter(Matrix& u, int first, int second, int pol, double t) {
  const int a = 2 * first + pol;
  const int b = 2 * second + pol;
  const double tr = std::sqrt(t);
  const double r = std::sqrt(1.0 - t);
  u(a, a) = tr;
  u(b, b) = tr;
  u(b, a) = r;
  u(a, b) = -r;
}

void put_jones(Matrix& u, int mode, const Matrix2& j) {
  u.block<2, 2>(2 * mode, 2 * mode) = j;
}

Matrix2 hwp_jones(double angle) {
  const double c = std::cos(2.0 * angle);
  const double s = std::sin(2.0 * angle);
  Matrix2 j;
  j << c, s, s, -c;
  return j;
}

}  // namespace

std::string element_kind(const CircuitElement& e) {
  return std::visit(
      Overloaded{
          [](const element::Pdbs&) { return std::string("PDBS"); },
          [](const element::Pbs&) { return std::string("PBS"); },
          [](const element::Hwp&) { return std::string("HWP"); },
          [](const element::Hadamard&) { return std::string("Hadamard"); },
          [](const element::PhaseShifter&) {
            return std::string("PhaseShifter");
          },
          [](const element::PauliX&) { return std::string("PauliX"); },
          [](const element::PauliZ&) { return std::string("PauliZ"); },
          [](const element::Swap&) { return std::string("Swap"); },
      },
      e);
}

void validate(const CircuitElement& e, int spatial_modes) {
  std::visit(
      Overloaded{
          [&](const element::Pdbs& p) {
            check_transmittance(p.t_h);
            check_transmittance(p.t_v);
            check_pair(p.first, p.second, spatial_modes);
          },
          [&](const element::Pbs& p) {
            check_pair(p.first, p.second, spatial_modes);
          },
          [&](const element::Swap& p) {
            check_pair(p.first, p.second, spatial_modes);
          },
          [&](const element::Hwp& p) {
            if (!std::isfinite(p.angle)) {
              throw std::invalid_argument("wave plate angle must be finite");
            }
            check_mode(p.mode, spatial_modes);
          },
          [&](const element::PhaseShifter& p) {
            if (!std::isfinite(p.phase)) {
              throw std::invalid_argument("phase must be finite");
            }
            check_mode(p.mode, spatial_modes);
          },
          [&](const element::Hadamard& p) { check_mode(p.mode, spatial_modes); },
          [&](const element::PauliX& p) { check_mode(p.mode, spatial_modes); },
          [&](const element::PauliZ& p) { check_mode(p.mode, spatial_modes); },
      },
      e);
}

void validate(const Circuit& c) {
  if (c.spatial_modes < 2) {
    throw std::invalid_argument("circuit needs at least 2 spatial modes");
  }
  for (const auto& e : c.elements) validate(e, c.spatial_modes);
}

ModeUnitary element_unitary(const CircuitElement& e, int spatial_modes) {
  validate(e, spatial_modes);
  const int n = 2 * spatial_modes;
  Matrix u = Matrix::Identity(n, n);
  std::visit(
      Overloaded{
          [&](const element::Pdbs& p) {
            put_splitter(u, p.first, p.second, 0, p.t_h);
            put_splitter(u, p.first, p.second, 1, p.t_v);
          },
          [&](const element::Pbs& p) {
            put_splitter(u, p.first, p.second, 0, 1.0);
            put_splitter(u, p.first, p.second, 1, 0.0);
          },
          [&](const element::Swap& p) {
            for (int s = 0; s < 2; ++s) {
              const int a = 2 * p.first + s;
              const int b = 2 * p.second + s;
              u(a, a) = 0.0;
              u(b, b) = 0.0;
              u(a, b) = 1.0;
              u(b, a) = 1.0;
            }
          },
          [&](const element::Hwp& p) { put_jones(u, p.mode, hwp_jones(p.angle)); },
          [&](const element::Hadamard& p) {
            put_jones(u, p.mode, hwp_jones(std::numbers::pi / 8.0));
          },
          [&](const element::PauliX& p) {
            put_jones(u, p.mode, hwp_jones(std::numbers::pi / 4.0));
          },
          [&](const element::PauliZ& p) {
            Matrix2 z;
            z << 1.0, 0.0, 0.0, -1.0;
            put_jones(u, p.mode, z);
          },
          [&](const element::PhaseShifter& p) {
            const Complex ph = std::polar(1.0, p.phase);
            if (p.polarization != PolarizationSelect::V) u(2 * p.mode, 2 * p.mode) = ph;
            if (p.polarization != PolarizationSelect::H) {
              u(2 * p.mode + 1, 2 * p.mode + 1) = ph;
            }
          },
      },
      e);
  return ModeUnitary(spatial_modes, std::move(u));
}

ModeUnitary compose(const Circuit& c) {
  validate(c);
  Matrix u = Matrix::Identity(2 * c.spatial_modes, 2 * c.spatial_modes);
  for (const auto& e : c.elements) {
    u = element_unitary(e, c.spatial_modes).matrix() * u;
  }
  return ModeUnitary(c.spatial_modes, std::move(u));
}

JointState apply(const Matrix& u, const JointState& s) {
  if (u.rows() != s.dim() || u.cols() != s.dim()) {
    throw std::invalid_argument(
        "mode unitary dimension " + std::to_string(u.rows()) +
        " does not match state dimension " + std::to_string(s.dim()));
  }
  JointState out(s.spatial_modes());
  for (int b = 0; b < 4; ++b) out.block(b) = s.block(b).transformed(u);
  return out;
}

JointState apply(const ModeUnitary& u, const JointState& s) {
  return apply(u.matrix(), s);
}

}  // namespace bellforge
