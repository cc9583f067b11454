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

#include <string>
#include <variant>
#include <vector>

#include "bellforge/states.hpp"
#include "bellforge/types.hpp"

namespace bellforge {

inline constexpr double kUnitarityTolerance = 1e-10;

/**
 * A (2L)x(2L) unitary acting on single-photon creation operators.
 *
 * Column m holds the image of input mode m: b^dag_m -> sum_j U(j, m) b^dag_j.
 * Rows and columns use the flat index 2*spatial + polarization.
 */
class ModeUnitary {
 public:
  /// Throws std::invalid_argument unless max|U^dag U - I| <= tolerance.
  ModeUnitary(int spatial_modes, Matrix matrix,
              double tolerance = kUnitarityTolerance);

  static ModeUnitary identity(int spatial_modes);

  int spatial_modes() const { return spatial_modes_; }
  int dim() const { return 2 * spatial_modes_; }
  const Matrix& matrix() const { return matrix_; }

  /// max_{ij} |(U^dag U - I)_{ij}|
  double unitarity_error() const;

  /// Operator product: (*this) applied after `first`.
  ModeUnitary then_after(const ModeUnitary& first) const;

 private:
  int spatial_modes_;
  Matrix matrix_;
};

double unitarity_error(const Matrix& m);

enum class PolarizationSelect { H, V, Both };

namespace element {

/// Polarization-dependent beam splitter. For each polarization s the input
/// on `first` maps to sqrt(t_s) on `first` and +sqrt(1-t_s) on `second`; the
/// input on `second` maps to -sqrt(1-t_s) on `first` and sqrt(t_s) on
/// `second`.
struct Pdbs {
  double t_h = 1.0;
  double t_v = 1.0;
  int first = 0;
  int second = 1;
};
/// PDBS(1, 0): H transmitted, V reflected.
struct Pbs {
  int first = 0;
  int second = 1;
};
/// Half-wave plate at angle theta: Jones [[cos 2t, sin 2t], [sin 2t, -cos 2t]].
struct Hwp {
  double angle = 0.0;
  int mode = 0;
};
struct Hadamard {
  int mode = 0;
};
struct PhaseShifter {
  double phase = 0.0;
  int mode = 0;
  PolarizationSelect polarization = PolarizationSelect::Both;
};
struct PauliX {
  int mode = 0;
};
struct PauliZ {
  int mode = 0;
};
struct Swap {
  int first = 0;
  int second = 1;
};

}  // namespace element

using CircuitElement =
    std::variant<element::Pdbs, element::Pbs, element::Hwp, element::Hadamard,
                 element::PhaseShifter, element::PauliX, element::PauliZ,
                 element::Swap>;

std::string element_kind(const CircuitElement& e);

/// Passive network; elements apply in list order (first element acts first).
struct Circuit {
  int spatial_modes = 2;
  std::vector<CircuitElement> elements;

  Circuit& add(CircuitElement e) {
    elements.push_back(std::move(e));
    return *this;
  }
};

/// Throws std::invalid_argument on out-of-range parameters or mode indices.
void validate(const CircuitElement& e, int spatial_modes);
void validate(const Circuit& c);

ModeUnitary element_unitary(const CircuitElement& e, int spatial_modes);

/// Product U_n ... U_2 U_1 for elements [e_1, ..., e_n].
ModeUnitary compose(const Circuit& c);

/// Maps every (s1, s4) block C -> U C U^T.
JointState apply(const ModeUnitary& u, const JointState& s);
JointState apply(const Matrix& u, const JointState& s);

}  // namespace bellforge
