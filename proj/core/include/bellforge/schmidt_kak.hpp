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
#include <utility>

#include "bellforge/states.hpp"
#include "bellforge/types.hpp"

namespace bellforge {

inline constexpr double kDefaultRankTolerance = 1e-8;

/**
 * Schmidt decomposition across A = (qubit 1, qubit 4) | B = (qubit 2,
 * qubit 3):  psi = sum_k coefficients[k] * basis_a.col(k) (x) basis_b.col(k).
 *
 * basis_a is indexed by 2*s1 + s4, basis_b by 2*s2 + s3. The largest-modulus
 * entry of each basis_a column is real and positive.
 */
struct SchmidtData {
  std::array<double, 4> coefficients{};
  int rank = 0;
  Matrix4 basis_a = Matrix4::Identity();
  Matrix4 basis_b = Matrix4::Identity();
};

/// Throws std::invalid_argument if psi is not unit norm (to 1e-9).
SchmidtData schmidt_14_23(
    const FourQubitState& psi, double tol = kDefaultRankTolerance);

/// True iff the (1,4)|(2,3) Schmidt rank is four and every coefficient is
/// 1/2 to within `tol`; exactly the states reachable from two Bell pairs by
/// a two-qubit unitary on nodes 2 and 3.
bool theorem1_convertible(
    const FourQubitState& psi, double tol = kDefaultRankTolerance);

/// Two-qubit Kronecker product; `a` acts on the more significant qubit.
Matrix4 kron(const Matrix2& a, const Matrix2& b);

/// exp[i (t1 X(x)X + t2 Y(x)Y + t3 Z(x)Z)]
Matrix4 interaction_unitary(double t1, double t2, double t3);

/**
 * U = global_phase * (post_a (x) post_b) * exp[i(t1 XX + t2 YY + t3 ZZ)]
 *     * (pre_a (x) pre_b),
 * with the angles in the Weyl chamber pi/4 >= t1 >= t2 >= |t3|.
 */
struct KakFactors {
  Complex global_phase{1.0, 0.0};
  Matrix2 post_a = Matrix2::Identity();
  Matrix2 post_b = Matrix2::Identity();
  Matrix2 pre_a = Matrix2::Identity();
  Matrix2 pre_b = Matrix2::Identity();
  std::array<double, 3> angles{};

  Matrix4 interaction() const;
  Matrix4 reconstruct() const;
};

/// Magic-basis KAK decomposition. Throws std::invalid_argument for
/// non-unitary input.
KakFactors kak_decompose(const Matrix4& u);

/// Splits an exact Kronecker product into (a, b) with a, b unitary.
std::pair<Matrix2, Matrix2> kron_factor(const Matrix4& m);

/// Applies a two-qubit gate to qubits (qa, qb) of a four-qubit state; qubits
/// are numbered 0..3 for nodes 1..4 and qa is the gate's leading qubit.
FourQubitState apply_two_qubit(
    const Matrix4& u, const FourQubitState& psi, int qa, int qb);
FourQubitState apply_one_qubit(
    const Matrix2& u, const FourQubitState& psi, int q);

/**
 * Builds V' on qubits (2, 3) such that V' |Phi+>_{1,2}|Phi+>_{3,4} equals
 * `target` up to global phase. The B-side Schmidt basis, the KAK factors of
 * the A-side Schmidt basis, and the transpose identity for |Phi+> assemble
 *   V' = Vb (pre_a^T (x) pre_b^T) R (post_a^T (x) post_b^T) * phase.
 *
 * Throws NotConvertible naming the first offending Schmidt coefficient.
 */
Matrix4 build_converter(
    const FourQubitState& target, double tol = kDefaultRankTolerance);

/// V' (on qubits 2,3) applied to |Phi+>_{1,2}|Phi+>_{3,4}.
FourQubitState apply_to_bell_pairs(const Matrix4& v23);

}  // namespace bellforge
