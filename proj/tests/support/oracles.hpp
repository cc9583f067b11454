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

#include <bellforge/states.hpp>
#include <bellforge/types.hpp>
#include <boost/rational.hpp>
#include <cstdint>
#include <functional>
#include <vector>

namespace bellforge::testing {

/**
 * Coincidence amplitudes computed photon by photon: for the node-2/3 pair in
 * input modes (0,a), (1,b) the amplitude to find one photon in (0,x) and one
 * in (1,y) is the 2x2 permanent of U restricted to those rows and columns.
 * `psi` is the four-qubit input with qubits 2, 3 carried by the photons.
 */
FourQubitState permanent_amplitudes(const Matrix& u, const FourQubitState& psi);

/// p_suc and fidelity |<t|psi>| computed from permanent_amplitudes.
struct Outcome {
  double p = 0.0;
  double fidelity = 0.0;
};
Outcome permanent_outcome(const Matrix& u, const FourQubitState& psi,
                          const FourQubitState& target);

/// Closed forms of the cluster converter in exact rationals.
using Q = boost::rational<std::int64_t>;
Q c4_radicand(Q t_h, Q t_v);
Q c4_p_exact(Q t_h, Q t_v, Q eta = 1, Q eta_prime = 1);
/// F^2 as a rational (F itself is irrational in general).
Q c4_fidelity_sq_exact(Q t_h, Q t_v);

/// exp(A) by scaling and squaring of a long Taylor series.
Matrix expm_taylor(const Matrix& a);

/// Full 16x16 operator acting as `u` on qubits (qa, qb), via explicit basis
/// enumeration.
Eigen::Matrix<Complex, 16, 16> embed_two_qubit(const Matrix4& u, int qa, int qb);

/// Central finite difference of f along each coordinate.
Eigen::VectorXd finite_difference_gradient(
    const std::function<double(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& x, double h = 1e-6);

/// Brute-force |<a|b>| maximized over a global phase grid (sanity oracle for
/// phase-insensitive comparisons).
double phase_insensitive_distance(const FourQubitState& a, const FourQubitState& b);

}  // namespace bellforge::testing
