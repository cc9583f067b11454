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
#include <cstdint>
#include <vector>

#include "bellforge/optics.hpp"
#include "bellforge/postselect.hpp"
#include "bellforge/states.hpp"

namespace bellforge {

/**
 * Columns of a mode unitary for the four input modes carrying the node-2 and
 * node-3 photons: beta from (0,H), gamma from (0,V), alpha from (1,H), eta
 * from (1,V). Entry j holds the (H, V) amplitudes on output spatial mode j.
 */
struct TransferCoefficients {
  using Column = std::vector<std::array<Complex, 2>>;
  Column beta, gamma, alpha, eta;

  int spatial_modes() const { return static_cast<int>(beta.size()); }
  /// Column for input spatial mode `input` (0 or 1) and polarization bit.
  const Column& column(int input, int pol) const;
};

/// Throws std::invalid_argument if the matrix is smaller than 4x4 or not
/// square of even size.
TransferCoefficients extract_transfer(const Matrix& u);
TransferCoefficients extract_transfer(const ModeUnitary& u);

/**
 * Residual of the coincidence equations for input |a b>_{2,3} and detected
 * polarizations (x, y), stored at index 8a + 4b + 2x + y:
 *   r = c_{0x} d_{1y} + c_{1y} d_{0x} - 2 sqrt(p) e^{i phi} t[a x y b],
 * where c, d are the transfer columns of the two input photons. The phase
 * phi is that of <t|bilinear>, so the residual ignores the target's global
 * phase. All residuals vanish iff the circuit yields (p, F = 1) on the Bell
 * pairs.
 */
std::array<Complex, 16> constraint_residuals(
    const TransferCoefficients& tc, const FourQubitState& t, double p);

/// p_suc - penalty * (1 - F)^2, or -penalty when no amplitude survives.
double objective(
    const ModeUnitary& u, const JointState& initial, const FourQubitState& t,
    double penalty);

/// start, start*ratio, ... up to and including stop (within rounding).
std::vector<double> geometric_schedule(double start, double ratio, double stop);

struct OptimizerConfig {
  int spatial_modes = 2;
  int restarts = 64;
  double epsilon = 1e-6;
  std::vector<double> penalty_schedule = geometric_schedule(1.0, 1.5, 1e6);
  int max_iterations = 1000;
  std::uint64_t seed = 0;
  double tolerance = 1e-12;
  /// Success probabilities at or below this count as a collapse to zero.
  double zero_threshold = 1e-3;
  /// Worker threads; 0 picks hardware concurrency. BELLFORGE_THREADS caps
  /// either choice.
  int threads = 0;
  bool record_trace = false;

  double fidelity_floor() const { return 1.0 - epsilon; }
  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

struct TracePoint {
  int stage = 0;
  int iteration = 0;
  double merit = 0.0;
  double p = 0.0;
  double fidelity = 0.0;
};

struct RestartRecord {
  int index = 0;
  std::uint64_t seed = 0;
  double p = 0.0;
  double fidelity = 0.0;
  bool feasible = false;
  int stages = 0;
  int iterations = 0;
  /// Merit at the largest penalty weight of the schedule.
  double final_merit = 0.0;
  std::vector<TracePoint> trace;
};

/**
 * When some restart meets the fidelity floor, best_p is the largest p among
 * those restarts and best_unitary reproduces it. Otherwise converged is
 * false, best_p is 0 (no conversion at the floor), and best_unitary is the
 * highest-fidelity restart with its raw probability in best_effort_p.
 */
struct OptimizationResult {
  double best_p = 0.0;
  ModeUnitary best_unitary = ModeUnitary::identity(2);
  double fidelity = 0.0;
  double best_effort_p = 0.0;
  bool converged = false;
  int restarts_used = 0;
  int best_restart = -1;
  std::vector<RestartRecord> history;
};

/**
 * Smooth penalty merit used by the ascent:
 *   f(U) = |A|^2 - mu |A - <t|A> t|^2 = (1 - mu) p + mu |<t|A>|^2
 * with A the coincidence amplitudes of U applied to `initial`, and
 * U = exp(X(x)) for an anti-Hermitian X built from n^2 reals.
 */
class PenaltyMerit {
 public:
  PenaltyMerit(const JointState& initial, const FourQubitState& t, double mu);

  struct Stats {
    double p = 0.0;
    double overlap_sq = 0.0;
  };

  int dim() const { return n_; }
  int num_params() const { return n_ * n_; }
  void set_mu(double mu) { mu_ = mu; }
  double mu() const { return mu_; }

  /// Value at x, with the gradient written to `grad` when non-null.
  double value(const Eigen::VectorXd& x, Eigen::VectorXd* grad,
               Stats* stats = nullptr) const;
  /// Value and gradient with respect to U directly (df = Re <G, dU>).
  double value_u(const Matrix& u, Matrix* grad_u, Stats* stats = nullptr) const;

 private:
  int n_;
  std::vector<Matrix> blocks_;
  FourQubitState t_;
  double mu_;
};

/// exp(X(x)) for the generator parameterization of PenaltyMerit.
Matrix unitary_from_generator(const Eigen::VectorXd& x, int n);

/// Multi-start penalty ascent. Throws std::invalid_argument on an invalid
/// config or a mismatch between the config and the initial state.
OptimizationResult optimize_success(
    const JointState& initial, const FourQubitState& t,
    const OptimizerConfig& cfg);

/// Thread count after applying the BELLFORGE_THREADS cap.
int resolve_thread_count(int requested);

}  // namespace bellforge
