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


#include <bellforge/converters.hpp>
#include <bellforge/optimizer.hpp>
#include <bellforge/random.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>

#include "oracles.hpp"

namespace bellforge {
namespace {

double max_abs(const std::array<Complex, 16>& r) {
  double m = 0.0;
  for (const Complex& z : r) m = std::max(m, std::abs(z));
  return m;
}

TEST(Transfer, IdentityColumns) {
  const TransferCoefficients tc = extract_transfer(Matrix::Identity(4, 4));
  EXPECT_EQ(tc.beta[0][0], Complex(1.0));
  EXPECT_EQ(tc.gamma[0][1], Complex(1.0));
  EXPECT_EQ(tc.alpha[1][0], Complex(1.0));
  EXPECT_EQ(tc.eta[1][1], Complex(1.0));
  EXPECT_EQ(tc.beta[1][0], Complex(0.0));
}

TEST(Transfer, SwapExchangesModes) {
  Circuit c;
  c.add(element::Swap{0, 1});
  const TransferCoefficients tc = extract_transfer(compose(c));
  EXPECT_EQ(tc.alpha[0][0], Complex(1.0));
  EXPECT_EQ(tc.eta[0][1], Complex(1.0));
  EXPECT_EQ(tc.beta[1][0], Complex(1.0));
  EXPECT_EQ(tc.gamma[1][1], Complex(1.0));
}

TEST(Transfer, RandomColumnsUnitNorm) {
  Rng rng(1);
  const TransferCoefficients tc = extract_transfer(haar_unitary(6, rng));
  for (const auto* col : {&tc.beta, &tc.gamma, &tc.alpha, &tc.eta}) {
    double s = 0.0;
    for (const auto& e : *col) s += std::norm(e[0]) + std::norm(e[1]);
    EXPECT_NEAR(s, 1.0, 1e-10);
  }
}

TEST(Transfer, TooSmallThrows) {
  EXPECT_THROW(extract_transfer(Matrix::Identity(2, 2)), std::invalid_argument);
}

TEST(Residuals, IdentityOnBellPairsVanishes) {
  const auto r = constraint_residuals(
      extract_transfer(Matrix::Identity(4, 4)), initial_bell_pairs_state(), 1.0);
  EXPECT_LE(max_abs(r), 1e-15);
}

TEST(Residuals, IdentityAgainstGhzIsNonzero) {
  const auto r = constraint_residuals(
      extract_transfer(Matrix::Identity(4, 4)), target_state(Target::GHZ4), 0.5);
  EXPECT_GT(max_abs(r), 0.1);
}

TEST(Residuals, ClusterConverterAtOneNinth) {
  const auto r = constraint_residuals(extract_transfer(compose(c4_converter())),
                                      target_state(Target::C4), 1.0 / 9.0);
  EXPECT_LE(max_abs(r), 1e-9);
}

TEST(Residuals, GlobalPhaseOfTargetIgnored) {
  const auto r = constraint_residuals(extract_transfer(compose(ghz_converter())),
                                      target_state(Target::GHZ4) * Complex(0.0, 1.0),
                                      0.5);
  EXPECT_LE(max_abs(r), 1e-12);
}

// Property: residuals vanish iff the simulator reports (p, 1).
TEST(Residuals, EquivalenceWithSimulatorOnRandomUnitaries) {
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix u = haar_unitary(4 + 2 * (trial % 2), rng);
    for (Target t : kAllTargets) {
      const ConversionOutcome o =
          evaluate(bellforge::apply(u, make_bell_pairs(static_cast<int>(u.rows()) / 2)),
                   target_state(t));
      const bool vanish =
          max_abs(constraint_residuals(extract_transfer(u), target_state(t),
                                       o.p_suc)) <= 1e-8;
      const bool exact = o.fidelity && *o.fidelity >= 1.0 - 1e-8;
      EXPECT_EQ(vanish, exact);
    }
  }
}

TEST(Objective, IdentityOnRelabeledInputIsOne) {
  EXPECT_NEAR(objective(ModeUnitary::identity(2), make_bell_pairs(2),
                        initial_bell_pairs_state(), 5.0),
              1.0, 1e-15);
}

TEST(Objective, ClusterConverterIsOneNinth) {
  EXPECT_NEAR(objective(compose(c4_converter()), make_bell_pairs(4),
                        target_state(Target::C4), 100.0),
              1.0 / 9.0, 1e-12);
}

TEST(Objective, PenaltySaturatesWhenNoAmplitude) {
  Circuit c;
  c.spatial_modes = 4;
  c.add(element::Swap{0, 2}).add(element::Swap{1, 3});
  EXPECT_EQ(objective(compose(c), make_bell_pairs(4), target_state(Target::C4), 3.0),
            -3.0);
}

TEST(Generator, ProducesUnitaryMatchingExponential) {
  Rng rng(3);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  Eigen::VectorXd x(36);
  for (int k = 0; k < 36; ++k) x(k) = uni(rng);
  const Matrix u = unitary_from_generator(x, 6);
  EXPECT_LE(unitarity_error(u), 1e-12);
  // Rebuild the anti-Hermitian generator independently.
  Matrix a = Matrix::Zero(6, 6);
  int k = 0;
  for (int j = 0; j < 6; ++j) a(j, j) = Complex(0.0, x(k++));
  for (int j = 0; j < 6; ++j) {
    for (int l = j + 1; l < 6; ++l) {
      a(j, l) = Complex(x(k), x(k + 1));
      a(l, j) = -std::conj(a(j, l));
      k += 2;
    }
  }
  EXPECT_LT((u - testing::expm_taylor(a)).norm(), 1e-11);
}

TEST(Merit, AnalyticGradientMatchesFiniteDifferences) {
  Rng rng(10);
  std::uniform_real_distribution<double> uni(-3.0, 3.0);
  for (int l : {2, 3}) {
    for (double mu : {0.5, 1.0, 40.0}) {
      PenaltyMerit m(make_bell_pairs(l), target_state(Target::C4), mu);
      Eigen::VectorXd x(m.num_params());
      for (int k = 0; k < x.size(); ++k) x(k) = uni(rng);
      Eigen::VectorXd g;
      m.value(x, &g);
      const Eigen::VectorXd fd = testing::finite_difference_gradient(
          [&](const Eigen::VectorXd& y) { return m.value(y, nullptr); }, x);
      EXPECT_LT((g - fd).lpNorm<Eigen::Infinity>(), 1e-6 * std::max(1.0, mu));
    }
  }
}

TEST(Merit, EqualsPenalizedProbability) {
  Rng rng(4);
  const Matrix u = haar_unitary(4, rng);
  const FourQubitState t = target_state(Target::GHZ4);
  PenaltyMerit m(make_bell_pairs(2), t, 7.0);
  PenaltyMerit::Stats st;
  const double f = m.value_u(u, nullptr, &st);
  const ConversionOutcome o = evaluate(bellforge::apply(u, make_bell_pairs(2)), t);
  const double f2 = *o.fidelity * *o.fidelity;
  EXPECT_NEAR(st.p, o.p_suc, 1e-14);
  EXPECT_NEAR(f, o.p_suc - 7.0 * o.p_suc * (1.0 - f2), 1e-13);
}

TEST(Config, Validation) {
  OptimizerConfig c;
  EXPECT_NO_THROW(c.validate());
  c.restarts = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.epsilon = 1.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.penalty_schedule = {};
  EXPECT_THROW(c.validate(), std::invalid_argument);
  EXPECT_THROW(geometric_schedule(1.0, 1.0, 10.0), std::invalid_argument);
  const auto s = geometric_schedule(1.0, 10.0, 1e3);
  ASSERT_EQ(s.size(), 4u);
  EXPECT_DOUBLE_EQ(s.back(), 1e3);
}

TEST(Optimize, MismatchedModeCountThrows) {
  OptimizerConfig c;
  c.spatial_modes = 3;
  EXPECT_THROW(optimize_success(make_bell_pairs(2), target_state(Target::GHZ4), c),
               std::invalid_argument);
}

OptimizerConfig small_config(int restarts, std::uint64_t seed) {
  OptimizerConfig c;
  c.restarts = restarts;
  c.seed = seed;
  c.record_trace = true;
  return c;
}

TEST(Optimize, FindsGhzAndRelabelings) {
  const std::vector<std::pair<Target, double>> cases = {
      {Target::GHZ4, 0.5}, {Target::BellPairs_13_24, 1.0},
      {Target::BellPairs_14_23, 0.25}};
  for (const auto& [t, p] : cases) {
    const OptimizationResult r =
        optimize_success(make_bell_pairs(2), target_state(t), small_config(16, 1));
    EXPECT_TRUE(r.converged) << target_name(t);
    EXPECT_NEAR(r.best_p, p, 1e-3) << target_name(t);
    EXPECT_GE(r.fidelity, 1.0 - 1e-6);
    const ConversionOutcome o = evaluate(bellforge::apply(r.best_unitary, make_bell_pairs(2)),
                                         target_state(t));
    EXPECT_NEAR(o.p_suc, r.best_p, 1e-8);
  }
}

TEST(Optimize, ZeroTargetsDoNotConvergeAtTwoModes) {
  for (Target t : {Target::W4, Target::Chi}) {
    const OptimizationResult r =
        optimize_success(make_bell_pairs(2), target_state(t), small_config(8, 3));
    EXPECT_FALSE(r.converged) << target_name(t);
    EXPECT_EQ(r.best_p, 0.0);
    EXPECT_LT(r.fidelity, 1.0 - 1e-6);
  }
}

TEST(Optimize, ClusterInputReachesChi) {
  const OptimizationResult r =
      optimize_success(load_four_qubit_state(2, target_state(Target::C4)),
                       target_state(Target::Chi), small_config(16, 11));
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.best_p, 0.5, 1e-3);
}

TEST(Optimize, SeededDeterminismAcrossThreadCounts) {
  OptimizerConfig a = small_config(6, 42);
  a.threads = 1;
  OptimizerConfig b = a;
  b.threads = 3;
  const FourQubitState t = target_state(Target::GHZ4);
  const OptimizationResult ra = optimize_success(make_bell_pairs(2), t, a);
  const OptimizationResult rb = optimize_success(make_bell_pairs(2), t, b);
  ASSERT_EQ(ra.history.size(), rb.history.size());
  for (std::size_t i = 0; i < ra.history.size(); ++i) {
    EXPECT_EQ(ra.history[i].p, rb.history[i].p);
    EXPECT_EQ(ra.history[i].fidelity, rb.history[i].fidelity);
    EXPECT_EQ(ra.history[i].trace.size(), rb.history[i].trace.size());
  }
  EXPECT_EQ(ra.best_p, rb.best_p);
}

TEST(Optimize, IncumbentMonotoneWithinEachStage) {
  const OptimizationResult r = optimize_success(
      make_bell_pairs(2), target_state(Target::C4), small_config(4, 7));
  for (const auto& rec : r.history) {
    for (std::size_t i = 1; i < rec.trace.size(); ++i) {
      if (rec.trace[i].stage != rec.trace[i - 1].stage) continue;
      EXPECT_GE(rec.trace[i].merit, rec.trace[i - 1].merit);
    }
  }
}

TEST(Optimize, ThreadCapFromEnvironment) {
  ::setenv("BELLFORGE_THREADS", "2", 1);
  EXPECT_EQ(resolve_thread_count(8), 2);
  EXPECT_EQ(resolve_thread_count(1), 1);
  ::unsetenv("BELLFORGE_THREADS");
  EXPECT_EQ(resolve_thread_count(5), 5);
}

// Property: the optimizer at least matches every hand-built converter on the
// same number of modes.
TEST(Optimize, DominatesHandBuiltConverters) {
  for (Target t : kAllTargets) {
    const auto nc = named_converter(t);
    if (!nc || nc->circuit.spatial_modes != 2) continue;
    const ConversionOutcome o = simulate(nc->circuit, nc->initial, target_state(t));
    OptimizerConfig c = small_config(16, 5);
    c.spatial_modes = nc->circuit.spatial_modes;
    const OptimizationResult r = optimize_success(nc->initial, target_state(t), c);
    EXPECT_GE(r.best_p, o.p_suc - 1e-6) << target_name(t);
  }
}

}  // namespace
}  // namespace bellforge
