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
#include <bellforge/postselect.hpp>
#include <bellforge/random.hpp>
#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"

namespace bellforge {
namespace {

TEST(Evaluate, IdentityReproducesBellPairs) {
  const ConversionOutcome o =
      evaluate(make_bell_pairs(2), initial_bell_pairs_state());
  EXPECT_NEAR(o.p_suc, 1.0, 1e-15);
  ASSERT_TRUE(o.fidelity);
  EXPECT_NEAR(*o.fidelity, 1.0, 1e-15);
}

TEST(Evaluate, SwapGivesRelabeledPairs) {
  Circuit c;
  c.add(element::Swap{0, 1});
  const ConversionOutcome o = simulate(c, target_state(Target::BellPairs_13_24));
  EXPECT_NEAR(o.p_suc, 1.0, 1e-15);
  EXPECT_NEAR(*o.fidelity, 1.0, 1e-15);
}

TEST(Evaluate, RoutingBothPhotonsAwayGivesEmptyFidelity) {
  Circuit c;
  c.spatial_modes = 4;
  c.add(element::Swap{0, 2}).add(element::Swap{1, 3});
  const ConversionOutcome o = simulate(c, target_state(Target::C4));
  EXPECT_EQ(o.p_suc, 0.0);
  EXPECT_FALSE(o.fidelity);
  EXPECT_FALSE(o.output);
}

TEST(Evaluate, NonUnitTargetThrows) {
  EXPECT_THROW(evaluate(make_bell_pairs(2), target_state(Target::C4) * 2.0),
               std::invalid_argument);
}

TEST(DetectorModel, RangeChecked) {
  EXPECT_THROW(DetectorModel(1.5, 1.0), std::invalid_argument);
  EXPECT_THROW(DetectorModel(0.5, -0.1), std::invalid_argument);
  EXPECT_NO_THROW(DetectorModel(0.0, 1.0));
}

TEST(Evaluate, EfficienciesScaleProbabilityOnly) {
  const Circuit c = ghz_converter();
  const ConversionOutcome a = simulate(c, target_state(Target::GHZ4));
  const ConversionOutcome b =
      simulate(c, target_state(Target::GHZ4), DetectorModel(0.8, 0.5));
  EXPECT_NEAR(b.p_suc, 0.4 * a.p_suc, 1e-15);
  EXPECT_EQ(*a.fidelity, *b.fidelity);
  EXPECT_DOUBLE_EQ(b.eta_product, 0.4);
}

// Oracle: the coincidence amplitudes agree with the photon-by-photon
// permanent expansion for Haar-random networks and random inputs.
TEST(Oracle, MatchesPermanentExpansion) {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const int l = 2 + trial % 3;
    const Matrix u = haar_unitary(2 * l, rng);
    const FourQubitState psi = random_four_qubit_state(rng);
    const FourQubitState t = random_four_qubit_state(rng);
    const ConversionOutcome o = evaluate(bellforge::apply(u, load_four_qubit_state(l, psi)), t);
    const testing::Outcome ref = testing::permanent_outcome(u, psi, t);
    EXPECT_NEAR(o.p_suc, ref.p, 1e-12);
    ASSERT_TRUE(o.fidelity);
    EXPECT_NEAR(*o.fidelity, ref.fidelity, 1e-10);
  }
}

// Property: the fidelity ignores detector efficiencies and target phase.
TEST(Properties, FidelityEtaAndPhaseInvariant) {
  Rng rng(8);
  std::uniform_real_distribution<double> uni(0.01, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix u = haar_unitary(4, rng);
    const FourQubitState t = random_four_qubit_state(rng);
    const JointState out = bellforge::apply(u, make_bell_pairs(2));
    const ConversionOutcome a = evaluate(out, t);
    const ConversionOutcome b = evaluate(out, t, DetectorModel(uni(rng), uni(rng)));
    const ConversionOutcome c = evaluate(out, t * std::polar(1.0, uni(rng) * 6.0));
    EXPECT_EQ(*a.fidelity, *b.fidelity);
    EXPECT_NEAR(*a.fidelity, *c.fidelity, 1e-14);
    EXPECT_GE(a.p_suc, 0.0);
    EXPECT_LE(a.p_suc, 1.0);
    EXPECT_NEAR(b.p_suc, a.p_suc * b.eta_product, 1e-15);
  }
}

}  // namespace
}  // namespace bellforge
