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
#include <bellforge/schmidt_kak.hpp>
#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"

namespace bellforge {
namespace {

using testing::Q;

TEST(ClosedForm, DesignPoint) {
  const ClosedForm cf = c4_closed_form({1.0, 1.0 / 3.0});
  EXPECT_NEAR(cf.p_suc, 1.0 / 9.0, 1e-15);
  ASSERT_TRUE(cf.fidelity);
  EXPECT_NEAR(*cf.fidelity, 1.0, 1e-15);
}

TEST(ClosedForm, RationalOracleDesignPoint) {
  EXPECT_EQ(testing::c4_p_exact(Q(1), Q(1, 3)), Q(1, 9));
  EXPECT_EQ(testing::c4_fidelity_sq_exact(Q(1), Q(1, 3)), Q(1));
  EXPECT_EQ(testing::c4_p_exact(Q(1), Q(1, 3), Q(1, 2), Q(2, 3)), Q(1, 27));
}

TEST(ClosedForm, DetectorsScaleProbabilityOnly) {
  const ClosedForm a = c4_closed_form({0.7, 0.2});
  const ClosedForm b = c4_closed_form({0.7, 0.2}, DetectorModel(0.5, 0.8));
  EXPECT_NEAR(b.p_suc, 0.4 * a.p_suc, 1e-15);
  EXPECT_NEAR(*a.fidelity, *b.fidelity, 1e-15);
}

TEST(ClosedForm, UndefinedFidelityWhenNothingSurvives) {
  const ClosedForm cf = c4_closed_form({0.0, 0.0});
  EXPECT_EQ(cf.p_suc, 0.0);
  EXPECT_FALSE(cf.fidelity);
}

TEST(PdbsParams, RangeChecked) {
  EXPECT_THROW((PdbsParams{1.1, 0.3}.validate()), std::invalid_argument);
  EXPECT_THROW((PdbsParams{0.5, -0.1}.validate()), std::invalid_argument);
  EXPECT_THROW(c4_converter({2.0, 0.5}), std::invalid_argument);
}

TEST(Converters, TableOneRows) {
  struct Row {
    Circuit c;
    Target t;
    double p;
  };
  const std::vector<Row> rows = {
      {c4_converter(), Target::C4, 1.0 / 9.0},
      {c4_converter({}, C4Layout::AttenuateLast), Target::C4, 1.0 / 9.0},
      {ghz_converter(), Target::GHZ4, 0.5},
      {bell_rewire_converter(BellRewire::Pairs13_24), Target::BellPairs_13_24, 1.0},
      {bell_rewire_converter(BellRewire::Pairs14_23), Target::BellPairs_14_23, 0.25}};
  for (const Row& r : rows) {
    const ConversionOutcome o = simulate(r.c, target_state(r.t));
    EXPECT_NEAR(o.p_suc, r.p, 1e-12) << target_name(r.t);
    ASSERT_TRUE(o.fidelity);
    EXPECT_NEAR(*o.fidelity, 1.0, 1e-12) << target_name(r.t);
  }
}

TEST(Converters, ChiFromCluster) {
  const Circuit c = chi_from_c4_converter();
  const ConversionOutcome o = simulate(
      c, load_four_qubit_state(2, target_state(Target::C4)), target_state(Target::Chi));
  EXPECT_NEAR(o.p_suc, 0.5, 1e-12);
  EXPECT_NEAR(*o.fidelity, 1.0, 1e-12);
  const ConversionOutcome bell = simulate(c, target_state(Target::Chi));
  EXPECT_LT(*bell.fidelity, 0.9);
}

TEST(Converters, NamedConvertersCoverNonzeroRows) {
  for (Target t : kAllTargets) {
    const auto nc = named_converter(t);
    EXPECT_EQ(nc.has_value(), table1_value(t) != Rational(0)) << target_name(t);
    if (!nc) continue;
    const ConversionOutcome o = simulate(nc->circuit, nc->initial, target_state(t));
    EXPECT_NEAR(o.p_suc, boost::rational_cast<double>(table1_value(t)), 1e-12);
  }
}

TEST(Sensitivity, MatchesRationalOracleOnCoarseGrid) {
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) {
      const Q h(i, 20), v(j, 20);
      const SensitivityPoint pt = sensitivity_point(
          {boost::rational_cast<double>(h), boost::rational_cast<double>(v)});
      const double p = boost::rational_cast<double>(testing::c4_p_exact(h, v));
      EXPECT_NEAR(pt.p_sim, p, 1e-12);
      EXPECT_NEAR(pt.p_closed, p, 1e-12);
      if (testing::c4_radicand(h, v) == Q(0)) {
        EXPECT_FALSE(pt.fidelity_sim);
        continue;
      }
      const double f = std::sqrt(
          boost::rational_cast<double>(testing::c4_fidelity_sq_exact(h, v)));
      ASSERT_TRUE(pt.fidelity_sim);
      EXPECT_NEAR(*pt.fidelity_sim, f, 1e-10);
    }
  }
}

TEST(Sensitivity, RobustToTenPercentMiscalibration) {
  for (double tv : {1.14 / 3.0, 0.86 / 3.0}) {
    const SensitivityPoint pt = sensitivity_point({0.86, tv});
    ASSERT_TRUE(pt.fidelity_sim);
    EXPECT_GE(*pt.fidelity_sim, 0.9);
  }
}

TEST(Sensitivity, GridShapeAndThreadIndependence) {
  const auto a = sensitivity_grid({0.0, 1.0}, {0.0, 1.0}, 0.1, {}, 1);
  const auto b = sensitivity_grid({0.0, 1.0}, {0.0, 1.0}, 0.1, {}, 4);
  ASSERT_EQ(a.size(), 121u);
  ASSERT_EQ(b.size(), a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].t_h, b[k].t_h);
    EXPECT_EQ(a[k].t_v, b[k].t_v);
    EXPECT_EQ(a[k].p_sim, b[k].p_sim);
  }
  EXPECT_DOUBLE_EQ(a.back().t_h, 1.0);
  EXPECT_THROW(sensitivity_grid({0.0, 1.0}, {0.0, 1.0}, 0.0), std::invalid_argument);
}

TEST(Composite, ExactTotals) {
  const std::vector<std::pair<Rational, int>> expected = {
      {Rational(3, 160), 2}, {Rational(1, 32), 2}, {Rational(1, 25), 1},
      {Rational(1, 16), 2}, {Rational(1, 4096), 6}};
  for (std::size_t k = 0; k < kCompositeSchemeNames.size(); ++k) {
    const CompositeScheme s = composite_scheme(kCompositeSchemeNames[k]);
    EXPECT_EQ(s.total_probability, expected[k].first) << s.name;
    EXPECT_EQ(s.total_ancillas, expected[k].second) << s.name;
    Rational prod(1);
    int anc = 0;
    for (const auto& st : s.stages) {
      prod *= st.probability;
      anc += st.ancillas;
    }
    EXPECT_EQ(prod, s.total_probability);
    EXPECT_EQ(anc, s.total_ancillas);
  }
  EXPECT_THROW(composite_scheme("nope"), std::invalid_argument);
}

TEST(Dicke, WavePlateAngles) {
  const double sp = std::sin(2.0 * dicke_hwp_theta_plus());
  const double sm = std::sin(2.0 * dicke_hwp_theta_minus());
  EXPECT_NEAR(sp * sp, (5.0 + std::sqrt(5.0)) / 10.0, 1e-14);
  EXPECT_NEAR(sm * sm, (5.0 - std::sqrt(5.0)) / 10.0, 1e-14);
  EXPECT_NEAR(sp * sp + sm * sm, 1.0, 1e-14);
}

TEST(TableOne, ReferenceValues) {
  EXPECT_EQ(table1_value(Target::C4), Rational(1, 9));
  EXPECT_EQ(table1_value(Target::GHZ4), Rational(1, 2));
  EXPECT_EQ(table1_value(Target::W4), Rational(0));
  EXPECT_EQ(table1_value(Target::D4_2), Rational(0));
  EXPECT_EQ(table1_value(Target::BellPairs_13_24), Rational(1));
  EXPECT_EQ(table1_value(Target::BellPairs_14_23), Rational(1, 4));
  EXPECT_EQ(table1_value(Target::Chi), Rational(0));
}

}  // namespace
}  // namespace bellforge
