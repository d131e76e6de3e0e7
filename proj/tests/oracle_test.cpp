// Copyright 2026 The entdetect Authors
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

#include <gtest/gtest.h>

#include <cmath>

#include "entdetect/oracle.hpp"
#include "test_util.hpp"

namespace entdetect {
namespace {

double numeric_score(const IcpsParams& p, const LevelSelection& sel) {
  return fef_witness(reduce_to_two_qubits(make_icps(p), sel).state).score;
}

TEST(IsNpt, Examples) {
  EXPECT_FALSE(is_npt(testing::maximally_mixed(3, 3)));
  DensityMatrix bell = pure_density(2, 2, testing::phi_plus());
  EXPECT_TRUE(is_npt(bell));
  EXPECT_NEAR(min_partial_transpose_eigenvalue(bell), -0.5, 1e-14);
  const double a = 1.0 / std::sqrt(3.0);
  EXPECT_FALSE(is_npt(make_icps({3, 3, a, 0.24})));
  EXPECT_TRUE(is_npt(make_icps({3, 3, a, 0.26})));
}

TEST(IsNpt, CutDoesNotMatter) {
  Rng rng(1);
  for (int rep = 0; rep < 200; ++rep) {
    DensityMatrix rho = testing::random_density(3, 3, rng, 1 + rep % 9);
    EXPECT_EQ(is_npt(rho, Subsystem::A), is_npt(rho, Subsystem::B));
    EXPECT_NEAR(min_partial_transpose_eigenvalue(rho, Subsystem::A),
                min_partial_transpose_eigenvalue(rho, Subsystem::B), 1e-12);
  }
}

TEST(IsNpt, CompactPureFormMatchesDenseSpectrum) {
  Rng rng(2);
  for (int rep = 0; rep < 200; ++rep) {
    NoisyPureState s = make_quasi_pure_noisy({3, 0.05 * (rep % 21), 0}, rng);
    EXPECT_NEAR(min_partial_transpose_eigenvalue(s), min_partial_transpose_eigenvalue(s.to_density()), 1e-12);
    EXPECT_EQ(is_npt(s), is_npt(s.to_density()));
  }
}

TEST(IcpsThresholds, IsotropicValue) {
  for (int d = 2; d <= 9; ++d) {
    IcpsThresholds t = icps_thresholds({d, d, 1.0 / std::sqrt(static_cast<double>(d)), 0.5});
    EXPECT_NEAR(t.v_a, 1.0 / (1.0 + d), 1e-15);
    EXPECT_NEAR(t.v_b, 1.0 / (1.0 + d), 1e-15);
  }
  EXPECT_NEAR(icps_thresholds({3, 3, 1.0 / std::sqrt(3.0), 0.5}).v_a, 0.25, 1e-15);
}

TEST(IcpsThresholds, ProductLimit) {
  EXPECT_NEAR(icps_thresholds({5, 3, 1e-12, 0.5}).v_b, 1.0, 1e-10);
  EXPECT_FALSE(icps_is_entangled({5, 3, 0.0, 1.0}));
}

TEST(IcpsThresholds, RegimeBValueAndSignChange) {
  IcpsParams p{4, 4, 0.3, 0.5};
  IcpsThresholds t = icps_thresholds(p);
  EXPECT_NEAR(t.v_b, 0.19603531137809846, 1e-15);
  EXPECT_DOUBLE_EQ(t.entanglement_threshold(), t.v_b);
  // Core-and-edge reduction changes sign at v_b.
  const LevelSelection edge{0, 3, 0, 3};
  p.v = t.v_b - 1e-4;
  EXPECT_LT(numeric_score(p, edge), 0.0);
  p.v = t.v_b + 1e-4;
  EXPECT_GT(numeric_score(p, edge), 0.0);
}

TEST(IcpsThresholds, MatchesPartialTransposeOnGrid) {
  for (int d = 2; d <= 5; ++d)
    for (int r = 2; r <= d; ++r)
      for (int i = 1; i <= 12; ++i)
        for (int j = 1; j <= 12; ++j) {
          IcpsParams p{d, r, (i - 0.5) / 12.0 / std::sqrt(r - 1.0), (j - 0.5) / 12.0};
          EXPECT_EQ(icps_is_entangled(p), is_npt(make_icps(p))) << d << " " << r << " " << p.alpha << " " << p.v;
        }
}

TEST(AnalyticFefScore, Examples) {
  for (int r = 3; r <= 7; ++r) {
    IcpsParams p{r, r, 1.0 / std::sqrt(static_cast<double>(r)), 1.0};
    EXPECT_NEAR(analytic_fef_score(p, ScenarioClass::BothInCore), 2.0, 1e-12);
  }
  IcpsParams q{5, 4, 0.45, 0.0};
  q.v = icps_thresholds(q).v_a;
  EXPECT_NEAR(analytic_fef_score(q, ScenarioClass::BothInCore), 0.0, 1e-12);

  IcpsParams x{5, 5, 0.35, 0.5};
  EXPECT_NEAR(analytic_fef_score(x, ScenarioClass::BothInCore), numeric_score(x, {0, 1, 0, 1}), 1e-10);
  EXPECT_NEAR(analytic_fef_score(x, ScenarioClass::CoreAndEdge), numeric_score(x, {0, 4, 0, 4}), 1e-10);

  EXPECT_THROW(analytic_fef_score(x, ScenarioClass::ViolatedCore), InvalidScenario);
  EXPECT_THROW(analytic_fef_score(x, ScenarioClass::ViolatedEdge), InvalidScenario);
  EXPECT_THROW(analytic_fef_score({3, 2, 0.5, 0.5}, ScenarioClass::BothInCore), InvalidScenario);
}

TEST(ClassifySelection, Examples) {
  EXPECT_EQ(classify_selection({0, 1, 0, 1}, 3), ScenarioClass::BothInCore);
  EXPECT_EQ(classify_selection({0, 2, 2, 0}, 3), ScenarioClass::CoreAndEdge);
  ScenarioClass c = classify_selection({0, 1, 0, 2}, 3);
  EXPECT_TRUE(c == ScenarioClass::ViolatedCore || c == ScenarioClass::ViolatedEdge);
  EXPECT_EQ(classify_selection({0, 1, 1, 0}, 3), ScenarioClass::BothInCore);
  EXPECT_EQ(classify_selection({0, 3, 0, 3}, 3), ScenarioClass::ViolatedCore);
}

TEST(ClassifySelection, DetectionFollowsScenario) {
  // Above both thresholds exactly the core and edge classes detect.
  for (int d = 3; d <= 5; ++d)
    for (int r = 3; r <= d; ++r) {
      IcpsParams p{d, r, 0.95 / std::sqrt(static_cast<double>(r)), 0.97};
      DensityMatrix rho = make_icps(p);
      for (const LevelSelection& sel : enumerate_selections(d, d)) {
        ScenarioClass c = classify_selection(sel, r);
        bool detectable = c == ScenarioClass::BothInCore || c == ScenarioClass::CoreAndEdge;
        EXPECT_EQ(witness_selection(rho, sel, LutTag::Identity).detected, detectable);
        if (detectable) {
          EXPECT_NEAR(witness_selection(rho, sel, LutTag::Identity).score, analytic_fef_score(p, c), 1e-10);
        }
      }
    }
}

TEST(BruteForce, Examples) {
  SelectionCensus c = brute_force_census(make_icps({3, 2, 1.0 / std::sqrt(2.0), 1.0}), LutStrategy::identity());
  EXPECT_EQ(c.total, 36u);
  EXPECT_EQ(c.detected, 4u);
  EXPECT_NEAR(c.fraction(), 1.0 / 9.0, 1e-15);
  EXPECT_EQ(c.rational(), analytic_sensitivity(3, 2).combined);
  for (const auto& s : c.detecting) {
    EXPECT_TRUE((s.a0 == 0 && s.a1 == 1) || (s.a0 == 1 && s.a1 == 0));
    EXPECT_TRUE((s.b0 == 0 && s.b1 == 1) || (s.b0 == 1 && s.b1 == 0));
  }

  for (auto s : {LutStrategy::identity(), LutStrategy::hadamard_b(), LutStrategy::hadamard_both()})
    EXPECT_EQ(brute_force_sensitivity(testing::maximally_mixed(4, 4), s), 0.0);

  SelectionCensus c4 = brute_force_census(make_icps({4, 4, 0.4, 1.0}), LutStrategy::identity());
  EXPECT_EQ(c4.detected, 24u);
  EXPECT_EQ(c4.total, 144u);
  EXPECT_EQ(c4.rational(), Rational(1, 6));
}

TEST(BruteForce, NoisyAndDenseAgree) {
  Rng rng(3);
  for (int rep = 0; rep < 10; ++rep) {
    NoisyPureState s = make_quasi_pure_noisy({3, 0.3 + 0.05 * rep, 0}, rng);
    for (auto lut : {LutStrategy::identity(), LutStrategy::hadamard_both()})
      EXPECT_EQ(brute_force_census(s, lut).detected, brute_force_census(s.to_density(), lut).detected);
  }
}

TEST(AnalyticSensitivity, Examples) {
  for (int d = 2; d <= 9; ++d) {
    EXPECT_EQ(analytic_sensitivity(d, d).combined, Rational(2, (d - 1) * d));
  }
  EXPECT_EQ(analytic_sensitivity(3, 2).combined, Rational(1, 9));
  EXPECT_EQ(analytic_sensitivity(5, 5).scenario_i, Rational(24, 400));
  EXPECT_NEAR(analytic_sensitivity(5, 5).scenario_i.value(), 0.06, 1e-15);
  EXPECT_THROW(analytic_sensitivity(3, 4), InvalidParams);
}

TEST(AnalyticSensitivity, RegimeCountsMatchEnumeration) {
  for (int d = 2; d <= 6; ++d)
    for (int r = 2; r <= d; ++r) {
      AnalyticSensitivity a = analytic_sensitivity(d, r);
      IcpsParams edge = edge_only_representative(d, r);
      ASSERT_EQ(icps_regime(edge), IcpsRegime::EdgeOnly);
      SelectionCensus ce = brute_force_census(make_icps_noisy(edge), LutStrategy::identity());
      EXPECT_EQ(ce.rational(), a.for_regime(IcpsRegime::EdgeOnly));
      if (r >= 3) {
        IcpsParams core = core_only_representative(d, r);
        ASSERT_EQ(icps_regime(core), IcpsRegime::CoreOnly);
        SelectionCensus cc = brute_force_census(make_icps_noisy(core), LutStrategy::identity());
        EXPECT_EQ(cc.rational(), a.scenario_i);
        for (const auto& s : cc.detecting) EXPECT_EQ(classify_selection(s, r), ScenarioClass::BothInCore);
      }
    }
}

TEST(EdgeCount, EnumerationGivesFourTimesRMinusOne) {
  for (int d = 2; d <= 6; ++d)
    for (int r = 2; r <= d; ++r) {
      EdgeCountReport rep = edge_count_report(d, r);
      EXPECT_TRUE(rep.matches_consistent());
      EXPECT_FALSE(rep.matches_printed());
      EXPECT_TRUE(rep.all_core_and_edge);
    }
}

}  // namespace
}  // namespace entdetect
