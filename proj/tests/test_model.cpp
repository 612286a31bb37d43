#include <gtest/gtest.h>

#include <set>

#include "multiband/model.hpp"
#include "support.hpp"

using namespace multiband;
using namespace multiband::testing;

TEST(Profile, ThreeBandsTopHeavy) {
  const Profile p = compute_profile(BandBounds{{0, 0, 0}, {3, 2, 1}}, 0, 3);
  EXPECT_EQ(p.p, 0);
  EXPECT_EQ(p.theta, (std::vector<int>{0, 2, 1}));
}

TEST(Profile, SingleBandBudget) {
  const Profile p = compute_profile(BandBounds{{0, 0}, {4, 2}}, 0, 4);
  EXPECT_EQ(p.p, 0);
  EXPECT_EQ(p.theta, (std::vector<int>{2, 2}));
}

TEST(Profile, NegativeBand) {
  const Profile p = compute_profile(BandBounds{{1, 0, 0}, {1, 2, 1}}, -1, 2);
  EXPECT_EQ(p.p, 0);
  EXPECT_EQ(p.theta, (std::vector<int>{1, 0, 1}));
  EXPECT_EQ(p.theta_at(-1), 1);
}

TEST(Profile, DegenerateNegativeSideGivesNegativeP) {
  // l = 0 below zero, u = 0 above: the minimum is already reached at K-.
  const Profile p = compute_profile(BandBounds{{0, 0, 0}, {2, 3, 0}}, -1, 3);
  EXPECT_EQ(p.p, -1);
  EXPECT_EQ(p.theta, (std::vector<int>{0, 3, 0}));
}

TEST(Profile, RejectsBadBounds) {
  EXPECT_THROW(compute_profile(BandBounds{{2, 2}, {3, 2}}, 0, 3), InvalidInstance);  // sum l > n
  EXPECT_THROW(compute_profile(BandBounds{{0, 3}, {3, 2}}, 0, 3), InvalidInstance);  // l > u
}

TEST(Profile, RandomSchemesSumToNWithinBounds) {
  Rng rng(101);
  for (int it = 0; it < 1000; ++it) {
    const int n = uniform_int(rng, 1, 12);
    const std::size_t bands = static_cast<std::size_t>(uniform_int(rng, 1, 5));
    const int k_minus = -uniform_int(rng, 0, static_cast<int>(bands) - 1);
    const BandBounds b = random_bounds(rng, n, bands, static_cast<std::size_t>(-k_minus));
    const Profile p = compute_profile(b, k_minus, n);
    int sum = 0;
    for (std::size_t o = 0; o < bands; ++o) {
      sum += p.theta[o];
      ASSERT_GE(p.theta[o], b.lower[o]);
      ASSERT_LE(p.theta[o], b.upper[o]);
      const int k = static_cast<int>(o) + k_minus;
      if (k < p.p) ASSERT_EQ(p.theta[o], b.lower[o]);
      if (k > p.p) ASSERT_EQ(p.theta[o], b.upper[o]);
    }
    ASSERT_EQ(sum, n);
  }
}

TEST(Instance, FixtureIsValid) {
  EXPECT_TRUE(validate_instance(fixture_problem(), fixture_scheme()).empty());
}

TEST(Instance, NamesTheNominalBandRule) {
  BandScheme s = fixture_scheme();
  s.shared_bounds().upper[0] = 2;
  const auto issues = validate_instance(fixture_problem(), s);
  ASSERT_FALSE(issues.empty());
  EXPECT_NE(issues.front().find("u_0"), std::string::npos);
}

TEST(Instance, RejectsNonMonotoneThresholds) {
  BandScheme s = fixture_scheme();
  s.set_thresholds(0, 1, std::vector<double>{0, 5, 5});
  EXPECT_FALSE(validate_instance(fixture_problem(), s).empty());
  s.set_thresholds(0, 1, std::vector<double>{1, 2, 5});  // d^0 != 0
  EXPECT_FALSE(validate_instance(fixture_problem(), s).empty());
  EXPECT_THROW(require_valid(fixture_problem(), s), InvalidInstance);
}

TEST(Instance, RejectsTooManyLowerBounds) {
  BandScheme s(0, 2, BandBounds{{0, 2, 2}, {3, 2, 2}});
  s.set_thresholds(0, 0, std::vector<double>{0, 4, 6});
  EXPECT_FALSE(validate_instance(fixture_problem(), s).empty());
}

TEST(Instance, CertainCoefficientsLeaveTheBandCount) {
  BandScheme s(0, 1, BandBounds{{0, 1}, {3, 1}});
  s.set_thresholds(0, 2, std::vector<double>{0, 3});
  const RowUncertainty ru = row_uncertainty(fixture_problem(), s, 0);
  EXPECT_EQ(ru.columns, (std::vector<std::size_t>{2}));
  EXPECT_EQ(ru.profile.theta, (std::vector<int>{0, 1}));
}

TEST(Scenario, ZeroScenarioFeasibleWithoutLowerBounds) {
  const auto prob = fixture_problem();
  const auto check = validate_scenario(prob, fixture_scheme(), zero_scenario(prob));
  ASSERT_TRUE(check.feasible());
  EXPECT_EQ(check.partition[0].bands[0], (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Scenario, FixturePartition) {
  const auto check = validate_scenario(fixture_problem(), fixture_scheme(), Scenario{{{6, 2, 1}}});
  ASSERT_TRUE(check.feasible());
  const auto& bands = check.partition[0].bands;
  EXPECT_TRUE(bands[0].empty());
  EXPECT_EQ(bands[1], (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(bands[2], (std::vector<std::size_t>{0}));
}

TEST(Scenario, ReportsBandCountViolation) {
  const auto check = validate_scenario(fixture_problem(), fixture_scheme(), Scenario{{{6, 5, 1}}});
  ASSERT_FALSE(check.feasible());
  EXPECT_EQ(check.violation->property, 2);
  EXPECT_EQ(check.violation->band, 2);
  EXPECT_EQ(check.violation->row, 0U);
}

TEST(Scenario, ReportsRangeViolation) {
  const auto check = validate_scenario(fixture_problem(), fixture_scheme(), Scenario{{{7, 0, 0}}});
  ASSERT_FALSE(check.feasible());
  EXPECT_EQ(check.violation->property, 1);
  EXPECT_EQ(check.violation->column, 0U);
}

TEST(Scenario, SingletonNegativeBand) {
  // K- = -1 holds only the value d^{-1}; (d^{-1}, 0] is band 0.
  const auto prob = make_problem({1, 1}, {{1, 1}}, {5});
  BandScheme s(-1, 1, BandBounds{{1, 0, 0}, {1, 2, 1}});
  s.set_thresholds(0, 0, std::vector<double>{-2, 0, 3});
  s.set_thresholds(0, 1, std::vector<double>{-1, 0, 4});
  EXPECT_TRUE(validate_scenario(prob, s, Scenario{{{-2, 4}}}).feasible());
  const auto missing = validate_scenario(prob, s, Scenario{{{-1.5, 4}}});
  ASSERT_FALSE(missing.feasible());
  EXPECT_EQ(missing.violation->property, 3);
  EXPECT_EQ(missing.violation->band, -1);
}

TEST(Scenario, DimensionMismatchThrows) {
  EXPECT_THROW(validate_scenario(fixture_problem(), fixture_scheme(), Scenario{{{1, 2}}}),
               std::invalid_argument);
  EXPECT_THROW(dominates(Scenario{{{1, 2}}}, Scenario{{{1}}}), std::invalid_argument);
}

TEST(Scenario, Dominance) {
  const Scenario s{{{6, 2, 1}}};
  EXPECT_TRUE(dominates(s, s));
  EXPECT_FALSE(dominates(Scenario{{{6, 1.5, 1}}}, s));
  EXPECT_TRUE(dominates(s, Scenario{{{6, 1.5, 1}}}));
}

TEST(Canonicalize, FixedPoint) {
  const Scenario s{{{6, 2, 1}}};
  EXPECT_EQ(canonicalize_scenario(fixture_problem(), fixture_scheme(), s).dev, s.dev);
}

TEST(Canonicalize, RepairsAllInBandOne) {
  const Scenario s{{{3.5, 2, 1}}};
  const auto prob = fixture_problem();
  const auto scheme = fixture_scheme();
  const Scenario c = canonicalize_scenario(prob, scheme, s);
  // Lowest over-full band is 1, smallest column moves to band 2.
  EXPECT_EQ(c.dev[0], (std::vector<double>{6, 2, 1}));
  EXPECT_TRUE(dominates(c, s));
  const auto check = validate_scenario(prob, scheme, c);
  ASSERT_TRUE(check.feasible());
  EXPECT_EQ(check.partition[0].bands[1].size(), 2U);
  EXPECT_EQ(check.partition[0].bands[2].size(), 1U);
}

TEST(Canonicalize, ZeroScenarioLiftsToEndpoints) {
  const auto prob = fixture_problem();
  const Scenario c = canonicalize_scenario(prob, fixture_scheme(), zero_scenario(prob));
  EXPECT_EQ(c.dev[0], (std::vector<double>{6, 2, 1}));
}

TEST(Canonicalize, RejectsInfeasibleInput) {
  EXPECT_THROW(canonicalize_scenario(fixture_problem(), fixture_scheme(), Scenario{{{6, 5, 1}}}),
               std::invalid_argument);
  EXPECT_THROW(canonicalize_scenario(fixture_problem(), fixture_scheme(), Scenario{{{7, 0, 0}}}),
               std::invalid_argument);
}

TEST(Canonicalize, RandomScenariosProperties) {
  Rng rng(202);
  for (int it = 0; it < 300; ++it) {
    const RowCase rc = random_row_case(rng);
    const Scenario s{{random_interior_row(rng, rc.prob, rc.scheme, 0)}};
    ASSERT_TRUE(validate_scenario(rc.prob, rc.scheme, s).feasible());
    const Scenario c = canonicalize_scenario(rc.prob, rc.scheme, s);
    ASSERT_TRUE(dominates(c, s));
    const auto check = validate_scenario(rc.prob, rc.scheme, c);
    ASSERT_TRUE(check.feasible()) << check.violation->message;
    const RowUncertainty ru = row_uncertainty(rc.prob, rc.scheme, 0);
    double dev_s = 0.0;
    double dev_c = 0.0;
    for (std::size_t j = 0; j < rc.x.size(); ++j) {
      dev_s += s.dev[0][j] * rc.x[j];
      dev_c += c.dev[0][j] * rc.x[j];
    }
    ASSERT_GE(dev_c, dev_s - 1e-9);
    for (std::size_t o = 0; o < ru.num_bands(); ++o) {
      ASSERT_EQ(check.partition[0].bands[o].size(), static_cast<std::size_t>(ru.profile.theta[o]));
      for (std::size_t j : check.partition[0].bands[o]) {
        ASSERT_EQ(c.dev[0][j], rc.scheme.threshold(0, j, rc.scheme.band(o)));
      }
    }
  }
}

TEST(Scenario, PartitionCoversColumnsOnce) {
  Rng rng(303);
  for (int it = 0; it < 300; ++it) {
    const RowCase rc = random_row_case(rng);
    const Scenario s{{random_interior_row(rng, rc.prob, rc.scheme, 0)}};
    const auto check = validate_scenario(rc.prob, rc.scheme, s);
    ASSERT_TRUE(check.feasible());
    std::multiset<std::size_t> seen;
    for (const auto& band : check.partition[0].bands) seen.insert(band.begin(), band.end());
    seen.insert(check.partition[0].certain.begin(), check.partition[0].certain.end());
    ASSERT_EQ(seen.size(), rc.prob.num_vars());
    for (std::size_t j = 0; j < rc.prob.num_vars(); ++j) ASSERT_EQ(seen.count(j), 1U);
  }
}
