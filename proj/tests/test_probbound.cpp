#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "multiband/probbound.hpp"
#include "support.hpp"

using namespace multiband;
using namespace multiband::probbound;
using namespace multiband::testing;

namespace {

// a in [-1, 1], samples centered at 0, b given.
RowModel symmetric_row(double b, std::size_t w = 100, double beta = 0.05) {
  Coefficient c;
  c.nominal = 0;
  c.d_minus = 1;
  c.d_plus = 1;
  c.samples.assign(w, 0.0);
  c.beta = beta;
  return RowModel{0, {c}, b};
}

}  // namespace

TEST(SampleMean, Examples) {
  EXPECT_EQ(sample_mean(std::vector<double>{2, 2, 2}), 2.0);
  EXPECT_EQ(sample_mean(std::vector<double>{1, 3}), 2.0);
  EXPECT_THROW(sample_mean(std::vector<double>{}), std::invalid_argument);
  Rng rng(1301);
  std::vector<double> draws(1000);
  for (double& v : draws) v = uniform_real(rng, 0.0, 1.0);
  EXPECT_NEAR(sample_mean(draws), 0.5, 0.05);
}

TEST(MomentBound, DegenerateInputs) {
  Coefficient c = symmetric_row(0).coeffs[0];
  const MomentBound at_zero_x = moment_bound(c, 0.0, 2.0);
  EXPECT_EQ(at_zero_x.log_value, 0.0);
  EXPECT_TRUE(at_zero_x.excluded);
  EXPECT_EQ(moment_bound(c, 1.5, 0.0).log_value, 0.0);
  EXPECT_THROW(moment_bound(c, 1.0, -1.0), std::invalid_argument);
  c.beta = 1.0;
  EXPECT_THROW(moment_bound(c, 1.0, 1.0), std::invalid_argument);
}

TEST(MomentBound, CoshHandCase) {
  EXPECT_NEAR(std::exp(log_convexity_bound(-1, 1, 0, 1, 1)), 1.5430806348152437, 1e-9);
  EXPECT_NEAR(std::exp(log_convexity_bound(-1, 1, 0, 1, 1)), std::cosh(1.0), 1e-12);
}

TEST(MomentBound, MeanRadius) {
  const Coefficient c = symmetric_row(0).coeffs[0];
  const double r = 2.0 * std::sqrt(std::log(20.0) / 200.0);
  EXPECT_NEAR(mean_upper_bound(c, 0.5, MeanRadius::kScaled), 0.5 * r, 1e-12);
  EXPECT_NEAR(mean_upper_bound(c, 0.5, MeanRadius::kUnscaled), r, 1e-12);
  // Clamped into the support.
  EXPECT_EQ(mean_upper_bound(symmetric_row(0, 1).coeffs[0], 10.0, MeanRadius::kScaled), 1.0);
}

TEST(MomentBound, BetaToOneApproachesKnownMean) {
  Coefficient c = symmetric_row(0).coeffs[0];
  const double exact = log_convexity_bound(-1, 1, 0, 1, 1);
  double prev = 1e300;
  for (double gap : {1e-2, 1e-4, 1e-8, 1e-12}) {
    c.beta = 1.0 - gap;
    const double v = moment_bound(c, 1.0, 1.0).log_value;
    EXPECT_GE(v, exact - 1e-15);
    EXPECT_LE(v, prev);
    prev = v;
  }
  EXPECT_NEAR(prev, exact, 1e-5);
}

TEST(MomentBound, NondecreasingInRangeWidthAndCertainCoefficients) {
  Coefficient c = symmetric_row(0).coeffs[0];
  double prev = -1e300;
  for (double w = 1.0; w <= 5.0; w += 0.25) {
    c.d_plus = w;
    const double v = moment_bound(c, 1.3, 0.7).log_value;
    EXPECT_GE(v, prev - 1e-12);
    prev = v;
  }
  Coefficient certain;
  certain.nominal = 2.0;
  EXPECT_NEAR(moment_bound(certain, 1.5, 0.4).log_value, 0.4 * 1.5 * 2.0, 1e-15);
}

TEST(ViolationBound, DegenerateInputs) {
  const RowModel row = symmetric_row(1.0);
  const std::vector<double> zero{0};
  const ViolationBound at0 = violation_bound(row, zero, 3.0);
  EXPECT_NEAR(at0.raw, std::exp(-3.0), 1e-15);
  EXPECT_EQ(at0.confidence, 1.0);
  EXPECT_EQ(at0.excluded, (std::vector<std::size_t>{0}));
  const std::vector<double> one{1};
  const ViolationBound t0 = violation_bound(row, one, 0.0);
  EXPECT_EQ(t0.raw, 1.0);
  EXPECT_EQ(t0.clamped, 1.0);
  EXPECT_NEAR(t0.confidence, 0.95, 1e-15);
  EXPECT_THROW(violation_bound(row, one, -0.1), std::invalid_argument);
}

TEST(OptimizeT, ZeroPointPicksTmax) {
  const std::vector<double> zero{0};
  const ViolationBound vb = optimize_t(symmetric_row(1.0), zero);
  EXPECT_EQ(vb.t, 10.0);
  EXPECT_NEAR(vb.raw, std::exp(-10.0), 1e-15);
}

TEST(OptimizeT, BeatsGridAndUnitT) {
  Rng rng(1302);
  for (int it = 0; it < 50; ++it) {
    const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 1, 4));
    RowModel row;
    std::vector<double> x(n);
    for (std::size_t j = 0; j < n; ++j) {
      Coefficient c;
      c.nominal = uniform_real(rng, -1, 1);
      c.d_minus = uniform_real(rng, 0.1, 1);
      c.d_plus = uniform_real(rng, 0.1, 1);
      for (int s = 0; s < 30; ++s) c.samples.push_back(uniform_real(rng, c.lo(), c.hi()));
      row.coeffs.push_back(c);
      x[j] = uniform_real(rng, 0, 2);
    }
    row.rhs = uniform_real(rng, 0, 4);
    SearchOptions opt;
    const ViolationBound best = optimize_t(row, x, opt);
    ASSERT_LE(best.log_bound, violation_bound(row, x, 1.0).log_bound + 1e-12);
    for (std::size_t g = 0; g < opt.grid; ++g) {
      const double t = opt.t_max * std::pow(opt.t_min_ratio, 1.0 - static_cast<double>(g) / (opt.grid - 1));
      ASSERT_LE(best.log_bound, violation_bound(row, x, t).log_bound + 1e-12);
    }
  }
}

TEST(OptimizeT, MatchesDenseSweep) {
  // Known mean 0 (beta near 1): log bound = -t b + ln cosh t.
  for (double b : {0.2, 0.5, 0.8}) {
    const RowModel row = symmetric_row(b, 100, 1.0 - 1e-15);
    const std::vector<double> one{1};
    const ViolationBound best = optimize_t(row, one);
    double dense = 1e300;
    for (int k = 1; k <= 10000; ++k) {
      const double t = 10.0 * k / 10000.0;
      dense = std::min(dense, -t * b + std::log(std::cosh(t)));
    }
    EXPECT_LE(best.log_bound, dense + 1e-6);
    EXPECT_NEAR(best.log_bound, dense, 1e-4);
    EXPECT_NEAR(best.t, std::atanh(b), 1e-3);
  }
}

TEST(RowModel, FromInstance) {
  auto prob = make_problem({1, 1}, {{2, 3}}, {9});
  BandScheme s(-1, 1, BandBounds{{0, 0, 0}, {1, 2, 1}});
  s.set_thresholds(0, 0, std::vector<double>{-1, 0, 2});
  SampleSet samples;
  samples.values[{0, 0}] = {1.5, 2.5, 3.5};
  const RowModel row = row_model(prob, s, samples, 0, 0.1);
  ASSERT_EQ(row.coeffs.size(), 2U);
  EXPECT_EQ(row.coeffs[0].d_minus, 1.0);
  EXPECT_EQ(row.coeffs[0].d_plus, 2.0);
  EXPECT_EQ(row.coeffs[0].beta, 0.1);
  EXPECT_TRUE(row.coeffs[1].certain());
  EXPECT_EQ(row.rhs, 9.0);
  samples.values[{0, 0}] = {4.5};
  EXPECT_THROW(row_model(prob, s, samples, 0, 0.1), InvalidInstance);
}

TEST(CounterRng, AddressableAndUniform) {
  const CounterRng a(7);
  const CounterRng b(7);
  EXPECT_EQ(a.bits(3, 11), b.bits(3, 11));
  EXPECT_NE(a.bits(3, 11), a.bits(3, 12));
  EXPECT_NE(a.bits(3, 11), a.bits(4, 11));
  double sum = 0.0;
  for (std::uint64_t k = 0; k < 10000; ++k) {
    const double u = a.uniform(0, k);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 10000, 0.5, 0.02);
}

TEST(MonteCarlo, DeterministicCoefficients) {
  const UniformRow dist{{2, 3}, {2, 3}};
  const std::vector<double> x{1, 1};
  const CounterRng rng(5);
  EXPECT_EQ(violation_frequency_serial(dist, x, 5.5, 1000, rng, 0), 0.0);
  EXPECT_EQ(violation_frequency_serial(dist, x, 4.5, 1000, rng, 0), 1.0);
}

TEST(MonteCarlo, SerialEqualsParallel) {
  const UniformRow dist{{0, 0, 0}, {2, 2, 2}};
  const std::vector<double> x{1, 1, 1};
  const CounterRng rng(9);
  for (std::uint64_t stream = 0; stream < 5; ++stream) {
    EXPECT_EQ(violation_frequency_serial(dist, x, 4.0, 20000, rng, stream),
              violation_frequency_parallel(dist, x, 4.0, 20000, rng, stream));
  }
}

TEST(MonteCarlo, AlwaysViolatedRowIsNotCertified) {
  const UniformRow dist{{1, 1}, {2, 2}};
  const std::vector<double> x{1, 1};
  MonteCarloOptions opt;
  opt.trials = 2000;
  opt.resamples = 5;
  const MonteCarloReport rep = monte_carlo_check(dist, x, 1.0, opt);
  for (double e : rep.empirical) EXPECT_EQ(e, 1.0);
  for (double b : rep.bounds) EXPECT_EQ(b, 1.0);
  EXPECT_EQ(rep.coverage, 1.0);
}

TEST(MonteCarlo, AboveSupportBoundsBelowOne) {
  const UniformRow dist{{0}, {1}};
  const std::vector<double> x{1};
  MonteCarloOptions opt;
  opt.trials = 2000;
  opt.resamples = 5;
  const MonteCarloReport rep = monte_carlo_check(dist, x, 1.5, opt);
  for (std::size_t r = 0; r < rep.bounds.size(); ++r) {
    EXPECT_EQ(rep.empirical[r], 0.0);
    EXPECT_LT(rep.bounds[r], 1.0);
  }
  EXPECT_NEAR(rep.confidence, 0.95, 1e-15);
}

TEST(MonteCarlo, ReportIsReproducible) {
  const UniformRow dist{{0, 0, 0}, {2, 2, 2}};
  const std::vector<double> x{1, 1, 1};
  MonteCarloOptions opt;
  opt.trials = 5000;
  opt.resamples = 10;
  const auto a = monte_carlo_check(dist, x, 4.5, opt);
  opt.parallel = false;
  const auto b = monte_carlo_check(dist, x, 4.5, opt);
  EXPECT_EQ(a.empirical, b.empirical);
  EXPECT_EQ(a.bounds, b.bounds);
}
