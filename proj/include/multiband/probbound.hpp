#pragma once

// Sample-based upper bound on the probability that a robust solution violates
// a row when the true coefficients are independent random variables inside
// their band ranges, plus a Monte Carlo validator.
//
//   P[a'x > b] <= exp(-t b) * prod_j B_j(t, x_j)     for any t >= 0
//
// where B_j is the convexity bound on E[exp(t a_j x_j)] using a Hoeffding
// upper estimate of E[a_j] built from W samples.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "multiband/model.hpp"

namespace multiband::probbound {

double sample_mean(std::span<const double> samples);

/// Radius of the Hoeffding estimate of E[a], for confidence 1 - beta:
///   kScaled:   x (d+ + d-) sqrt(ln(1/beta) / (2W))
///   kUnscaled:   (d+ + d-) sqrt(ln(1/beta) / (2W))
/// kScaled follows the textbook derivation that carries x^4 in beta's
/// exponent; kUnscaled is the direct Hoeffding bound for a.
enum class MeanRadius { kScaled, kUnscaled };

struct Coefficient {
  double nominal = 0.0;  // a-bar
  double d_minus = 0.0;  // magnitude below nominal, >= 0
  double d_plus = 0.0;   // magnitude above nominal, >= 0
  std::vector<double> samples;
  double beta = 0.05;

  bool certain() const { return d_minus == 0.0 && d_plus == 0.0; }
  double lo() const { return nominal - d_minus; }
  double hi() const { return nominal + d_plus; }
};

/// Hoeffding upper estimate of E[a], clamped into [lo, hi].
double mean_upper_bound(const Coefficient& coef, double x, MeanRadius radius);

/// ln of ((hi - m) e^{t x lo} + (m - lo) e^{t x hi}) / (hi - lo), computed in
/// log space; lo == hi gives t x lo.
double log_convexity_bound(double lo, double hi, double mean, double x, double t);

struct MomentBound {
  double log_value = 0.0;
  double mean_bound = 0.0;
  bool excluded = false;  // x = 0: B = 1 and no Hoeffding step is taken
};

/// B_j[t, x]. Throws std::invalid_argument on t < 0, x < 0, beta outside
/// (0,1) or an uncertain coefficient without samples.
MomentBound moment_bound(const Coefficient& coef, double x, double t,
                         MeanRadius radius = MeanRadius::kScaled);

struct RowModel {
  std::size_t row = 0;
  std::vector<Coefficient> coeffs;  // one per column
  double rhs = 0.0;
};

struct SampleKey {
  std::size_t i = 0;
  std::size_t j = 0;
  auto operator<=>(const SampleKey&) const = default;
};

struct SampleSet {
  std::map<SampleKey, std::vector<double>> values;
  std::map<SampleKey, double> beta;  // per-coefficient overrides
};

/// Range data from the band thresholds (d- = -d^{K-}, d+ = d^{K+}), samples
/// from `samples`. Throws InvalidInstance for samples outside the range.
RowModel row_model(const NominalProblem& prob, const BandScheme& scheme, const SampleSet& samples,
                   std::size_t row, double beta);

struct ViolationBound {
  double t = 0.0;
  double log_bound = 0.0;
  double raw = 1.0;      // exp(log_bound), may exceed 1
  double clamped = 1.0;  // min(raw, 1)
  double confidence = 1.0;
  std::vector<std::size_t> excluded;  // columns with x_j = 0
};

ViolationBound violation_bound(const RowModel& row, std::span<const double> x, double t,
                               MeanRadius radius = MeanRadius::kScaled);

struct SearchOptions {
  double t_max = 10.0;
  std::size_t grid = 64;
  std::size_t golden_iterations = 40;
  double t_min_ratio = 1e-4;  // smallest grid point is t_max * ratio
  MeanRadius radius = MeanRadius::kScaled;
};

/// Geometric grid over (0, t_max], then golden section around the best grid
/// point. The returned t is the best point evaluated.
ViolationBound optimize_t(const RowModel& row, std::span<const double> x,
                          const SearchOptions& options = {});

/// splitmix64 keyed by (seed, stream, counter): any draw is addressable, so
/// results do not depend on how work is split across threads.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}
  std::uint64_t bits(std::uint64_t stream, std::uint64_t counter) const;
  /// Uniform in [0, 1).
  double uniform(std::uint64_t stream, std::uint64_t counter) const;

 private:
  std::uint64_t seed_;
};

/// Coefficient j is uniform on [lo_j, hi_j] (a point mass when lo == hi).
struct UniformRow {
  std::vector<double> lo;
  std::vector<double> hi;
};

/// Fraction of `trials` draws with a'x > rhs. Draw k of stream s uses
/// counters k * n .. k * n + n - 1.
double violation_frequency_serial(const UniformRow& dist, std::span<const double> x, double rhs,
                                  std::size_t trials, const CounterRng& rng, std::uint64_t stream);
double violation_frequency_parallel(const UniformRow& dist, std::span<const double> x, double rhs,
                                    std::size_t trials, const CounterRng& rng, std::uint64_t stream);

struct MonteCarloOptions {
  std::size_t samples_per_coefficient = 100;  // W
  double beta = 0.05;
  std::size_t trials = 100000;
  std::size_t resamples = 200;
  std::uint64_t seed = 1;
  bool parallel = true;
  SearchOptions search;
};

struct MonteCarloReport {
  std::vector<double> empirical;  // per resample
  std::vector<double> bounds;     // clamped bound per resample
  double coverage = 0.0;          // fraction with empirical <= bound
  double confidence = 1.0;        // prod (1 - beta) over x_j > 0 uncertain
};

/// For each resample: draw W samples per coefficient, build the optimized
/// bound, then estimate the violation frequency with fresh draws.
MonteCarloReport monte_carlo_check(const UniformRow& dist, std::span<const double> x, double rhs,
                                   const MonteCarloOptions& options);

}  // namespace multiband::probbound
