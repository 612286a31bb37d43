#include "multiband/probbound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace multiband::probbound {

double sample_mean(std::span<const double> samples) {
  if (samples.empty()) throw std::invalid_argument("sample mean of an empty list");
  double s = 0.0;
  for (double v : samples) s += v;
  return s / static_cast<double>(samples.size());
}

double mean_upper_bound(const Coefficient& coef, double x, MeanRadius radius) {
  if (!(coef.beta > 0.0 && coef.beta < 1.0)) throw std::invalid_argument("beta must lie in (0,1)");
  if (coef.samples.empty()) throw std::invalid_argument("no samples for an uncertain coefficient");
  const double W = static_cast<double>(coef.samples.size());
  double r = (coef.d_plus + coef.d_minus) * std::sqrt(std::log(1.0 / coef.beta) / (2.0 * W));
  if (radius == MeanRadius::kScaled) r *= x;
  return std::clamp(sample_mean(coef.samples) + r, coef.lo(), coef.hi());
}

double log_convexity_bound(double lo, double hi, double mean, double x, double t) {
  if (x == 0.0 || t == 0.0) return 0.0;
  const double base = t * x * lo;
  if (hi <= lo) return base;
  const double p = std::clamp((mean - lo) / (hi - lo), 0.0, 1.0);
  if (p == 0.0) return base;
  const double s = t * x * (hi - lo);
  // ln((1-p) + p e^s) = s + ln(p + (1-p) e^{-s})
  return base + s + std::log(p + (1.0 - p) * std::exp(-s));
}

MomentBound moment_bound(const Coefficient& coef, double x, double t, MeanRadius radius) {
  if (t < 0.0) throw std::invalid_argument("t must be nonnegative");
  if (x < 0.0) throw std::invalid_argument("x must be nonnegative");
  MomentBound mb;
  if (x == 0.0) {
    mb.excluded = true;
    mb.mean_bound = coef.nominal;
    return mb;
  }
  if (coef.certain()) {
    mb.mean_bound = coef.nominal;
    mb.log_value = t * x * coef.nominal;
    return mb;
  }
  mb.mean_bound = mean_upper_bound(coef, x, radius);
  mb.log_value = log_convexity_bound(coef.lo(), coef.hi(), mb.mean_bound, x, t);
  return mb;
}

RowModel row_model(const NominalProblem& prob, const BandScheme& scheme, const SampleSet& samples,
                   std::size_t row, double beta) {
  if (row >= prob.num_rows()) throw std::out_of_range("row index out of range");
  RowModel model;
  model.row = row;
  model.rhs = prob.b[row];
  for (std::size_t j = 0; j < prob.num_vars(); ++j) {
    Coefficient c;
    c.nominal = prob.a[row][j];
    c.beta = beta;
    if (const auto* d = scheme.thresholds(row, j)) {
      c.d_plus = d->back();
      c.d_minus = -d->front();
    }
    const SampleKey key{row, j};
    if (auto it = samples.beta.find(key); it != samples.beta.end()) c.beta = it->second;
    if (auto it = samples.values.find(key); it != samples.values.end()) {
      c.samples = it->second;
      for (double v : c.samples) {
        if (v < c.lo() - kTolerance || v > c.hi() + kTolerance) {
          throw InvalidInstance("sample " + std::to_string(v) + " of (" + std::to_string(row) + "," +
                                std::to_string(j) + ") lies outside [" + std::to_string(c.lo()) +
                                ", " + std::to_string(c.hi()) + "]");
        }
      }
    }
    model.coeffs.push_back(std::move(c));
  }
  return model;
}

ViolationBound violation_bound(const RowModel& row, std::span<const double> x, double t,
                               MeanRadius radius) {
  if (t < 0.0) throw std::invalid_argument("t must be nonnegative");
  if (x.size() != row.coeffs.size()) throw std::invalid_argument("x has wrong length");
  ViolationBound vb;
  vb.t = t;
  vb.log_bound = -t * row.rhs;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const MomentBound mb = moment_bound(row.coeffs[j], x[j], t, radius);
    vb.log_bound += mb.log_value;
    if (mb.excluded) {
      vb.excluded.push_back(j);
    } else if (!row.coeffs[j].certain()) {
      vb.confidence *= 1.0 - row.coeffs[j].beta;
    }
  }
  if (t == 0.0) vb.log_bound = 0.0;
  vb.raw = std::exp(vb.log_bound);
  vb.clamped = std::min(vb.raw, 1.0);
  return vb;
}

ViolationBound optimize_t(const RowModel& row, std::span<const double> x,
                          const SearchOptions& options) {
  if (!(options.t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
  if (options.grid == 0) throw std::invalid_argument("grid needs at least one point");
  auto eval = [&](double t) { return violation_bound(row, x, t, options.radius); };

  const std::size_t G = options.grid;
  std::vector<double> ts(G);
  for (std::size_t g = 0; g < G; ++g) {
    const double frac = G == 1 ? 1.0 : static_cast<double>(g) / static_cast<double>(G - 1);
    ts[g] = options.t_max * std::pow(options.t_min_ratio, 1.0 - frac);
  }
  ts.back() = options.t_max;
  ViolationBound best = eval(ts[0]);
  std::size_t best_g = 0;
  for (std::size_t g = 1; g < G; ++g) {
    ViolationBound vb = eval(ts[g]);
    if (vb.log_bound < best.log_bound) {
      best = std::move(vb);
      best_g = g;
    }
  }
  // The log-bound is convex in t, so the minimizer sits between the grid
  // neighbours of the best grid point.
  double lo = best_g == 0 ? 0.0 : ts[best_g - 1];
  double hi = best_g + 1 == G ? ts[best_g] : ts[best_g + 1];
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - ratio * (hi - lo);
  double b = lo + ratio * (hi - lo);
  ViolationBound fa = eval(a);
  ViolationBound fb = eval(b);
  for (std::size_t it = 0; it < options.golden_iterations; ++it) {
    if (fa.log_bound < best.log_bound) best = fa;
    if (fb.log_bound < best.log_bound) best = fb;
    if (fa.log_bound <= fb.log_bound) {
      hi = b;
      b = a;
      fb = std::move(fa);
      a = hi - ratio * (hi - lo);
      fa = eval(a);
    } else {
      lo = a;
      a = b;
      fa = std::move(fb);
      b = lo + ratio * (hi - lo);
      fb = eval(b);
    }
  }
  if (fa.log_bound < best.log_bound) best = fa;
  if (fb.log_bound < best.log_bound) best = fb;
  return best;
}

std::uint64_t CounterRng::bits(std::uint64_t stream, std::uint64_t counter) const {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(seed_) ^ stream) ^ counter);
}

double CounterRng::uniform(std::uint64_t stream, std::uint64_t counter) const {
  return static_cast<double>(bits(stream, counter) >> 11) * 0x1.0p-53;
}

namespace {

void check_dist(const UniformRow& dist, std::span<const double> x) {
  if (dist.lo.size() != x.size() || dist.hi.size() != x.size()) {
    throw std::invalid_argument("distribution and x differ in length");
  }
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (dist.hi[j] < dist.lo[j]) throw std::invalid_argument("empty uniform range");
  }
}

bool violated(const UniformRow& dist, std::span<const double> x, double rhs, const CounterRng& rng,
              std::uint64_t stream, std::uint64_t trial) {
  const std::size_t n = x.size();
  double lhs = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double u = rng.uniform(stream, trial * n + j);
    lhs += (dist.lo[j] + (dist.hi[j] - dist.lo[j]) * u) * x[j];
  }
  return lhs > rhs;
}

}  // namespace

double violation_frequency_serial(const UniformRow& dist, std::span<const double> x, double rhs,
                                  std::size_t trials, const CounterRng& rng, std::uint64_t stream) {
  check_dist(dist, x);
  if (trials == 0) return 0.0;
  std::size_t hits = 0;
  for (std::size_t k = 0; k < trials; ++k) hits += violated(dist, x, rhs, rng, stream, k) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(trials);
}

double violation_frequency_parallel(const UniformRow& dist, std::span<const double> x, double rhs,
                                    std::size_t trials, const CounterRng& rng, std::uint64_t stream) {
  check_dist(dist, x);
  if (trials == 0) return 0.0;
  long long hits = 0;
  const auto count = static_cast<long long>(trials);
#pragma omp parallel for reduction(+ : hits) schedule(static)
  for (long long k = 0; k < count; ++k) {
    hits += violated(dist, x, rhs, rng, stream, static_cast<std::uint64_t>(k)) ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(trials);
}

MonteCarloReport monte_carlo_check(const UniformRow& dist, std::span<const double> x, double rhs,
                                   const MonteCarloOptions& options) {
  check_dist(dist, x);
  if (options.samples_per_coefficient == 0) throw std::invalid_argument("W must be at least 1");
  const std::size_t n = x.size();
  const std::size_t W = options.samples_per_coefficient;
  const CounterRng rng(options.seed);
  MonteCarloReport rep;
  rep.empirical.resize(options.resamples);
  rep.bounds.resize(options.resamples);
  std::size_t covered = 0;
  for (std::size_t r = 0; r < options.resamples; ++r) {
    RowModel model;
    model.rhs = rhs;
    for (std::size_t j = 0; j < n; ++j) {
      Coefficient c;
      c.nominal = 0.5 * (dist.lo[j] + dist.hi[j]);
      c.d_minus = c.nominal - dist.lo[j];
      c.d_plus = dist.hi[j] - c.nominal;
      c.beta = options.beta;
      c.samples.resize(W);
      for (std::size_t s = 0; s < W; ++s) {
        c.samples[s] = dist.lo[j] + (dist.hi[j] - dist.lo[j]) * rng.uniform(2 * r, j * W + s);
      }
      model.coeffs.push_back(std::move(c));
    }
    const ViolationBound vb = optimize_t(model, x, options.search);
    rep.confidence = vb.confidence;
    rep.bounds[r] = vb.clamped;
    rep.empirical[r] =
        options.parallel ? violation_frequency_parallel(dist, x, rhs, options.trials, rng, 2 * r + 1)
                         : violation_frequency_serial(dist, x, rhs, options.trials, rng, 2 * r + 1);
    if (rep.empirical[r] <= rep.bounds[r]) ++covered;
  }
  rep.coverage = options.resamples == 0 ? 1.0
                                        : static_cast<double>(covered) /
                                              static_cast<double>(options.resamples);
  return rep;
}

}  // namespace multiband::probbound
