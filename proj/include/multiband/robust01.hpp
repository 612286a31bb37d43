#pragma once

// Robust binary programs with multi-band cost uncertainty (min form):
//   min c'x + max_{profile scenario} sum_j d_j^{k(j)} x_j,  x in X subset {0,1}^n.
// Solved exactly by sweeping candidate dual vectors w over a polynomial
// candidate grid and calling a nominal oracle with modified costs.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "multiband/graph.hpp"
#include "multiband/model.hpp"

namespace multiband::robust01 {

struct NominalResult {
  std::vector<double> x;
  double value = 0.0;
};

/// Minimizes a nonnegative linear cost over a fixed set X. Implementations
/// must be safe to call concurrently.
class NominalOracle {
 public:
  virtual ~NominalOracle() = default;
  virtual std::size_t dimension() const = 0;
  virtual NominalResult solve(std::span<const double> costs) const = 0;
  /// alpha >= 1; values above 1 mean solve() returns alpha-approximations.
  virtual double approximation_ratio() const { return 1.0; }
};

/// X = incidence vectors of simple source-target paths of a digraph.
class ShortestPathOracle : public NominalOracle {
 public:
  ShortestPathOracle(Graph graph, std::size_t source, std::size_t target);
  std::size_t dimension() const override { return graph_.edges.size(); }
  NominalResult solve(std::span<const double> costs) const override;

 private:
  Graph graph_;
  std::size_t source_;
  std::size_t target_;
};

/// X = incidence vectors of spanning trees of an undirected graph.
class SpanningTreeOracle : public NominalOracle {
 public:
  explicit SpanningTreeOracle(Graph graph);
  std::size_t dimension() const override { return graph_.edges.size(); }
  NominalResult solve(std::span<const double> costs) const override;

 private:
  Graph graph_;
};

/// X given point by point.
class ExplicitSetOracle : public NominalOracle {
 public:
  explicit ExplicitSetOracle(std::vector<std::vector<double>> points);
  std::size_t dimension() const override { return dim_; }
  NominalResult solve(std::span<const double> costs) const override;

 private:
  std::vector<std::vector<double>> points_;
  std::size_t dim_ = 0;
};

struct CombinatorialInstance {
  std::vector<double> cost;  // nominal costs, >= 0
  Matrix thresholds;         // [element][band 0..K+], band 0 entry is 0
  BandBounds bounds;         // over bands 0..K+

  std::size_t num_elements() const { return cost.size(); }
  std::size_t num_bands() const { return bounds.lower.size(); }
};

/// Throws InvalidInstance on negative costs, non-monotone thresholds or bad bounds.
void validate(const CombinatorialInstance& inst);
Profile profile(const CombinatorialInstance& inst);

/// c_j + max(0, max_k (d_j^k - w_k)) with w indexed over all bands.
std::vector<double> modified_costs(const CombinatorialInstance& inst, std::span<const double> w);

/// Candidate values for the difference bounds b_{kk'} and caps c_k, restricted
/// to bands with nonzero profile. Values are deduplicated and ascending.
struct CandidateSets {
  std::vector<std::size_t> bands;                   // active band offsets
  std::vector<std::vector<std::vector<double>>> diff;  // [a][b], a != b, positions in `bands`
  std::vector<std::vector<double>> caps;            // [a]

  /// Size of the full combination grid.
  double combinations() const;
};

CandidateSets candidate_sets(const CombinatorialInstance& inst);

/// Some w with w_a - w_b >= diff[a][b] (a != b) and 0 <= w_a <= caps[a], or
/// nullopt when the system is infeasible. Solved as difference constraints.
std::optional<std::vector<double>> feasible_w(const Matrix& diff, std::span<const double> caps);

struct WCandidate {
  std::vector<double> w;  // over the active bands
  Matrix diff;            // b_{kk'} of the first combination producing w
  std::vector<double> caps;
  std::size_t multiplicity = 0;  // feasible combinations mapping to this w
};

struct Sweep {
  std::vector<WCandidate> candidates;  // distinct w in combination order
  std::size_t feasible_combinations = 0;
};

Sweep sweep_candidates_serial(const CandidateSets& sets);
Sweep sweep_candidates_parallel(const CandidateSets& sets);

struct Options {
  bool parallel = true;
  /// Skip candidates whose theta'w alone reaches the incumbent.
  bool prune = false;
};

struct Result {
  std::vector<double> x;
  double value = 0.0;
  std::vector<std::size_t> active_bands;
  std::vector<double> w;  // over active_bands
  std::size_t nominal_solves = 0;  // feasible combinations evaluated
  std::size_t oracle_calls = 0;    // distinct w actually sent to the oracle
  double work_bound = 0.0;         // (n+1)^(|K|^2)
  bool approximate = false;
  double approximation_ratio = 1.0;
};

Result solve_robust_binary(const CombinatorialInstance& inst, const NominalOracle& oracle,
                           const Options& options = {});

}  // namespace multiband::robust01
