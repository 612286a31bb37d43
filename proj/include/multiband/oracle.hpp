#pragma once

// Exhaustive reference computations. Everything here is exponential and
// guarded; it exists to certify the polynomial code paths on small inputs.

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "multiband/graph.hpp"
#include "multiband/model.hpp"

namespace multiband::oracle {

inline constexpr std::size_t kMaxColumns = 10;
inline constexpr std::size_t kMaxBands = 5;

class SizeGuardExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

enum class Mode {
  kBounds,   // l_k <= |J_k| <= u_k
  kProfile,  // |J_k| == theta_k
};

/// Band offset per column.
using Assignment = std::vector<std::size_t>;

/// Assignments of n columns to bands, lexicographic in column then band.
std::vector<Assignment> enumerate_assignments(const BandBounds& bounds, int k_minus, std::size_t n,
                                              Mode mode);

void for_each_assignment(const BandBounds& bounds, int k_minus, std::size_t n, Mode mode,
                         const std::function<void(const Assignment&)>& visit);

/// max over assignments of sum_j thresholds[j][band(j)] * x[j].
double dev_bruteforce(const Matrix& thresholds, std::span<const double> x,
                      const BandBounds& bounds, int k_minus, Mode mode);

/// Row-level variant: `x` has one entry per problem variable.
double dev_bruteforce(const NominalProblem& prob, const BandScheme& scheme,
                      std::span<const double> x, std::size_t row, Mode mode = Mode::kProfile);

/// a_i'x + DEV_i(x) <= b_i + 1e-9 for all rows.
bool robust_feasible_enum(const NominalProblem& prob, const BandScheme& scheme,
                          std::span<const double> x);

struct EnumOptimum {
  bool feasible = false;
  double value = 0.0;
  std::vector<double> x;
};

/// Robust optimum of a problem whose variables all range over {0, 1}.
EnumOptimum robust_binary_optimum_enum(const NominalProblem& prob, const BandScheme& scheme);

/// min over x in X of c'x + max over profile assignments of sum d_j^k x_j
/// (cost-uncertain binary program, min form, bands 0..K+).
struct BinaryOptimum {
  double value = 0.0;
  std::vector<double> x;
};
BinaryOptimum robust_value_bruteforce(std::span<const double> cost, const Matrix& thresholds,
                                      const BandBounds& bounds,
                                      const std::vector<std::vector<double>>& feasible_set);

/// max c'x s.t. Ax <= b, x >= 0 (integrality ignored) by solving every n x n
/// subsystem of tight constraints. Only meaningful for bounded programs.
struct VertexOptimum {
  bool feasible = false;
  double value = 0.0;
  std::vector<double> x;
};
VertexOptimum lp_vertex_enumeration(const NominalProblem& prob);

/// Incidence vectors of every simple source-target path of a digraph.
std::vector<std::vector<double>> all_simple_paths(const Graph& g, std::size_t source,
                                                  std::size_t target);
/// Incidence vectors of every spanning tree of an undirected graph.
std::vector<std::vector<double>> all_spanning_trees(const Graph& g);

}  // namespace multiband::oracle
