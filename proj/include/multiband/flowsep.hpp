#pragma once

// Robustness testing and cut separation through a small min-cost flow
// instance: source -> one node per uncertain column -> one node per band ->
// sink. An integral min-cost flow of value n picks the worst-case band of
// every column; its cost is minus the row's maximum deviation.

#include <cstddef>
#include <span>
#include <vector>

#include "multiband/model.hpp"

namespace multiband {

struct Arc {
  std::size_t tail = 0;
  std::size_t head = 0;
  int capacity = 0;
  double cost = 0.0;
};

struct FlowNet {
  std::size_t num_nodes = 0;
  std::size_t source = 0;
  std::size_t sink = 0;
  int required_flow = 0;
  std::vector<Arc> arcs;

  // Separation bookkeeping: which problem column / band each node stands for.
  std::size_t row = 0;
  std::vector<std::size_t> columns;  // node 1 + c is column columns[c]
  std::size_t num_bands = 0;         // band nodes follow the column nodes
  int k_minus = 0;

  std::size_t column_node(std::size_t c) const { return 1 + c; }
  std::size_t band_node(std::size_t band_offset) const { return 1 + columns.size() + band_offset; }
  /// Arc index of (column node c, band node o).
  std::size_t assignment_arc(std::size_t c, std::size_t band_offset) const {
    return columns.size() + c * num_bands + band_offset;
  }
};

FlowNet build_flow_instance(const NominalProblem& prob, const BandScheme& scheme,
                            std::span<const double> x, std::size_t row);

struct FlowResult {
  std::vector<int> flow;  // per arc
  double cost = 0.0;
};

/// Successive shortest augmenting paths with node potentials. Throws
/// std::runtime_error when the required flow cannot be routed.
FlowResult min_cost_flow(const FlowNet& net);

/// Band offset that receives each column's unit of flow.
std::vector<std::size_t> band_assignment(const FlowNet& net, const FlowResult& flow);

struct RowCheck {
  std::size_t row = 0;
  double lhs = 0.0;    // a_i'x - c*_i(x) = a_i'x + DEV_i(x)
  double slack = 0.0;  // b_i - lhs
  bool robust = true;
};

inline constexpr double kRobustTolerance = 1e-6;

/// Separation for a single row.
RowCheck check_row(const NominalProblem& prob, const BandScheme& scheme, std::span<const double> x,
                   std::size_t row);

/// Per-row robustness records. The serial version is the reference; the
/// parallel one splits rows across OpenMP threads.
std::vector<RowCheck> check_robust_serial(const NominalProblem& prob, const BandScheme& scheme,
                                          std::span<const double> x);
std::vector<RowCheck> check_robust_parallel(const NominalProblem& prob, const BandScheme& scheme,
                                            std::span<const double> x);
std::vector<RowCheck> check_robust(const NominalProblem& prob, const BandScheme& scheme,
                                   std::span<const double> x);

struct Cut {
  std::size_t row = 0;
  std::vector<double> coeffs;
  double rhs = 0.0;
  std::vector<double> deviation;  // row of the scenario realized by the flow
  double violation = 0.0;         // coeffs'x - rhs at the separated point
};

/// Robustness cut a_i'x + sum d_ij^{k(j)} x_j <= b_i. Throws
/// std::invalid_argument if row `row` is not violated at x.
Cut extract_cut(const NominalProblem& prob, const BandScheme& scheme, std::span<const double> x,
                std::size_t row, const FlowNet& net, const FlowResult& flow);

/// Worst-case scenario row at x as a constraint, violated or not.
Cut scenario_row(const NominalProblem& prob, const BandScheme& scheme, std::span<const double> x,
                 std::size_t row);

/// Cuts for every violated row, in row order.
std::vector<Cut> separate(const NominalProblem& prob, const BandScheme& scheme,
                          std::span<const double> x, bool parallel = false);

}  // namespace multiband
