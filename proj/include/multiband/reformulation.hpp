#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "multiband/model.hpp"

namespace multiband {

/// Column layout of the compact counterpart: x first, then w_i^k row-major
/// over (row, band offset), then z_ij row-major over (row, column).
struct CompactLayout {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t bands = 0;

  std::size_t x(std::size_t j) const { return j; }
  std::size_t w(std::size_t i, std::size_t band_offset) const { return n + i * bands + band_offset; }
  std::size_t z(std::size_t i, std::size_t j) const { return n + m * bands + i * n + j; }
  std::size_t num_vars() const { return n + m * bands + m * n; }
};

struct CompactCounterpart {
  NominalProblem problem;
  CompactLayout layout;
  std::size_t link_rows = 0;  // rows w_i^k + z_ij >= d_ij^k x_j
};

/// Robust counterpart obtained by dualizing each row's maximum-deviation LP.
/// Certain coefficients get no linking rows.
CompactCounterpart build_compact(const NominalProblem& prob, const BandScheme& scheme);

/// Max-deviation LP relaxation of one row at a fixed x:
///   max sum d_j^k x_j y_jk  s.t.  sum_j y_jk = theta_k,  sum_k y_jk <= 1,  y >= 0.
/// Variables are y_jk for uncertain columns (row-major over column, band).
struct DeviationRelaxation {
  NominalProblem problem;
  std::size_t columns = 0;
  std::size_t bands = 0;

  std::size_t y(std::size_t col, std::size_t band_offset) const { return col * bands + band_offset; }
};

DeviationRelaxation build_deviation_relaxation(const NominalProblem& prob, const BandScheme& scheme,
                                               std::span<const double> x, std::size_t row);

/// Deviation thresholds of an uncertain data item, keyed by that item's own
/// band index (band 0 implicit). Moving the item to the left-hand side with a
/// minus sign mirrors it: item band k becomes coefficient band -k.
using ItemBands = std::map<int, double>;

struct Lifted {
  NominalProblem problem;
  BandScheme scheme;
};

/// Uncertain right-hand sides become column n+1 (holding -b) with
/// x_{n+1} pinned to 1 by two certain rows.
Lifted lift_rhs_uncertainty(const NominalProblem& prob, const BandScheme& scheme,
                            const std::map<std::size_t, ItemBands>& rhs_bands);

/// Uncertain objective becomes an epigraph row -c'x + L <= 0 with objective max L.
Lifted lift_cost_uncertainty(const NominalProblem& prob, const BandScheme& scheme,
                             const std::map<std::size_t, ItemBands>& cost_bands);

}  // namespace multiband
