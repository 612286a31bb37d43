#include "multiband/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Dense>

namespace multiband::oracle {

namespace {

void check_guard(std::size_t n, std::size_t bands) {
  if (n > kMaxColumns || bands > kMaxBands) {
    throw SizeGuardExceeded("exhaustive enumeration limited to n <= " +
                            std::to_string(kMaxColumns) + " and |K| <= " +
                            std::to_string(kMaxBands) + " (got n=" + std::to_string(n) +
                            ", |K|=" + std::to_string(bands) + ")");
  }
}

struct Enumerator {
  std::vector<int> cap;    // per-band maximum count
  std::vector<int> floor;  // per-band minimum count at the leaf
  std::vector<int> count;
  Assignment current;
  const std::function<void(const Assignment&)>* visit = nullptr;

  void run(std::size_t j) {
    if (j == current.size()) {
      for (std::size_t o = 0; o < count.size(); ++o) {
        if (count[o] < floor[o]) return;
      }
      (*visit)(current);
      return;
    }
    for (std::size_t o = 0; o < cap.size(); ++o) {
      if (count[o] >= cap[o]) continue;
      current[j] = o;
      ++count[o];
      run(j + 1);
      --count[o];
    }
  }
};

}  // namespace

void for_each_assignment(const BandBounds& bounds, int k_minus, std::size_t n, Mode mode,
                         const std::function<void(const Assignment&)>& visit) {
  const std::size_t bands = bounds.lower.size();
  check_guard(n, bands);
  Enumerator e;
  if (mode == Mode::kProfile) {
    const Profile prof = compute_profile(bounds, k_minus, static_cast<int>(n));
    e.cap = prof.theta;
    e.floor = prof.theta;
  } else {
    e.cap = bounds.upper;
    e.floor = bounds.lower;
  }
  e.count.assign(bands, 0);
  e.current.assign(n, 0);
  e.visit = &visit;
  e.run(0);
}

std::vector<Assignment> enumerate_assignments(const BandBounds& bounds, int k_minus, std::size_t n,
                                              Mode mode) {
  std::vector<Assignment> out;
  for_each_assignment(bounds, k_minus, n, mode, [&](const Assignment& a) { out.push_back(a); });
  return out;
}

double dev_bruteforce(const Matrix& thresholds, std::span<const double> x,
                      const BandBounds& bounds, int k_minus, Mode mode) {
  if (thresholds.size() != x.size()) throw std::invalid_argument("dimension mismatch");
  for (double v : x) {
    if (v < 0.0) throw std::invalid_argument("dev_bruteforce requires x >= 0");
  }
  double best = -std::numeric_limits<double>::infinity();
  for_each_assignment(bounds, k_minus, x.size(), mode, [&](const Assignment& a) {
    double total = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) total += thresholds[j][a[j]] * x[j];
    best = std::max(best, total);
  });
  return best;
}

double dev_bruteforce(const NominalProblem& prob, const BandScheme& scheme,
                      std::span<const double> x, std::size_t row, Mode mode) {
  if (x.size() != prob.num_vars()) throw std::invalid_argument("x has wrong length");
  const RowUncertainty ru = row_uncertainty(prob, scheme, row);
  if (ru.certain()) return 0.0;
  std::vector<double> xr;
  xr.reserve(ru.size());
  for (std::size_t j : ru.columns) xr.push_back(x[j]);
  return dev_bruteforce(ru.thresholds, xr, ru.bounds, ru.k_minus, mode);
}

bool robust_feasible_enum(const NominalProblem& prob, const BandScheme& scheme,
                          std::span<const double> x) {
  for (std::size_t i = 0; i < prob.num_rows(); ++i) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < prob.num_vars(); ++j) lhs += prob.a[i][j] * x[j];
    lhs += dev_bruteforce(prob, scheme, x, i, Mode::kProfile);
    if (lhs > prob.b[i] + kTolerance) return false;
  }
  return true;
}

EnumOptimum robust_binary_optimum_enum(const NominalProblem& prob, const BandScheme& scheme) {
  const std::size_t n = prob.num_vars();
  if (n > 16) throw SizeGuardExceeded("binary enumeration limited to 16 variables");
  EnumOptimum best;
  std::vector<double> x(n, 0.0);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    for (std::size_t j = 0; j < n; ++j) x[j] = (mask >> j) & 1U ? 1.0 : 0.0;
    if (!robust_feasible_enum(prob, scheme, x)) continue;
    double value = 0.0;
    for (std::size_t j = 0; j < n; ++j) value += prob.c[j] * x[j];
    if (!best.feasible || value > best.value + kTolerance) {
      best.feasible = true;
      best.value = value;
      best.x = x;
    }
  }
  return best;
}

BinaryOptimum robust_value_bruteforce(std::span<const double> cost, const Matrix& thresholds,
                                      const BandBounds& bounds,
                                      const std::vector<std::vector<double>>& feasible_set) {
  if (feasible_set.empty()) throw std::invalid_argument("empty feasible set");
  const std::size_t n = cost.size();
  // Worst-case deviation of every candidate, one assignment sweep for all.
  std::vector<double> worst(feasible_set.size(), -std::numeric_limits<double>::infinity());
  for_each_assignment(bounds, 0, n, Mode::kProfile, [&](const Assignment& a) {
    for (std::size_t s = 0; s < feasible_set.size(); ++s) {
      double dev = 0.0;
      for (std::size_t j = 0; j < n; ++j) dev += thresholds[j][a[j]] * feasible_set[s][j];
      worst[s] = std::max(worst[s], dev);
    }
  });
  BinaryOptimum best{std::numeric_limits<double>::infinity(), {}};
  for (std::size_t s = 0; s < feasible_set.size(); ++s) {
    double value = worst[s];
    for (std::size_t j = 0; j < n; ++j) value += cost[j] * feasible_set[s][j];
    if (value < best.value) {
      best.value = value;
      best.x = feasible_set[s];
    }
  }
  return best;
}

std::vector<std::vector<double>> all_simple_paths(const Graph& g, std::size_t source,
                                                  std::size_t target) {
  std::vector<std::vector<double>> paths;
  std::vector<double> used(g.edges.size(), 0.0);
  std::vector<bool> visited(g.num_nodes, false);
  std::function<void(std::size_t)> dfs = [&](std::size_t u) {
    if (u == target) {
      paths.push_back(used);
      return;
    }
    visited[u] = true;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      if (g.edges[e].u != u || visited[g.edges[e].v]) continue;
      used[e] = 1.0;
      dfs(g.edges[e].v);
      used[e] = 0.0;
    }
    visited[u] = false;
  };
  dfs(source);
  return paths;
}

std::vector<std::vector<double>> all_spanning_trees(const Graph& g) {
  const std::size_t m = g.edges.size();
  if (m > 20) throw SizeGuardExceeded("spanning tree enumeration limited to 20 edges");
  std::vector<std::vector<double>> trees;
  if (g.num_nodes == 0) return trees;
  const std::size_t need = g.num_nodes - 1;
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != need) continue;
    std::vector<std::size_t> parent(g.num_nodes);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    bool acyclic = true;
    std::vector<double> x(m, 0.0);
    for (std::size_t e = 0; e < m && acyclic; ++e) {
      if (!((mask >> e) & 1U)) continue;
      const std::size_t ru = find(g.edges[e].u);
      const std::size_t rv = find(g.edges[e].v);
      if (ru == rv) acyclic = false;
      parent[ru] = rv;
      x[e] = 1.0;
    }
    if (acyclic) trees.push_back(std::move(x));
  }
  return trees;
}

VertexOptimum lp_vertex_enumeration(const NominalProblem& prob) {
  prob.check_dimensions();
  const std::size_t n = prob.num_vars();
  const std::size_t m = prob.num_rows();
  const std::size_t total = m + n;  // rows, then x_j >= 0 written as -x_j <= 0
  if (n > 8 || total > 16) throw SizeGuardExceeded("vertex enumeration limited to n <= 8, m + n <= 16");
  auto coeff = [&](std::size_t r, std::size_t j) {
    if (r < m) return prob.a[r][j];
    return r - m == j ? -1.0 : 0.0;
  };
  auto rhs = [&](std::size_t r) { return r < m ? prob.b[r] : 0.0; };

  VertexOptimum best;
  std::vector<std::size_t> pick(n);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == n) {
      Eigen::MatrixXd M(n, n);
      Eigen::VectorXd r(n);
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t j = 0; j < n; ++j) M(a, j) = coeff(pick[a], j);
        r(a) = rhs(pick[a]);
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
      if (lu.rank() < static_cast<Eigen::Index>(n)) return;
      const Eigen::VectorXd x = lu.solve(r);
      for (std::size_t row = 0; row < total; ++row) {
        double lhs = 0.0;
        for (std::size_t j = 0; j < n; ++j) lhs += coeff(row, j) * x(j);
        if (lhs > rhs(row) + 1e-7) return;
      }
      double value = 0.0;
      for (std::size_t j = 0; j < n; ++j) value += prob.c[j] * x(j);
      if (!best.feasible || value > best.value) {
        best.feasible = true;
        best.value = value;
        best.x.assign(x.data(), x.data() + n);
      }
      return;
    }
    for (std::size_t r = start; r + (n - depth) <= total; ++r) {
      pick[depth] = r;
      rec(r + 1, depth + 1);
    }
  };
  if (n == 0) return {true, 0.0, {}};
  rec(0, 0);
  return best;
}

}  // namespace multiband::oracle
