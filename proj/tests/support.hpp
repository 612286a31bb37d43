#pragma once

// Fixtures and seeded random instances shared by the unit tests and the
// acceptance runner.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "multiband/model.hpp"
#include "multiband/oracle.hpp"
#include "multiband/robust01.hpp"

namespace multiband::testing {

using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double uniform_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// n = 3, K = {0,1,2}, l = 0, u = (3,2,1); d^1 = (4,2,1), d^2 = (6,5,2);
// one row a = (1,1,1), b = 8, objective max x1 + x2 + x3.
inline NominalProblem fixture_problem(double b = 8.0) {
  return make_problem({1, 1, 1}, {{1, 1, 1}}, {b});
}

inline BandScheme fixture_scheme() {
  BandScheme s(0, 2, BandBounds{{0, 0, 0}, {3, 2, 1}});
  s.set_thresholds(0, 0, std::vector<double>{0, 4, 6});
  s.set_thresholds(0, 1, std::vector<double>{0, 2, 5});
  s.set_thresholds(0, 2, std::vector<double>{0, 1, 2});
  return s;
}

// Single positive band with u_1 = gamma.
inline BandScheme budget_scheme(std::size_t row, const std::vector<double>& d, int gamma) {
  const int n = static_cast<int>(d.size());
  BandScheme s(0, 1, BandBounds{{0, 0}, {n, gamma}});
  for (std::size_t j = 0; j < d.size(); ++j) s.set_thresholds(row, j, std::vector<double>{0, d[j]});
  return s;
}

struct SchemeShape {
  std::size_t max_n = 6;
  std::size_t max_bands = 4;  // |K|
  bool negative = true;
  bool integer_thresholds = true;
};

// Random valid bounds for n columns over `bands` bands with band 0 at `zero`.
inline BandBounds random_bounds(Rng& rng, int n, std::size_t bands, std::size_t zero) {
  BandBounds b;
  b.lower.assign(bands, 0);
  b.upper.assign(bands, n);
  int budget = n;
  std::vector<std::size_t> order(bands);
  for (std::size_t o = 0; o < bands; ++o) order[o] = o;
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t o : order) {
    const int l = uniform_int(rng, 0, std::min(budget, 2));
    b.lower[o] = l;
    budget -= l;
    b.upper[o] = o == zero ? n : uniform_int(rng, l, n);
  }
  // sum(u) >= n holds since u_0 = n.
  return b;
}

inline std::vector<double> random_thresholds(Rng& rng, int k_minus, int k_plus, bool integer) {
  std::vector<double> d(static_cast<std::size_t>(k_plus - k_minus + 1), 0.0);
  const std::size_t zero = static_cast<std::size_t>(-k_minus);
  auto step = [&] { return integer ? uniform_int(rng, 1, 4) : uniform_real(rng, 0.1, 4.0); };
  for (std::size_t o = zero + 1; o < d.size(); ++o) d[o] = d[o - 1] + step();
  for (std::size_t o = zero; o-- > 0;) d[o] = d[o + 1] - step();
  return d;
}

struct RowCase {
  NominalProblem prob;
  BandScheme scheme;
  std::vector<double> x;
};

// One fully uncertain row plus a random point in [0,3]^n.
inline RowCase random_row_case(Rng& rng, const SchemeShape& shape = {}) {
  const int n = uniform_int(rng, 1, static_cast<int>(shape.max_n));
  const int bands = uniform_int(rng, 1, static_cast<int>(shape.max_bands));
  const int k_minus = shape.negative ? -uniform_int(rng, 0, bands - 1) : 0;
  const int k_plus = k_minus + bands - 1;
  RowCase rc;
  std::vector<double> a(n);
  for (double& v : a) v = uniform_int(rng, -5, 5);
  rc.prob = make_problem(std::vector<double>(n, 1.0), {a}, {10.0});
  rc.scheme = BandScheme(k_minus, k_plus, random_bounds(rng, n, bands, static_cast<std::size_t>(-k_minus)));
  for (int j = 0; j < n; ++j) {
    rc.scheme.set_thresholds(0, j, random_thresholds(rng, k_minus, k_plus, shape.integer_thresholds));
  }
  rc.x.resize(n);
  for (double& v : rc.x) v = uniform_real(rng, 0.0, 3.0);
  return rc;
}

// A feasible deviation row drawn inside the bands (not at endpoints).
inline std::vector<double> random_interior_row(Rng& rng, const NominalProblem& prob,
                                               const BandScheme& scheme, std::size_t i) {
  const RowUncertainty ru = row_uncertainty(prob, scheme, i);
  std::vector<double> dev(prob.num_vars(), 0.0);
  if (ru.certain()) return dev;
  const auto all = oracle::enumerate_assignments(ru.bounds, ru.k_minus, ru.size(), oracle::Mode::kBounds);
  const auto& pick = all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
  for (std::size_t c = 0; c < ru.size(); ++c) {
    const auto& d = ru.thresholds[c];
    const std::size_t o = pick[c];
    double v = d[o];
    if (o > 0) {
      // (d^{o-1}, d^o]: stay clear of the open end.
      const double lo = d[o - 1];
      v = lo + (d[o] - lo) * uniform_real(rng, 0.01, 1.0);
    }
    dev[ru.columns[c]] = v;
  }
  return dev;
}

// Random instance for counterpart checks: integer data in [-5, 5], b >= 0 so
// x = 0 is robust feasible, and x_j <= box rows so the problem is bounded.
struct ProblemShape {
  std::size_t max_n = 5;
  std::size_t max_m = 3;
  std::size_t max_bands = 3;
  bool integer = false;
  bool binary = false;
  double box = 3.0;
};

struct ProblemCase {
  NominalProblem prob;
  BandScheme scheme;
};

inline ProblemCase random_problem(Rng& rng, const ProblemShape& shape) {
  const int n = uniform_int(rng, 1, static_cast<int>(shape.max_n));
  const int m = uniform_int(rng, 1, static_cast<int>(shape.max_m));
  const int bands = uniform_int(rng, 1, static_cast<int>(shape.max_bands));
  const int k_minus = -uniform_int(rng, 0, bands - 1);
  const int k_plus = k_minus + bands - 1;
  std::vector<double> c(n);
  for (double& v : c) v = uniform_int(rng, -5, 5);
  Matrix a(m, std::vector<double>(n));
  std::vector<double> b(m);
  for (int i = 0; i < m; ++i) {
    for (double& v : a[i]) v = uniform_int(rng, -5, 5);
    b[i] = uniform_int(rng, 0, 10);
  }
  ProblemCase pc;
  pc.prob = make_problem(std::move(c), std::move(a), std::move(b));
  const double box = shape.binary ? 1.0 : shape.box;
  for (int j = 0; j < n; ++j) {
    std::vector<double> row(n, 0.0);
    row[j] = 1.0;
    pc.prob.a.push_back(std::move(row));
    pc.prob.b.push_back(box);
  }
  pc.prob.integer.assign(n, shape.integer || shape.binary);
  pc.scheme = BandScheme(k_minus, k_plus, random_bounds(rng, n, bands, static_cast<std::size_t>(-k_minus)));
  // Every coefficient of the original rows is uncertain; box rows stay certain.
  if (bands > 1) {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) pc.scheme.set_thresholds(i, j, random_thresholds(rng, k_minus, k_plus, true));
    }
  }
  return pc;
}

// Cost-uncertain binary instance with its oracle and the explicit set X used
// by the brute-force reference.
enum class BinaryKind { kShortestPath, kSpanningTree, kExplicit };

struct BinaryCase {
  BinaryKind kind = BinaryKind::kExplicit;
  robust01::CombinatorialInstance inst;
  std::vector<std::vector<double>> points;
  std::unique_ptr<robust01::NominalOracle> oracle;
};

// Graphs up to 6 nodes (spanning trees up to 5), at most 10 edges, |K| <= 3,
// integer thresholds <= 9.
inline BinaryCase random_binary_case(Rng& rng, BinaryKind kind) {
  BinaryCase bc;
  bc.kind = kind;
  Graph g;
  if (kind == BinaryKind::kShortestPath) {
    g.num_nodes = static_cast<std::size_t>(uniform_int(rng, 2, 6));
    // A backbone path 0 -> 1 -> ... keeps the target reachable.
    for (std::size_t v = 0; v + 1 < g.num_nodes; ++v) g.edges.push_back({v, v + 1});
    const int extra = uniform_int(rng, 0, 10 - static_cast<int>(g.edges.size()));
    for (int e = 0; e < extra; ++e) {
      const auto u = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(g.num_nodes) - 1));
      const auto v = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(g.num_nodes) - 1));
      if (u != v) g.edges.push_back({u, v});
    }
    bc.points = oracle::all_simple_paths(g, 0, g.num_nodes - 1);
    bc.oracle = std::make_unique<robust01::ShortestPathOracle>(g, 0, g.num_nodes - 1);
  } else if (kind == BinaryKind::kSpanningTree) {
    g.num_nodes = static_cast<std::size_t>(uniform_int(rng, 2, 5));
    for (std::size_t v = 1; v < g.num_nodes; ++v) {
      g.edges.push_back({static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(v) - 1)), v});
    }
    const int extra = uniform_int(rng, 0, 10 - static_cast<int>(g.edges.size()));
    for (int e = 0; e < extra; ++e) {
      const auto u = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(g.num_nodes) - 1));
      const auto v = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(g.num_nodes) - 1));
      if (u != v) g.edges.push_back({u, v});
    }
    bc.points = oracle::all_spanning_trees(g);
    bc.oracle = std::make_unique<robust01::SpanningTreeOracle>(g);
  } else {
    const int dim = uniform_int(rng, 1, 8);
    const int count = uniform_int(rng, 1, 20);
    for (int p = 0; p < count; ++p) {
      std::vector<double> x(dim);
      for (double& v : x) v = uniform_int(rng, 0, 1);
      bc.points.push_back(std::move(x));
    }
    bc.oracle = std::make_unique<robust01::ExplicitSetOracle>(bc.points);
  }
  const int n = static_cast<int>(bc.oracle->dimension());
  const int k_plus = uniform_int(rng, 0, 2);
  bc.inst.cost.resize(n);
  for (double& c : bc.inst.cost) c = uniform_int(rng, 0, 9);
  for (int j = 0; j < n; ++j) {
    std::vector<double> d(static_cast<std::size_t>(k_plus) + 1, 0.0);
    for (std::size_t o = 1; o < d.size(); ++o) d[o] = d[o - 1] + uniform_int(rng, 1, 4);
    bc.inst.thresholds.push_back(std::move(d));
  }
  bc.inst.bounds = random_bounds(rng, n, static_cast<std::size_t>(k_plus) + 1, 0);
  return bc;
}

}  // namespace multiband::testing
