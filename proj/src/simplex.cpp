#include "multiband/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace multiband::lp {

std::string to_string(Status status) {
  switch (status) {
    case Status::kOptimal: return "optimal";
    case Status::kInfeasible: return "infeasible";
    case Status::kUnbounded: return "unbounded";
    case Status::kIterationLimit: return "iteration_limit";
    case Status::kNodeLimit: return "node_limit";
  }
  return "unknown";
}

namespace {

// How an original variable maps onto nonnegative tableau columns:
// x = shift + sign * col  (or col_pos - col_neg for free variables).
struct VarMap {
  double shift = 0.0;
  double sign = 1.0;
  std::size_t col = 0;
  std::size_t neg_col = 0;
  bool split = false;
};

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0), basis_(rows, 0) {}

  double& at(std::size_t i, std::size_t j) { return data_[i * (cols_ + 1) + j]; }
  double at(std::size_t i, std::size_t j) const { return data_[i * (cols_ + 1) + j]; }
  double& rhs(std::size_t i) { return at(i, cols_); }
  double rhs(std::size_t i) const { return at(i, cols_); }
  // Row `rows_` holds reduced profits; its rhs entry holds -objective.
  double& profit(std::size_t j) { return at(rows_, j); }
  double objective() const { return -at(rows_, cols_); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t q) {
    const double piv = at(r, q);
    for (std::size_t j = 0; j <= cols_; ++j) at(r, j) /= piv;
    at(r, q) = 1.0;
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      const double f = at(i, q);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) at(i, j) -= f * at(r, j);
      at(i, q) = 0.0;
    }
    basis_[r] = q;
  }

  void set_objective(const std::vector<double>& cost) {
    for (std::size_t j = 0; j <= cols_; ++j) at(rows_, j) = j < cols_ ? cost[j] : 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) at(rows_, j) -= cb * at(i, j);
    }
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
  std::vector<std::size_t> basis_;
};

enum class PhaseResult { kOptimal, kUnbounded, kIterationLimit };

PhaseResult run_phase(Tableau& t, const std::vector<bool>& allowed, const SimplexOptions& opt,
                      std::size_t degenerate_limit, std::size_t& iterations,
                      std::size_t& degenerate, bool& bland) {
  while (true) {
    if (iterations >= opt.max_iterations) return PhaseResult::kIterationLimit;
    std::size_t q = t.cols();
    double best = opt.optimality_tolerance;
    for (std::size_t j = 0; j < t.cols(); ++j) {
      if (!allowed[j]) continue;
      const double r = t.profit(j);
      if (r > best) {
        q = j;
        if (bland) break;
        best = r;
      }
    }
    if (q == t.cols()) return PhaseResult::kOptimal;

    std::size_t r = t.rows();
    double ratio = kInfinity;
    for (std::size_t i = 0; i < t.rows(); ++i) {
      const double a = t.at(i, q);
      if (a <= opt.pivot_tolerance) continue;
      const double candidate = std::max(t.rhs(i), 0.0) / a;
      if (candidate < ratio - 1e-12 ||
          (candidate <= ratio + 1e-12 && r < t.rows() && t.basis()[i] < t.basis()[r])) {
        ratio = std::min(ratio, candidate);
        r = i;
      }
    }
    if (r == t.rows()) return PhaseResult::kUnbounded;
    if (ratio <= 1e-12) {
      if (++degenerate > degenerate_limit) bland = true;
    }
    t.pivot(r, q);
    ++iterations;
  }
}

}  // namespace

Solution solve(const LinearProgram& lp, const SimplexOptions& opt) {
  const std::size_t n = lp.num_vars();
  if (lp.lower.size() != n || lp.upper.size() != n || lp.rows.size() != lp.rhs.size() ||
      lp.sense.size() != lp.rhs.size()) {
    throw std::invalid_argument("linear program dimensions are inconsistent");
  }

  // Map variables to nonnegative columns; finite upper bounds of
  // lower-bounded variables become extra rows.
  std::vector<VarMap> vars(n);
  std::size_t ncols = 0;
  struct BoundRow {
    std::size_t col;
    double limit;
  };
  std::vector<BoundRow> bound_rows;
  for (std::size_t j = 0; j < n; ++j) {
    VarMap& v = vars[j];
    const double lo = lp.lower[j];
    const double hi = lp.upper[j];
    if (lo > hi) {
      Solution s;
      s.status = Status::kInfeasible;
      return s;
    }
    if (std::isfinite(lo)) {
      v.shift = lo;
      v.col = ncols++;
      if (std::isfinite(hi)) bound_rows.push_back({v.col, hi - lo});
    } else if (std::isfinite(hi)) {
      v.shift = hi;
      v.sign = -1.0;
      v.col = ncols++;
    } else {
      v.split = true;
      v.col = ncols++;
      v.neg_col = ncols++;
    }
  }
  const std::size_t nstruct = ncols;

  // Standardized rows over the structural columns, rhs made nonnegative.
  struct StdRow {
    std::vector<double> coef;
    RowSense sense;
    double rhs;
  };
  std::vector<StdRow> rows;
  rows.reserve(lp.rows.size() + bound_rows.size());
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    if (lp.rows[i].size() != n) throw std::invalid_argument("row length mismatch");
    StdRow row{std::vector<double>(nstruct, 0.0), lp.sense[i], lp.rhs[i]};
    for (std::size_t j = 0; j < n; ++j) {
      const double a = lp.rows[i][j];
      if (a == 0.0) continue;
      const VarMap& v = vars[j];
      row.rhs -= a * v.shift;
      row.coef[v.col] += a * v.sign;
      if (v.split) row.coef[v.neg_col] -= a;
    }
    rows.push_back(std::move(row));
  }
  for (const BoundRow& br : bound_rows) {
    StdRow row{std::vector<double>(nstruct, 0.0), RowSense::kLessEqual, br.limit};
    row.coef[br.col] = 1.0;
    rows.push_back(std::move(row));
  }
  for (StdRow& row : rows) {
    if (row.rhs < 0.0) {
      for (double& a : row.coef) a = -a;
      row.rhs = -row.rhs;
      if (row.sense == RowSense::kLessEqual) {
        row.sense = RowSense::kGreaterEqual;
      } else if (row.sense == RowSense::kGreaterEqual) {
        row.sense = RowSense::kLessEqual;
      }
    }
  }

  const std::size_t m = rows.size();
  std::size_t nslack = 0;
  std::size_t nart = 0;
  for (const StdRow& row : rows) {
    if (row.sense != RowSense::kEqual) ++nslack;
    if (row.sense != RowSense::kLessEqual) ++nart;
  }
  const std::size_t total = nstruct + nslack + nart;
  Tableau t(m, total);
  std::vector<bool> is_artificial(total, false);
  std::size_t next_slack = nstruct;
  std::size_t next_art = nstruct + nslack;
  for (std::size_t i = 0; i < m; ++i) {
    const StdRow& row = rows[i];
    for (std::size_t j = 0; j < nstruct; ++j) t.at(i, j) = row.coef[j];
    t.rhs(i) = row.rhs;
    if (row.sense == RowSense::kLessEqual) {
      t.at(i, next_slack) = 1.0;
      t.basis()[i] = next_slack++;
    } else {
      if (row.sense == RowSense::kGreaterEqual) t.at(i, next_slack++) = -1.0;
      t.at(i, next_art) = 1.0;
      is_artificial[next_art] = true;
      t.basis()[i] = next_art++;
    }
  }

  Solution sol;
  std::size_t degenerate = 0;
  const std::size_t degenerate_limit = 3 * (n + m);
  bool bland = false;

  if (nart > 0) {
    std::vector<double> phase1(total, 0.0);
    for (std::size_t j = 0; j < total; ++j) {
      if (is_artificial[j]) phase1[j] = -1.0;
    }
    t.set_objective(phase1);
    std::vector<bool> allowed(total, true);
    const PhaseResult r =
        run_phase(t, allowed, opt, degenerate_limit, sol.iterations, degenerate, bland);
    if (r == PhaseResult::kIterationLimit) {
      sol.status = Status::kIterationLimit;
      return sol;
    }
    double scale = 1.0;
    for (const StdRow& row : rows) scale = std::max(scale, std::abs(row.rhs));
    if (t.objective() < -opt.feasibility_tolerance * scale) {
      sol.status = Status::kInfeasible;
      sol.bland_engaged = bland;
      return sol;
    }
    // Drive zero-level artificials out of the basis where possible.
    for (std::size_t i = 0; i < m; ++i) {
      if (!is_artificial[t.basis()[i]]) continue;
      std::size_t best = total;
      double best_abs = opt.pivot_tolerance;
      for (std::size_t j = 0; j < total; ++j) {
        if (is_artificial[j]) continue;
        if (std::abs(t.at(i, j)) > best_abs) {
          best_abs = std::abs(t.at(i, j));
          best = j;
        }
      }
      if (best < total) t.pivot(i, best);
    }
  }

  std::vector<double> cost(total, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const VarMap& v = vars[j];
    cost[v.col] += lp.objective[j] * v.sign;
    if (v.split) cost[v.neg_col] -= lp.objective[j];
  }
  t.set_objective(cost);
  std::vector<bool> allowed(total, true);
  for (std::size_t j = 0; j < total; ++j) allowed[j] = !is_artificial[j];
  const PhaseResult r =
      run_phase(t, allowed, opt, degenerate_limit, sol.iterations, degenerate, bland);
  sol.bland_engaged = bland;
  if (r == PhaseResult::kIterationLimit) {
    sol.status = Status::kIterationLimit;
    return sol;
  }
  if (r == PhaseResult::kUnbounded) {
    sol.status = Status::kUnbounded;
    return sol;
  }

  std::vector<double> colval(total, 0.0);
  for (std::size_t i = 0; i < m; ++i) colval[t.basis()[i]] = std::max(t.rhs(i), 0.0);
  sol.x.assign(n, 0.0);
  sol.value = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const VarMap& v = vars[j];
    double x = v.shift + v.sign * colval[v.col];
    if (v.split) x -= colval[v.neg_col];
    sol.x[j] = x;
    sol.value += lp.objective[j] * x;
  }
  sol.status = Status::kOptimal;
  return sol;
}

LinearProgram to_linear_program(const NominalProblem& prob) {
  prob.check_dimensions();
  LinearProgram lp;
  lp.objective = prob.c;
  lp.rows = prob.a;
  lp.sense.assign(prob.num_rows(), RowSense::kLessEqual);
  lp.rhs = prob.b;
  lp.lower.assign(prob.num_vars(), 0.0);
  lp.upper.assign(prob.num_vars(), kInfinity);
  for (std::size_t j = 0; j < prob.num_vars(); ++j) {
    if (prob.is_free(j)) lp.lower[j] = -kInfinity;
  }
  return lp;
}

Solution solve_lp(const NominalProblem& prob, const SimplexOptions& options) {
  return solve(to_linear_program(prob), options);
}

namespace {

struct Node {
  double bound;
  std::size_t id;
  std::vector<double> lower;
  std::vector<double> upper;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.id > b.id;
  }
};

}  // namespace

Solution solve_milp(const NominalProblem& prob, const BranchOptions& options) {
  LinearProgram lp = to_linear_program(prob);
  bool has_integer = false;
  for (std::size_t j = 0; j < prob.num_vars(); ++j) has_integer = has_integer || prob.is_integer(j);
  Solution root = solve(lp, options.simplex);
  root.nodes = 1;
  if (!has_integer || root.status != Status::kOptimal) return root;

  Solution incumbent;
  incumbent.status = Status::kInfeasible;
  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  std::size_t next_id = 0;
  std::size_t iterations = root.iterations;
  open.push(Node{root.value, next_id++, lp.lower, lp.upper});
  std::size_t processed = 0;

  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    if (incumbent.status == Status::kOptimal &&
        node.bound <= incumbent.value + options.absolute_gap) {
      continue;
    }
    if (++processed > options.max_nodes) {
      incumbent.status = Status::kNodeLimit;
      incumbent.nodes = processed - 1;
      incumbent.iterations = iterations;
      return incumbent;
    }
    lp.lower = node.lower;
    lp.upper = node.upper;
    Solution s = solve(lp, options.simplex);
    iterations += s.iterations;
    if (s.status == Status::kInfeasible) continue;
    if (s.status != Status::kOptimal) {
      s.nodes = processed;
      return s;
    }
    if (incumbent.status == Status::kOptimal && s.value <= incumbent.value + options.absolute_gap) {
      continue;
    }
    std::size_t branch = prob.num_vars();
    double best_frac = options.integrality_tolerance;
    for (std::size_t j = 0; j < prob.num_vars(); ++j) {
      if (!prob.is_integer(j)) continue;
      const double f = s.x[j] - std::floor(s.x[j]);
      const double dist = std::min(f, 1.0 - f);
      if (dist > best_frac) {
        best_frac = dist;
        branch = j;
      }
    }
    if (branch == prob.num_vars()) {
      for (std::size_t j = 0; j < prob.num_vars(); ++j) {
        if (prob.is_integer(j)) s.x[j] = std::round(s.x[j]);
      }
      incumbent.status = Status::kOptimal;
      incumbent.x = s.x;
      incumbent.value = 0.0;
      for (std::size_t j = 0; j < prob.num_vars(); ++j) incumbent.value += prob.c[j] * s.x[j];
      continue;
    }
    const double v = s.x[branch];
    Node down{s.value, next_id++, node.lower, node.upper};
    down.upper[branch] = std::floor(v);
    Node up{s.value, next_id++, std::move(node.lower), std::move(node.upper)};
    up.lower[branch] = std::ceil(v);
    open.push(std::move(down));
    open.push(std::move(up));
  }
  incumbent.nodes = processed;
  incumbent.iterations = iterations;
  return incumbent;
}

}  // namespace multiband::lp
