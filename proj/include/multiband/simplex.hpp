#pragma once

// Dense two-phase simplex and best-bound branch & bound. Sized for the
// desk-scale programs this library produces, not for industrial LPs.

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "multiband/model.hpp"

namespace multiband::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Status { kOptimal, kInfeasible, kUnbounded, kIterationLimit, kNodeLimit };

std::string to_string(Status status);

enum class RowSense { kLessEqual, kGreaterEqual, kEqual };

/// maximize objective'x  s.t.  rows x (sense) rhs,  lower <= x <= upper.
struct LinearProgram {
  std::vector<double> objective;
  Matrix rows;
  std::vector<RowSense> sense;
  std::vector<double> rhs;
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t num_vars() const { return objective.size(); }
};

struct SimplexOptions {
  std::size_t max_iterations = 200000;
  double pivot_tolerance = 1e-9;
  double optimality_tolerance = 1e-9;
  double feasibility_tolerance = 1e-7;
};

struct Solution {
  Status status = Status::kInfeasible;
  std::vector<double> x;
  double value = 0.0;
  std::size_t iterations = 0;
  std::size_t nodes = 0;
  bool bland_engaged = false;
};

Solution solve(const LinearProgram& program, const SimplexOptions& options = {});

/// LP view of a nominal problem (integrality dropped).
LinearProgram to_linear_program(const NominalProblem& prob);

Solution solve_lp(const NominalProblem& prob, const SimplexOptions& options = {});

struct BranchOptions {
  std::size_t max_nodes = 100000;
  double integrality_tolerance = 1e-6;
  double absolute_gap = 1e-6;
  SimplexOptions simplex;
};

Solution solve_milp(const NominalProblem& prob, const BranchOptions& options = {});

}  // namespace multiband::lp
