#pragma once

#include <cstddef>
#include <vector>

#include "multiband/flowsep.hpp"
#include "multiband/model.hpp"
#include "multiband/simplex.hpp"

namespace multiband {

struct CuttingPlaneOptions {
  std::size_t max_iterations = 10000;
  double violation_tolerance = kRobustTolerance;
  bool parallel_separation = false;
  lp::BranchOptions master;
};

struct IterationLog {
  std::size_t iteration = 0;
  double objective = 0.0;
  double max_violation = 0.0;  // max over rows of lhs - b at the master optimum
  std::size_t cuts_added = 0;
  std::vector<double> x;  // master optimum this round separated
};

enum class CuttingPlaneStatus {
  kOptimal,
  kInfeasible,        // some master is infeasible: no robust solution
  kUnbounded,         // master unbounded; add explicit variable bounds
  kIterationLimit,
  kMasterLimit,       // simplex/branch & bound limits inside a master solve
};

const char* to_string(CuttingPlaneStatus status);

struct CuttingPlaneResult {
  CuttingPlaneStatus status = CuttingPlaneStatus::kOptimal;
  std::vector<double> x;
  double value = 0.0;
  std::size_t iterations = 0;
  std::size_t cuts_added = 0;
  std::size_t duplicate_cuts = 0;
  std::vector<IterationLog> log;
  std::vector<Cut> cuts;
};

/// Solve the nominal problem, separate robustness cuts for every violated
/// row, add them and resolve from scratch until the master optimum is robust.
CuttingPlaneResult solve_by_cuts(const NominalProblem& prob, const BandScheme& scheme,
                                 const CuttingPlaneOptions& options = {});

}  // namespace multiband
