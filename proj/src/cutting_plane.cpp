#include "multiband/cutting_plane.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

namespace multiband {

const char* to_string(CuttingPlaneStatus status) {
  switch (status) {
    case CuttingPlaneStatus::kOptimal: return "optimal";
    case CuttingPlaneStatus::kInfeasible: return "infeasible";
    case CuttingPlaneStatus::kUnbounded: return "unbounded";
    case CuttingPlaneStatus::kIterationLimit: return "iteration_limit";
    case CuttingPlaneStatus::kMasterLimit: return "master_limit";
  }
  return "unknown";
}

namespace {

using CutKey = std::pair<std::size_t, std::vector<long long>>;

CutKey key_of(const Cut& cut) {
  std::vector<long long> rounded;
  rounded.reserve(cut.coeffs.size() + 1);
  for (double a : cut.coeffs) rounded.push_back(std::llround(a * 1e9));
  rounded.push_back(std::llround(cut.rhs * 1e9));
  return {cut.row, std::move(rounded)};
}

}  // namespace

CuttingPlaneResult solve_by_cuts(const NominalProblem& prob, const BandScheme& scheme,
                                 const CuttingPlaneOptions& options) {
  require_valid(prob, scheme);
  CuttingPlaneResult result;
  NominalProblem master = prob;
  std::set<CutKey> seen;
  // The nominal row is only a valid start when zero deviation is a scenario.
  // Otherwise start from the worst case at x = 1, which is some scenario.
  const std::vector<double> ones(prob.num_vars(), 1.0);
  const std::vector<double> zero(prob.num_vars(), 0.0);
  for (std::size_t i = 0; i < prob.num_rows(); ++i) {
    if (validate_row(prob, scheme, i, zero).feasible()) continue;
    const Cut start = scenario_row(prob, scheme, ones, i);
    master.a[i] = start.coeffs;
    seen.insert(key_of(start));
  }

  for (std::size_t iter = 1;; ++iter) {
    if (iter > options.max_iterations) {
      result.status = CuttingPlaneStatus::kIterationLimit;
      return result;
    }
    const lp::Solution sol = lp::solve_milp(master, options.master);
    result.iterations = iter;
    switch (sol.status) {
      case lp::Status::kOptimal: break;
      case lp::Status::kInfeasible: result.status = CuttingPlaneStatus::kInfeasible; return result;
      case lp::Status::kUnbounded: result.status = CuttingPlaneStatus::kUnbounded; return result;
      default: result.status = CuttingPlaneStatus::kMasterLimit; return result;
    }
    result.x = sol.x;
    result.value = sol.value;

    std::vector<Cut> cuts = separate(prob, scheme, sol.x, options.parallel_separation);
    IterationLog entry{iter, sol.value, 0.0, 0, sol.x};
    for (const Cut& cut : cuts) entry.max_violation = std::max(entry.max_violation, cut.violation);
    for (Cut& cut : cuts) {
      if (!seen.insert(key_of(cut)).second) {
        ++result.duplicate_cuts;
        continue;
      }
      master.a.push_back(cut.coeffs);
      master.b.push_back(cut.rhs);
      ++entry.cuts_added;
      result.cuts.push_back(std::move(cut));
    }
    result.cuts_added += entry.cuts_added;
    result.log.push_back(entry);
    if (cuts.empty()) {
      result.status = CuttingPlaneStatus::kOptimal;
      return result;
    }
    if (entry.cuts_added == 0) {
      // Every violated row reproduced a cut already in the master: the master
      // solve and the separation disagree numerically.
      result.status = CuttingPlaneStatus::kMasterLimit;
      return result;
    }
  }
}

}  // namespace multiband
