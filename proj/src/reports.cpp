#include "multiband/reports.hpp"

#include <cmath>
#include <memory>
#include <sstream>

#include "multiband/cutting_plane.hpp"
#include "multiband/flowsep.hpp"
#include "multiband/oracle.hpp"
#include "multiband/reformulation.hpp"
#include "multiband/robust01.hpp"
#include "multiband/simplex.hpp"

namespace multiband::reports {

namespace {

json theta_json(const Profile& prof) {
  json t = json::object();
  for (std::size_t o = 0; o < prof.theta.size(); ++o) t[std::to_string(static_cast<int>(o) + prof.k_minus)] = prof.theta[o];
  return t;
}

// Integer variables come back from the simplex with float noise.
std::vector<double> snap(std::vector<double> x) {
  for (double& v : x) {
    const double r = std::round(v);
    if (std::abs(v - r) < 1e-9) v = r;
  }
  return x;
}

int exit_for(lp::Status status) {
  switch (status) {
    case lp::Status::kOptimal: return kOk;
    case lp::Status::kInfeasible: return kInfeasible;
    case lp::Status::kUnbounded: return kUnbounded;
    default: return kInternalLimit;
  }
}

int exit_for(CuttingPlaneStatus status) {
  switch (status) {
    case CuttingPlaneStatus::kOptimal: return kOk;
    case CuttingPlaneStatus::kInfeasible: return kInfeasible;
    case CuttingPlaneStatus::kUnbounded: return kUnbounded;
    default: return kInternalLimit;
  }
}

lp::Solution solve_compact(const io::Instance& inst) {
  const CompactCounterpart cc = build_compact(inst.problem, inst.scheme);
  lp::Solution sol = lp::solve_milp(cc.problem);
  if (sol.status == lp::Status::kOptimal) sol.x.resize(inst.problem.num_vars());
  return sol;
}

}  // namespace

std::string render(const Report& report) {
  std::string out;
  for (const json& line : report.lines) {
    out += line.dump();
    out += '\n';
  }
  return out;
}

Report validate(const io::Instance& inst) {
  Report rep;
  const auto issues = validate_instance(inst.problem, inst.scheme);
  json doc;
  doc["valid"] = issues.empty();
  doc["issues"] = issues;
  if (issues.empty()) {
    const Profile shared = compute_profile(inst.scheme, static_cast<int>(inst.problem.num_vars()));
    doc["profile"] = {{"p", shared.p}, {"theta", theta_json(shared)}};
    json rows = json::array();
    for (std::size_t i = 0; i < inst.problem.num_rows(); ++i) {
      const RowUncertainty ru = row_uncertainty(inst.problem, inst.scheme, i);
      rows.push_back({{"row", i}, {"uncertain", ru.size()}, {"p", ru.profile.p}, {"theta", theta_json(ru.profile)}});
    }
    doc["rows"] = rows;
  } else {
    rep.exit_code = kInvalidInstance;
  }
  rep.lines.push_back(doc);
  return rep;
}

Report solve(const io::Instance& inst, Method method, bool parallel) {
  require_valid(inst.problem, inst.scheme);
  Report rep;
  const NominalProblem& prob = inst.problem;
  json doc;
  if (method == Method::kCompact) {
    const CompactCounterpart cc = build_compact(prob, inst.scheme);
    lp::Solution sol = lp::solve_milp(cc.problem);
    doc["method"] = "compact";
    doc["status"] = lp::to_string(sol.status);
    rep.exit_code = exit_for(sol.status);
    if (sol.status == lp::Status::kOptimal) {
      sol.x.resize(prob.num_vars());
      doc["value"] = io::number(io::reported_value(prob, sol.value));
      doc["x"] = io::numbers(snap(sol.x));
    }
    doc["stats"] = {{"vars", cc.problem.num_vars()},
                    {"rows", cc.problem.num_rows()},
                    {"link_rows", cc.link_rows},
                    {"simplex_iterations", sol.iterations},
                    {"nodes", sol.nodes}};
  } else {
    CuttingPlaneOptions opt;
    opt.parallel_separation = parallel;
    const CuttingPlaneResult res = solve_by_cuts(prob, inst.scheme, opt);
    for (const IterationLog& e : res.log) {
      rep.lines.push_back({{"iteration", e.iteration},
                           {"objective", io::number(io::reported_value(prob, e.objective))},
                           {"max_violation", io::number(e.max_violation)},
                           {"cuts_added", e.cuts_added}});
    }
    doc["method"] = "cutting-plane";
    doc["status"] = to_string(res.status);
    rep.exit_code = exit_for(res.status);
    if (res.status == CuttingPlaneStatus::kOptimal) {
      doc["value"] = io::number(io::reported_value(prob, res.value));
      doc["x"] = io::numbers(snap(res.x));
    }
    doc["stats"] = {{"iterations", res.iterations},
                    {"cuts_added", res.cuts_added},
                    {"duplicate_cuts", res.duplicate_cuts}};
  }
  rep.lines.push_back(doc);
  return rep;
}

Report check(const io::Instance& inst, const std::vector<double>& x, bool exact, bool parallel) {
  const auto rows = parallel ? check_robust_parallel(inst.problem, inst.scheme, x)
                             : check_robust_serial(inst.problem, inst.scheme, x);
  Report rep;
  json doc;
  bool all = true;
  json out = json::array();
  for (const RowCheck& rc : rows) {
    double nominal = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) nominal += inst.problem.a[rc.row][j] * x[j];
    json r = {{"row", rc.row},
              {"lhs", io::number(rc.lhs)},
              {"slack", io::number(rc.slack)},
              {"deviation", io::number(rc.lhs - nominal)},
              {"robust", rc.robust}};
    if (exact) {
      const double dev = oracle::dev_bruteforce(inst.problem, inst.scheme, x, rc.row);
      r["exact_deviation"] = io::number(dev);
      r["exact_robust"] = nominal + dev <= inst.problem.b[rc.row] + kRobustTolerance;
    }
    all = all && rc.robust;
    out.push_back(r);
  }
  doc["robust"] = all;
  doc["rows"] = out;
  rep.lines.push_back(doc);
  return rep;
}

Report separate(const io::Instance& inst, const std::vector<double>& x, bool parallel) {
  Report rep;
  for (const Cut& cut : multiband::separate(inst.problem, inst.scheme, x, parallel)) {
    rep.lines.push_back({{"row", cut.row},
                         {"coeffs", io::numbers(cut.coeffs)},
                         {"rhs", io::number(cut.rhs)},
                         {"violation", io::number(cut.violation)},
                         {"scenario", io::numbers(cut.deviation)}});
  }
  return rep;
}

Report export_compact(const io::Instance& inst) {
  require_valid(inst.problem, inst.scheme);
  const CompactCounterpart cc = build_compact(inst.problem, inst.scheme);
  // The extended program has no uncertainty left.
  const std::size_t N = cc.problem.num_vars();
  BandScheme none(0, 0, BandBounds{{0}, {static_cast<int>(N)}});
  json doc = io::to_json(cc.problem, none);
  doc["layout"] = {{"x", {0, cc.layout.n}},
                   {"w", {cc.layout.w(0, 0), cc.layout.m * cc.layout.bands}},
                   {"z", {cc.layout.z(0, 0), cc.layout.m * cc.layout.n}}};
  Report rep;
  rep.lines.push_back(doc);
  return rep;
}

Report binary_solve(const io::BinaryInstance& inst, io::OracleKind kind, bool prune, bool parallel) {
  robust01::validate(inst.problem);
  std::unique_ptr<robust01::NominalOracle> oracle;
  switch (kind) {
    case io::OracleKind::kShortestPath:
      oracle = std::make_unique<robust01::ShortestPathOracle>(inst.graph, inst.source, inst.target);
      break;
    case io::OracleKind::kSpanningTree:
      oracle = std::make_unique<robust01::SpanningTreeOracle>(inst.graph);
      break;
    case io::OracleKind::kExplicit:
      oracle = std::make_unique<robust01::ExplicitSetOracle>(inst.points);
      break;
  }
  robust01::Options opt;
  opt.prune = prune;
  opt.parallel = parallel;
  const robust01::Result res = robust01::solve_robust_binary(inst.problem, *oracle, opt);
  json w = json::object();
  for (std::size_t a = 0; a < res.active_bands.size(); ++a) w[std::to_string(res.active_bands[a])] = io::number(res.w[a]);
  json doc = {{"value", io::number(res.value)},
              {"x", io::numbers(res.x)},
              {"w", w},
              {"nominal_solves", res.nominal_solves},
              {"oracle_calls", res.oracle_calls},
              {"work_bound", io::number(res.work_bound)},
              {"approximate", res.approximate}};
  Report rep;
  rep.lines.push_back(doc);
  return rep;
}

Report bound(const io::Instance& inst, const std::vector<double>& x_in, const BoundOptions& options) {
  require_valid(inst.problem, inst.scheme);
  Report rep;
  std::vector<double> x = x_in;
  if (x.empty()) {
    const lp::Solution sol = solve_compact(inst);
    if (sol.status != lp::Status::kOptimal) {
      rep.exit_code = exit_for(sol.status);
      rep.lines.push_back({{"status", lp::to_string(sol.status)}});
      return rep;
    }
    x = snap(sol.x);
  }
  if (x.size() != inst.problem.num_vars()) throw std::invalid_argument("x has wrong length");
  const std::size_t first = options.row.value_or(0);
  const std::size_t last = options.row ? first + 1 : inst.problem.num_rows();
  if (first >= inst.problem.num_rows()) throw InvalidInstance("row out of range");
  for (std::size_t i = first; i < last; ++i) {
    const auto model = probbound::row_model(inst.problem, inst.scheme, inst.samples, i, options.beta);
    const auto vb = probbound::optimize_t(model, x, options.search);
    rep.lines.push_back({{"row", i},
                         {"t_star", io::number(vb.t)},
                         {"bound_raw", io::number(vb.raw)},
                         {"bound_clamped", io::number(vb.clamped)},
                         {"confidence", io::number(vb.confidence)},
                         {"excluded_vars", vb.excluded},
                         {"mean_radius", options.search.radius == probbound::MeanRadius::kScaled
                                             ? "x*(d+ + d-)*sqrt(ln(1/beta)/(2W))"
                                             : "(d+ + d-)*sqrt(ln(1/beta)/(2W))"}});
  }
  return rep;
}

}  // namespace multiband::reports
