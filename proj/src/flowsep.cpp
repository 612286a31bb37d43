#include "multiband/flowsep.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace multiband {

FlowNet build_flow_instance(const NominalProblem& prob, const BandScheme& scheme,
                            std::span<const double> x, std::size_t row) {
  if (row >= prob.num_rows()) {
    throw std::out_of_range("row " + std::to_string(row) + " does not exist");
  }
  if (x.size() != prob.num_vars()) throw std::invalid_argument("x has wrong length");
  const RowUncertainty ru = row_uncertainty(prob, scheme, row);
  for (std::size_t j : ru.columns) {
    if (x[j] < -kTolerance) {
      throw std::invalid_argument("x_" + std::to_string(j) + " is negative on an uncertain column");
    }
  }
  FlowNet net;
  net.row = row;
  net.columns = ru.columns;
  net.num_bands = ru.num_bands();
  net.k_minus = ru.k_minus;
  const std::size_t n = ru.size();
  net.num_nodes = n + net.num_bands + 2;
  net.source = 0;
  net.sink = net.num_nodes - 1;
  net.required_flow = static_cast<int>(n);
  net.arcs.reserve(n + n * net.num_bands + net.num_bands);
  for (std::size_t c = 0; c < n; ++c) net.arcs.push_back({net.source, net.column_node(c), 1, 0.0});
  for (std::size_t c = 0; c < n; ++c) {
    const double xj = std::max(x[ru.columns[c]], 0.0);
    for (std::size_t o = 0; o < net.num_bands; ++o) {
      const double cost = ru.thresholds[c][o] * xj;
      net.arcs.push_back({net.column_node(c), net.band_node(o), 1, cost == 0.0 ? 0.0 : -cost});
    }
  }
  for (std::size_t o = 0; o < net.num_bands; ++o) {
    net.arcs.push_back({net.band_node(o), net.sink, ru.profile.theta[o], 0.0});
  }
  return net;
}

namespace {

struct ResidualEdge {
  std::size_t arc;
  bool forward;
};

}  // namespace

FlowResult min_cost_flow(const FlowNet& net) {
  const std::size_t V = net.num_nodes;
  const auto& arcs = net.arcs;
  FlowResult result;
  result.flow.assign(arcs.size(), 0);
  if (net.required_flow == 0) return result;

  std::vector<std::vector<ResidualEdge>> adj(V);
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    adj[arcs[a].tail].push_back({a, true});
    adj[arcs[a].head].push_back({a, false});
  }
  auto residual = [&](const ResidualEdge& e) {
    return e.forward ? arcs[e.arc].capacity - result.flow[e.arc] : result.flow[e.arc];
  };
  auto cost = [&](const ResidualEdge& e) { return e.forward ? arcs[e.arc].cost : -arcs[e.arc].cost; };
  auto other = [&](const ResidualEdge& e) { return e.forward ? arcs[e.arc].head : arcs[e.arc].tail; };

  // Initial potentials: label-correcting passes from the source. The network
  // is acyclic, so arcs listed in topological order settle in one pass.
  constexpr double kUnreached = std::numeric_limits<double>::infinity();
  std::vector<double> potential(V, kUnreached);
  potential[net.source] = 0.0;
  for (std::size_t pass = 0; pass < V; ++pass) {
    bool changed = false;
    for (const Arc& a : arcs) {
      if (a.capacity <= 0 || potential[a.tail] == kUnreached) continue;
      if (potential[a.tail] + a.cost < potential[a.head] - 1e-12) {
        potential[a.head] = potential[a.tail] + a.cost;
        changed = true;
      }
    }
    if (!changed) break;
  }
  for (double& p : potential) {
    if (p == kUnreached) p = 0.0;
  }

  int sent = 0;
  std::vector<double> dist(V);
  std::vector<bool> done(V);
  std::vector<std::optional<ResidualEdge>> pred(V);
  while (sent < net.required_flow) {
    std::fill(dist.begin(), dist.end(), kUnreached);
    std::fill(done.begin(), done.end(), false);
    std::fill(pred.begin(), pred.end(), std::nullopt);
    dist[net.source] = 0.0;
    while (true) {
      std::size_t u = V;
      for (std::size_t v = 0; v < V; ++v) {
        if (!done[v] && dist[v] != kUnreached && (u == V || dist[v] < dist[u])) u = v;
      }
      if (u == V) break;
      done[u] = true;
      for (const ResidualEdge& e : adj[u]) {
        if (residual(e) <= 0) continue;
        const std::size_t v = other(e);
        if (done[v]) continue;
        double rc = cost(e) + potential[u] - potential[v];
        if (rc < 0.0) rc = 0.0;  // rounding noise; potentials keep rc >= 0
        if (dist[u] + rc < dist[v] - 1e-12) {
          dist[v] = dist[u] + rc;
          pred[v] = e;
        }
      }
    }
    if (dist[net.sink] == kUnreached) {
      throw std::runtime_error("flow network cannot route the required flow of " +
                               std::to_string(net.required_flow));
    }
    int push = net.required_flow - sent;
    for (std::size_t v = net.sink; v != net.source;) {
      const ResidualEdge e = *pred[v];
      push = std::min(push, residual(e));
      v = e.forward ? arcs[e.arc].tail : arcs[e.arc].head;
    }
    for (std::size_t v = net.sink; v != net.source;) {
      const ResidualEdge e = *pred[v];
      result.flow[e.arc] += e.forward ? push : -push;
      v = e.forward ? arcs[e.arc].tail : arcs[e.arc].head;
    }
    sent += push;
    for (std::size_t v = 0; v < V; ++v) {
      if (dist[v] != kUnreached) potential[v] += dist[v];
    }
  }
  for (std::size_t a = 0; a < arcs.size(); ++a) result.cost += arcs[a].cost * result.flow[a];
  return result;
}

std::vector<std::size_t> band_assignment(const FlowNet& net, const FlowResult& flow) {
  std::vector<std::size_t> bands(net.columns.size(), 0);
  for (std::size_t c = 0; c < net.columns.size(); ++c) {
    bool found = false;
    for (std::size_t o = 0; o < net.num_bands; ++o) {
      if (flow.flow[net.assignment_arc(c, o)] == 1) {
        bands[c] = o;
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("column node carries no flow");
  }
  return bands;
}

namespace {

double nominal_lhs(const NominalProblem& prob, std::span<const double> x, std::size_t row) {
  double lhs = 0.0;
  for (std::size_t j = 0; j < prob.num_vars(); ++j) lhs += prob.a[row][j] * x[j];
  return lhs;
}

RowCheck make_check(const NominalProblem& prob, std::span<const double> x, std::size_t row,
                    double flow_cost) {
  RowCheck rc;
  rc.row = row;
  rc.lhs = nominal_lhs(prob, x, row) - flow_cost;
  rc.slack = prob.b[row] - rc.lhs;
  rc.robust = rc.lhs <= prob.b[row] + kRobustTolerance;
  return rc;
}

void check_point(const NominalProblem& prob, const BandScheme& scheme, std::span<const double> x) {
  require_valid(prob, scheme);
  if (x.size() != prob.num_vars()) throw std::invalid_argument("x has wrong length");
}

Cut build_cut(const NominalProblem& prob, const BandScheme& scheme, std::span<const double> x,
              std::size_t row, const FlowNet& net, const FlowResult& flow) {
  Cut cut;
  cut.row = row;
  cut.rhs = prob.b[row];
  cut.deviation.assign(prob.num_vars(), 0.0);
  const RowUncertainty ru = row_uncertainty(prob, scheme, row);
  const auto bands = band_assignment(net, flow);
  for (std::size_t c = 0; c < net.columns.size(); ++c) {
    cut.deviation[net.columns[c]] = ru.thresholds[c][bands[c]];
  }
  cut.coeffs.resize(prob.num_vars());
  double lhs = 0.0;
  for (std::size_t j = 0; j < prob.num_vars(); ++j) {
    cut.coeffs[j] = prob.a[row][j] + cut.deviation[j];
    lhs += cut.coeffs[j] * x[j];
  }
  cut.violation = lhs - cut.rhs;
  return cut;
}

struct RowSeparation {
  RowCheck check;
  std::optional<Cut> cut;
};

RowSeparation separate_row(const NominalProblem& prob, const BandScheme& scheme,
                           std::span<const double> x, std::size_t row) {
  const FlowNet net = build_flow_instance(prob, scheme, x, row);
  const FlowResult flow = min_cost_flow(net);
  RowSeparation out{make_check(prob, x, row, flow.cost), std::nullopt};
  if (!out.check.robust) {
    Cut cut = build_cut(prob, scheme, x, row, net, flow);
    if (cut.violation > kRobustTolerance) out.cut = std::move(cut);
  }
  return out;
}

}  // namespace

RowCheck check_row(const NominalProblem& prob, const BandScheme& scheme, std::span<const double> x,
                   std::size_t row) {
  const FlowNet net = build_flow_instance(prob, scheme, x, row);
  return make_check(prob, x, row, min_cost_flow(net).cost);
}

std::vector<RowCheck> check_robust_serial(const NominalProblem& prob, const BandScheme& scheme,
                                          std::span<const double> x) {
  check_point(prob, scheme, x);
  std::vector<RowCheck> out;
  out.reserve(prob.num_rows());
  for (std::size_t i = 0; i < prob.num_rows(); ++i) out.push_back(check_row(prob, scheme, x, i));
  return out;
}

std::vector<RowCheck> check_robust_parallel(const NominalProblem& prob, const BandScheme& scheme,
                                            std::span<const double> x) {
  check_point(prob, scheme, x);
  const auto m = static_cast<long>(prob.num_rows());
  std::vector<RowCheck> out(prob.num_rows());
  std::vector<std::string> errors(prob.num_rows());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < m; ++i) {
    try {
      out[i] = check_row(prob, scheme, x, static_cast<std::size_t>(i));
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw std::runtime_error(e);
  }
  return out;
}

std::vector<RowCheck> check_robust(const NominalProblem& prob, const BandScheme& scheme,
                                   std::span<const double> x) {
  return check_robust_parallel(prob, scheme, x);
}

Cut extract_cut(const NominalProblem& prob, const BandScheme& scheme, std::span<const double> x,
                std::size_t row, const FlowNet& net, const FlowResult& flow) {
  Cut cut = build_cut(prob, scheme, x, row, net, flow);
  if (cut.violation <= kRobustTolerance) {
    throw std::invalid_argument("row " + std::to_string(row) +
                                " is not violated; no robustness cut to extract");
  }
  return cut;
}

Cut scenario_row(const NominalProblem& prob, const BandScheme& scheme, std::span<const double> x,
                 std::size_t row) {
  const FlowNet net = build_flow_instance(prob, scheme, x, row);
  return build_cut(prob, scheme, x, row, net, min_cost_flow(net));
}

std::vector<Cut> separate(const NominalProblem& prob, const BandScheme& scheme,
                          std::span<const double> x, bool parallel) {
  check_point(prob, scheme, x);
  const auto m = static_cast<long>(prob.num_rows());
  std::vector<RowSeparation> rows(prob.num_rows());
  std::vector<std::string> errors(prob.num_rows());
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long i = 0; i < m; ++i) {
    try {
      rows[i] = separate_row(prob, scheme, x, static_cast<std::size_t>(i));
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw std::runtime_error(e);
  }
  std::vector<Cut> cuts;
  for (auto& r : rows) {
    if (r.cut) cuts.push_back(std::move(*r.cut));
  }
  return cuts;
}

}  // namespace multiband
