#include "multiband/robust01.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace multiband::robust01 {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_costs(std::span<const double> costs, std::size_t dim) {
  if (costs.size() != dim) {
    throw std::invalid_argument("cost vector has " + std::to_string(costs.size()) +
                                " entries, oracle expects " + std::to_string(dim));
  }
}

}  // namespace

ShortestPathOracle::ShortestPathOracle(Graph graph, std::size_t source, std::size_t target)
    : graph_(std::move(graph)), source_(source), target_(target) {
  if (source_ >= graph_.num_nodes || target_ >= graph_.num_nodes) {
    throw InvalidInstance("source/target outside the graph");
  }
  for (const Edge& e : graph_.edges) {
    if (e.u >= graph_.num_nodes || e.v >= graph_.num_nodes) throw InvalidInstance("edge endpoint out of range");
  }
}

NominalResult ShortestPathOracle::solve(std::span<const double> costs) const {
  check_costs(costs, dimension());
  for (double c : costs) {
    if (c < 0.0) throw std::invalid_argument("shortest path needs nonnegative costs");
  }
  const std::size_t V = graph_.num_nodes;
  std::vector<std::vector<std::size_t>> out(V);
  for (std::size_t e = 0; e < graph_.edges.size(); ++e) out[graph_.edges[e].u].push_back(e);

  // O(V^2) Dijkstra, lowest node index on ties, first edge index on ties.
  std::vector<double> dist(V, kInf);
  std::vector<std::size_t> pred(V, graph_.edges.size());
  std::vector<bool> done(V, false);
  dist[source_] = 0.0;
  while (true) {
    std::size_t u = V;
    for (std::size_t v = 0; v < V; ++v) {
      if (!done[v] && dist[v] < kInf && (u == V || dist[v] < dist[u])) u = v;
    }
    if (u == V) break;
    done[u] = true;
    for (std::size_t e : out[u]) {
      const std::size_t v = graph_.edges[e].v;
      if (done[v]) continue;
      if (dist[u] + costs[e] < dist[v]) {
        dist[v] = dist[u] + costs[e];
        pred[v] = e;
      }
    }
  }
  if (dist[target_] == kInf) throw std::runtime_error("target is not reachable from source");
  NominalResult res;
  res.x.assign(dimension(), 0.0);
  for (std::size_t v = target_; v != source_;) {
    const std::size_t e = pred[v];
    res.x[e] = 1.0;
    res.value += costs[e];
    v = graph_.edges[e].u;
  }
  return res;
}

SpanningTreeOracle::SpanningTreeOracle(Graph graph) : graph_(std::move(graph)) {
  if (graph_.num_nodes == 0) throw InvalidInstance("spanning tree of an empty graph");
  for (const Edge& e : graph_.edges) {
    if (e.u >= graph_.num_nodes || e.v >= graph_.num_nodes) throw InvalidInstance("edge endpoint out of range");
  }
}

NominalResult SpanningTreeOracle::solve(std::span<const double> costs) const {
  check_costs(costs, dimension());
  std::vector<std::size_t> order(graph_.edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return costs[a] < costs[b]; });
  std::vector<std::size_t> parent(graph_.num_nodes);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  NominalResult res;
  res.x.assign(dimension(), 0.0);
  std::size_t picked = 0;
  for (std::size_t e : order) {
    const std::size_t ru = find(graph_.edges[e].u);
    const std::size_t rv = find(graph_.edges[e].v);
    if (ru == rv) continue;
    parent[ru] = rv;
    res.x[e] = 1.0;
    res.value += costs[e];
    ++picked;
  }
  if (picked + 1 != graph_.num_nodes) throw std::runtime_error("graph is disconnected");
  return res;
}

ExplicitSetOracle::ExplicitSetOracle(std::vector<std::vector<double>> points)
    : points_(std::move(points)) {
  if (points_.empty()) throw InvalidInstance("explicit feasible set is empty");
  dim_ = points_.front().size();
  for (const auto& p : points_) {
    if (p.size() != dim_) throw InvalidInstance("explicit set points differ in length");
    for (double v : p) {
      if (v != 0.0 && v != 1.0) throw InvalidInstance("explicit set points must be 0/1");
    }
  }
}

NominalResult ExplicitSetOracle::solve(std::span<const double> costs) const {
  check_costs(costs, dim_);
  std::size_t best = 0;
  double best_value = kInf;
  for (std::size_t s = 0; s < points_.size(); ++s) {
    double v = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) v += costs[j] * points_[s][j];
    if (v < best_value) {
      best_value = v;
      best = s;
    }
  }
  return {points_[best], best_value};
}

void validate(const CombinatorialInstance& inst) {
  const std::size_t n = inst.num_elements();
  const std::size_t K = inst.num_bands();
  if (K == 0) throw InvalidInstance("at least band 0 is required");
  if (inst.thresholds.size() != n) throw InvalidInstance("one threshold row per element is required");
  for (std::size_t j = 0; j < n; ++j) {
    if (!(inst.cost[j] >= 0.0)) throw InvalidInstance("costs must be nonnegative");
    const auto& d = inst.thresholds[j];
    if (d.size() != K) throw InvalidInstance("element " + std::to_string(j) + " has wrong threshold count");
    if (d[0] != 0.0) throw InvalidInstance("d^0 must be 0");
    for (std::size_t k = 1; k < K; ++k) {
      if (!(d[k] > d[k - 1])) {
        throw InvalidInstance("thresholds of element " + std::to_string(j) + " must be strictly increasing");
      }
    }
  }
  if (inst.bounds.upper.size() != K || inst.bounds.upper[0] != static_cast<int>(n)) {
    throw InvalidInstance("u_0 must equal n");
  }
  compute_profile(inst.bounds, 0, static_cast<int>(n));
}

Profile profile(const CombinatorialInstance& inst) {
  return compute_profile(inst.bounds, 0, static_cast<int>(inst.num_elements()));
}

std::vector<double> modified_costs(const CombinatorialInstance& inst, std::span<const double> w) {
  if (w.size() != inst.num_bands()) throw std::invalid_argument("w must have one entry per band");
  for (double v : w) {
    if (v < 0.0) throw std::invalid_argument("w must be nonnegative");
  }
  std::vector<double> out(inst.num_elements());
  for (std::size_t j = 0; j < out.size(); ++j) {
    double extra = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) extra = std::max(extra, inst.thresholds[j][k] - w[k]);
    out[j] = inst.cost[j] + extra;
  }
  return out;
}

namespace {

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Same formula restricted to the active bands.
std::vector<double> active_costs(const CombinatorialInstance& inst,
                                 const std::vector<std::size_t>& bands, std::span<const double> w) {
  std::vector<double> out(inst.num_elements());
  for (std::size_t j = 0; j < out.size(); ++j) {
    double extra = 0.0;
    for (std::size_t a = 0; a < bands.size(); ++a) {
      extra = std::max(extra, inst.thresholds[j][bands[a]] - w[a]);
    }
    out[j] = inst.cost[j] + extra;
  }
  return out;
}

}  // namespace

double CandidateSets::combinations() const {
  double total = 1.0;
  for (std::size_t a = 0; a < bands.size(); ++a) {
    total *= static_cast<double>(caps[a].size());
    for (std::size_t b = 0; b < bands.size(); ++b) {
      if (a != b) total *= static_cast<double>(diff[a][b].size());
    }
  }
  return total;
}

CandidateSets candidate_sets(const CombinatorialInstance& inst) {
  validate(inst);
  const Profile prof = profile(inst);
  CandidateSets sets;
  for (std::size_t k = 0; k < inst.num_bands(); ++k) {
    if (prof.theta[k] > 0) sets.bands.push_back(k);
  }
  const std::size_t K = sets.bands.size();
  const std::size_t n = inst.num_elements();
  sets.diff.assign(K, std::vector<std::vector<double>>(K));
  sets.caps.resize(K);
  for (std::size_t a = 0; a < K; ++a) {
    std::vector<double> c{0.0};
    for (std::size_t j = 0; j < n; ++j) c.push_back(inst.thresholds[j][sets.bands[a]]);
    sets.caps[a] = sorted_unique(std::move(c));
    for (std::size_t b = 0; b < K; ++b) {
      if (a == b) continue;
      std::vector<double> v{0.0};
      for (std::size_t j = 0; j < n; ++j) {
        v.push_back(inst.thresholds[j][sets.bands[a]] - inst.thresholds[j][sets.bands[b]]);
      }
      sets.diff[a][b] = sorted_unique(std::move(v));
    }
  }
  return sets;
}

std::optional<std::vector<double>> feasible_w(const Matrix& diff, std::span<const double> caps) {
  const std::size_t K = caps.size();
  if (diff.size() != K) throw std::invalid_argument("diff must be |K| x |K|");
  // Node K is the root. Constraint w_v - w_u <= c becomes arc u -> v of weight c.
  struct Arc {
    std::size_t u, v;
    double c;
  };
  std::vector<Arc> arcs;
  for (std::size_t a = 0; a < K; ++a) {
    if (!std::isfinite(caps[a])) throw std::invalid_argument("caps must be finite");
    arcs.push_back({K, a, caps[a]});  // w_a <= c_a
    arcs.push_back({a, K, 0.0});      // w_a >= 0
    for (std::size_t b = 0; b < K; ++b) {
      if (a == b) continue;
      if (!std::isfinite(diff[a][b])) throw std::invalid_argument("diff bounds must be finite");
      arcs.push_back({a, b, -diff[a][b]});  // w_b - w_a <= -b_ab
    }
  }
  std::vector<double> dist(K + 1, kInf);
  dist[K] = 0.0;
  for (std::size_t pass = 0; pass <= K; ++pass) {
    bool changed = false;
    for (const Arc& e : arcs) {
      if (dist[e.u] < kInf && dist[e.u] + e.c < dist[e.v]) {
        dist[e.v] = dist[e.u] + e.c;
        changed = true;
      }
    }
    if (!changed) break;
  }
  for (const Arc& e : arcs) {
    if (dist[e.u] + e.c < dist[e.v] - 1e-9) return std::nullopt;  // negative cycle
  }
  std::vector<double> w(K);
  for (std::size_t a = 0; a < K; ++a) w[a] = std::clamp(dist[a] - dist[K], 0.0, caps[a]);
  return w;
}

namespace {

using WKey = std::vector<long long>;

WKey key_of(const std::vector<double>& w) {
  WKey k(w.size());
  for (std::size_t a = 0; a < w.size(); ++a) k[a] = std::llround(w[a] * 1e9);
  return k;
}

struct Slot {
  std::size_t a, b;  // b == a marks the cap of band a
};

// Decision order: ordered pairs (a, b), a != b, lexicographically, then caps.
std::vector<Slot> slots_of(std::size_t K) {
  std::vector<Slot> s;
  for (std::size_t a = 0; a < K; ++a) {
    for (std::size_t b = 0; b < K; ++b) {
      if (a != b) s.push_back({a, b});
    }
  }
  for (std::size_t a = 0; a < K; ++a) s.push_back({a, a});
  return s;
}

class Collector {
 public:
  void add(const std::vector<double>& w, const Matrix& diff, const std::vector<double>& caps,
           std::size_t multiplicity) {
    auto [it, inserted] = index_.try_emplace(key_of(w), out_.candidates.size());
    if (inserted) out_.candidates.push_back({w, diff, caps, 0});
    out_.candidates[it->second].multiplicity += multiplicity;
    out_.feasible_combinations += multiplicity;
  }
  Sweep take() { return std::move(out_); }

 private:
  std::map<WKey, std::size_t> index_;
  Sweep out_;
};

// Enumerates the subtree below `depth` with slots [0, depth) already fixed.
void enumerate(const CandidateSets& sets, const std::vector<Slot>& slots, std::size_t depth,
               Matrix& diff, std::vector<double>& caps, Collector& out) {
  const std::size_t K = sets.bands.size();
  if (depth == slots.size()) {
    if (auto w = feasible_w(diff, caps)) out.add(*w, diff, caps, 1);
    return;
  }
  const Slot s = slots[depth];
  const auto& values = s.a == s.b ? sets.caps[s.a] : sets.diff[s.a][s.b];
  for (double v : values) {
    // Cheap necessary conditions; feasible_w stays the arbiter.
    if (s.a != s.b && s.a > s.b && v + diff[s.b][s.a] > 1e-9) continue;  // 2-cycle
    if (s.a == s.b) {
      bool ok = true;
      for (std::size_t b = 0; b < K && ok; ++b) {
        if (b != s.a && diff[s.a][b] > v + 1e-9) ok = false;  // w_a >= b_ab + w_b >= b_ab
      }
      if (!ok) continue;
    }
    if (s.a == s.b) {
      caps[s.a] = v;
    } else {
      diff[s.a][s.b] = v;
    }
    enumerate(sets, slots, depth + 1, diff, caps, out);
  }
}

Matrix empty_diff(std::size_t K) { return Matrix(K, std::vector<double>(K, 0.0)); }

}  // namespace

Sweep sweep_candidates_serial(const CandidateSets& sets) {
  const std::size_t K = sets.bands.size();
  const auto slots = slots_of(K);
  Matrix diff = empty_diff(K);
  std::vector<double> caps(K, 0.0);
  Collector out;
  enumerate(sets, slots, 0, diff, caps, out);
  return out.take();
}

Sweep sweep_candidates_parallel(const CandidateSets& sets) {
  const std::size_t K = sets.bands.size();
  const auto slots = slots_of(K);
  if (slots.empty()) return sweep_candidates_serial(sets);
  // One task per value of the first decision; tasks are contiguous blocks of
  // the serial order, so merging them in task order reproduces it exactly.
  const Slot first = slots[0];
  const auto& values = first.a == first.b ? sets.caps[first.a] : sets.diff[first.a][first.b];
  std::vector<Sweep> parts(values.size());
  const auto tasks = static_cast<long>(values.size());
#pragma omp parallel for schedule(dynamic)
  for (long t = 0; t < tasks; ++t) {
    Matrix diff = empty_diff(K);
    std::vector<double> caps(K, 0.0);
    Collector local;
    if (first.a == first.b) {
      caps[first.a] = values[t];
    } else {
      diff[first.a][first.b] = values[t];
    }
    // K == 1 has only the cap slot; its prune check is vacuous.
    enumerate(sets, slots, 1, diff, caps, local);
    parts[t] = local.take();
  }
  Collector merged;
  for (Sweep& part : parts) {
    for (WCandidate& c : part.candidates) merged.add(c.w, c.diff, c.caps, c.multiplicity);
  }
  return merged.take();
}

Result solve_robust_binary(const CombinatorialInstance& inst, const NominalOracle& oracle,
                           const Options& options) {
  const CandidateSets sets = candidate_sets(inst);
  if (oracle.dimension() != inst.num_elements()) {
    throw InvalidInstance("oracle dimension does not match the number of elements");
  }
  const Profile prof = profile(inst);
  const std::size_t n = inst.num_elements();
  const Sweep sweep = options.parallel ? sweep_candidates_parallel(sets) : sweep_candidates_serial(sets);
  if (sweep.candidates.empty()) throw std::logic_error("no feasible candidate w (w = 0 always is)");

  Result res;
  res.active_bands = sets.bands;
  res.approximation_ratio = oracle.approximation_ratio();
  res.approximate = res.approximation_ratio > 1.0;
  const double K_all = static_cast<double>(inst.num_bands());
  const double K_active = static_cast<double>(sets.bands.size());
  res.work_bound = std::pow(static_cast<double>(n + 1), K_all * K_all);

  auto theta_w = [&](const std::vector<double>& w) {
    double s = 0.0;
    for (std::size_t a = 0; a < w.size(); ++a) s += prof.theta[sets.bands[a]] * w[a];
    return s;
  };

  const std::size_t C = sweep.candidates.size();
  std::vector<double> totals(C, kInf);
  std::vector<NominalResult> solved(C);
  std::vector<bool> evaluated(C, false);

  if (options.prune) {
    // Sequential so the incumbent is well defined and the outcome deterministic.
    double incumbent = kInf;
    for (std::size_t c = 0; c < C; ++c) {
      const double tw = theta_w(sweep.candidates[c].w);
      if (tw >= incumbent) continue;
      solved[c] = oracle.solve(active_costs(inst, sets.bands, sweep.candidates[c].w));
      totals[c] = tw + solved[c].value;
      evaluated[c] = true;
      incumbent = std::min(incumbent, totals[c]);
    }
  } else {
    const auto count = static_cast<long>(C);
    std::vector<std::string> errors(C);
#pragma omp parallel for schedule(dynamic) if (options.parallel)
    for (long c = 0; c < count; ++c) {
      try {
        const auto& w = sweep.candidates[c].w;
        solved[c] = oracle.solve(active_costs(inst, sets.bands, w));
        totals[c] = theta_w(w) + solved[c].value;
        evaluated[c] = true;
      } catch (const std::exception& e) {
        errors[c] = e.what();
      }
    }
    for (const auto& e : errors) {
      if (!e.empty()) throw std::runtime_error(e);
    }
  }

  std::size_t best = C;
  for (std::size_t c = 0; c < C; ++c) {
    if (!evaluated[c]) continue;
    ++res.oracle_calls;
    res.nominal_solves += sweep.candidates[c].multiplicity;
    if (best == C || totals[c] < totals[best]) best = c;
  }
  for (std::size_t c = 0; c < C; ++c) {
    if (evaluated[c] && totals[c] < totals[best] - 1e-9 * std::max(1.0, std::abs(totals[best]))) {
      throw std::logic_error("candidate below the reported optimum");
    }
  }
  const double active_bound = std::pow(static_cast<double>(n + 1), K_active * K_active);
  if (static_cast<double>(res.nominal_solves) > active_bound) {
    throw std::logic_error("nominal solves exceed (n+1)^(|K|^2)");
  }
  res.x = solved[best].x;
  res.value = totals[best];
  res.w = sweep.candidates[best].w;
  return res;
}

}  // namespace multiband::robust01
