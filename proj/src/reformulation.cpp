#include "multiband/reformulation.hpp"

#include <string>

namespace multiband {

CompactCounterpart build_compact(const NominalProblem& prob, const BandScheme& scheme) {
  require_valid(prob, scheme);
  const std::size_t n = prob.num_vars();
  const std::size_t m = prob.num_rows();
  CompactCounterpart cc;
  cc.layout = CompactLayout{n, m, scheme.num_bands()};
  const CompactLayout& L = cc.layout;
  const std::size_t total = L.num_vars();

  NominalProblem& out = cc.problem;
  out.sense = prob.sense;
  out.c.assign(total, 0.0);
  out.integer.assign(total, false);
  out.free.assign(total, false);
  for (std::size_t j = 0; j < n; ++j) {
    out.c[j] = prob.c[j];
    out.integer[j] = prob.is_integer(j);
    out.free[j] = prob.is_free(j);
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t o = 0; o < L.bands; ++o) out.free[L.w(i, o)] = true;
  }

  std::vector<RowUncertainty> rows;
  rows.reserve(m);
  for (std::size_t i = 0; i < m; ++i) rows.push_back(row_uncertainty(prob, scheme, i));

  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> row(total, 0.0);
    for (std::size_t j = 0; j < n; ++j) row[L.x(j)] = prob.a[i][j];
    for (std::size_t o = 0; o < L.bands; ++o) row[L.w(i, o)] = rows[i].profile.theta[o];
    for (std::size_t j = 0; j < n; ++j) row[L.z(i, j)] = 1.0;
    out.a.push_back(std::move(row));
    out.b.push_back(prob.b[i]);
  }
  for (std::size_t i = 0; i < m; ++i) {
    const RowUncertainty& ru = rows[i];
    for (std::size_t c = 0; c < ru.size(); ++c) {
      const std::size_t j = ru.columns[c];
      for (std::size_t o = 0; o < L.bands; ++o) {
        // d_ij^k x_j - w_i^k - z_ij <= 0
        std::vector<double> row(total, 0.0);
        row[L.x(j)] = ru.thresholds[c][o];
        row[L.w(i, o)] = -1.0;
        row[L.z(i, j)] = -1.0;
        out.a.push_back(std::move(row));
        out.b.push_back(0.0);
        ++cc.link_rows;
      }
    }
  }
  return cc;
}

DeviationRelaxation build_deviation_relaxation(const NominalProblem& prob, const BandScheme& scheme,
                                               std::span<const double> x, std::size_t row) {
  if (x.size() != prob.num_vars()) throw std::invalid_argument("x has wrong length");
  const RowUncertainty ru = row_uncertainty(prob, scheme, row);
  DeviationRelaxation rel;
  rel.columns = ru.size();
  rel.bands = ru.num_bands();
  const std::size_t nv = rel.columns * rel.bands;
  std::vector<double> obj(nv, 0.0);
  for (std::size_t c = 0; c < rel.columns; ++c) {
    for (std::size_t o = 0; o < rel.bands; ++o) {
      obj[rel.y(c, o)] = ru.thresholds[c][o] * x[ru.columns[c]];
    }
  }
  Matrix a;
  std::vector<double> b;
  for (std::size_t o = 0; o < rel.bands; ++o) {
    std::vector<double> up(nv, 0.0);
    std::vector<double> down(nv, 0.0);
    for (std::size_t c = 0; c < rel.columns; ++c) {
      up[rel.y(c, o)] = 1.0;
      down[rel.y(c, o)] = -1.0;
    }
    a.push_back(std::move(up));
    b.push_back(ru.profile.theta[o]);
    a.push_back(std::move(down));
    b.push_back(-ru.profile.theta[o]);
  }
  for (std::size_t c = 0; c < rel.columns; ++c) {
    std::vector<double> single(nv, 0.0);
    for (std::size_t o = 0; o < rel.bands; ++o) single[rel.y(c, o)] = 1.0;
    a.push_back(std::move(single));
    b.push_back(1.0);
  }
  rel.problem = make_problem(std::move(obj), std::move(a), std::move(b));
  return rel;
}

namespace {

std::vector<double> mirrored_thresholds(const BandScheme& scheme, const ItemBands& item,
                                        const std::string& what) {
  std::vector<double> d(scheme.num_bands(), 0.0);
  std::vector<bool> filled(scheme.num_bands(), false);
  filled[scheme.offset(0)] = true;
  for (const auto& [k, delta] : item) {
    const int target = -k;
    if (k == 0 || target < scheme.k_minus() || target > scheme.k_plus()) {
      throw InvalidInstance(what + ": band " + std::to_string(k) +
                            " has no mirrored band in the scheme");
    }
    d[scheme.offset(target)] = -delta;
    filled[scheme.offset(target)] = true;
  }
  for (bool f : filled) {
    if (!f) throw InvalidInstance(what + ": thresholds must cover every band of the scheme");
  }
  return d;
}

BandScheme widen_scheme(const BandScheme& scheme, std::size_t new_n) {
  BandScheme out(scheme.k_minus(), scheme.k_plus(), scheme.shared_bounds());
  out.shared_bounds().upper[out.offset(0)] = static_cast<int>(new_n);
  for (const auto& [row, bounds] : scheme.row_overrides()) {
    BandBounds b = bounds;
    b.upper[out.offset(0)] = static_cast<int>(new_n);
    out.set_row_bounds(row, std::move(b));
  }
  for (const auto& [key, d] : scheme.all_thresholds()) out.set_thresholds(key.first, key.second, d);
  return out;
}

void append_column(NominalProblem& prob, bool free) {
  prob.c.push_back(0.0);
  for (auto& row : prob.a) row.push_back(0.0);
  prob.integer.push_back(false);
  prob.free.push_back(free);
}

}  // namespace

Lifted lift_rhs_uncertainty(const NominalProblem& prob, const BandScheme& scheme,
                            const std::map<std::size_t, ItemBands>& rhs_bands) {
  require_valid(prob, scheme);
  const std::size_t n = prob.num_vars();
  Lifted out{prob, widen_scheme(scheme, n + 1)};
  NominalProblem& p = out.problem;
  append_column(p, false);
  for (std::size_t i = 0; i < prob.num_rows(); ++i) {
    p.a[i][n] = -prob.b[i];
    p.b[i] = 0.0;
  }
  std::vector<double> pin_up(n + 1, 0.0);
  pin_up[n] = 1.0;
  std::vector<double> pin_down(n + 1, 0.0);
  pin_down[n] = -1.0;
  p.a.push_back(std::move(pin_up));
  p.b.push_back(1.0);
  p.a.push_back(std::move(pin_down));
  p.b.push_back(-1.0);
  for (const auto& [i, bands] : rhs_bands) {
    if (i >= prob.num_rows()) throw InvalidInstance("rhs bands given for nonexistent row");
    out.scheme.set_thresholds(i, n, mirrored_thresholds(scheme, bands, "rhs of row " + std::to_string(i)));
  }
  require_valid(out.problem, out.scheme);
  return out;
}

Lifted lift_cost_uncertainty(const NominalProblem& prob, const BandScheme& scheme,
                             const std::map<std::size_t, ItemBands>& cost_bands) {
  require_valid(prob, scheme);
  const std::size_t n = prob.num_vars();
  const std::size_t m = prob.num_rows();
  Lifted out{prob, widen_scheme(scheme, n + 1)};
  NominalProblem& p = out.problem;
  append_column(p, true);
  std::vector<double> epigraph(n + 1, 0.0);
  for (std::size_t j = 0; j < n; ++j) epigraph[j] = -prob.c[j];
  epigraph[n] = 1.0;
  p.a.push_back(std::move(epigraph));
  p.b.push_back(0.0);
  p.c.assign(n + 1, 0.0);
  p.c[n] = 1.0;
  for (const auto& [j, bands] : cost_bands) {
    if (j >= n) throw InvalidInstance("cost bands given for nonexistent variable");
    out.scheme.set_thresholds(m, j, mirrored_thresholds(scheme, bands, "cost of variable " + std::to_string(j)));
  }
  require_valid(out.problem, out.scheme);
  return out;
}

}  // namespace multiband
