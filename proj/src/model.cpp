#include "multiband/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace multiband {

void NominalProblem::check_dimensions() const {
  const std::size_t n = c.size();
  if (a.size() != b.size()) {
    throw InvalidInstance("A has " + std::to_string(a.size()) + " rows but b has " +
                          std::to_string(b.size()) + " entries");
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != n) {
      throw InvalidInstance("row " + std::to_string(i) + " of A has " +
                            std::to_string(a[i].size()) + " entries, expected " +
                            std::to_string(n));
    }
  }
  if (integer.size() != n || free.size() != n) {
    throw InvalidInstance("integrality/free masks must have one entry per variable");
  }
}

NominalProblem make_problem(std::vector<double> c, Matrix a, std::vector<double> b,
                            std::vector<std::size_t> int_vars) {
  NominalProblem p;
  p.c = std::move(c);
  p.a = std::move(a);
  p.b = std::move(b);
  p.integer.assign(p.c.size(), false);
  p.free.assign(p.c.size(), false);
  for (std::size_t j : int_vars) {
    if (j >= p.c.size()) throw InvalidInstance("integer variable index out of range");
    p.integer[j] = true;
  }
  return p;
}

BandScheme::BandScheme(int k_minus, int k_plus, BandBounds shared)
    : k_minus_(k_minus), k_plus_(k_plus), shared_(std::move(shared)) {
  if (k_minus_ > 0 || k_plus_ < 0) throw InvalidInstance("band range must contain band 0");
}

const BandBounds& BandScheme::bounds(std::size_t row) const {
  auto it = overrides_.find(row);
  return it == overrides_.end() ? shared_ : it->second;
}

void BandScheme::set_row_bounds(std::size_t row, BandBounds bounds) {
  overrides_[row] = std::move(bounds);
}

void BandScheme::set_thresholds(std::size_t i, std::size_t j, std::vector<double> thresholds) {
  thresholds_[{i, j}] = std::move(thresholds);
}

void BandScheme::set_thresholds(std::size_t i, std::size_t j, const std::map<int, double>& by_band) {
  std::vector<double> d(num_bands(), 0.0);
  for (const auto& [k, value] : by_band) {
    if (k < k_minus_ || k > k_plus_) {
      throw InvalidInstance("threshold for band " + std::to_string(k) + " outside band range");
    }
    if (k == 0) throw InvalidInstance("threshold for band 0 is implicit and must not be given");
    d[offset(k)] = value;
  }
  set_thresholds(i, j, std::move(d));
}

const std::vector<double>* BandScheme::thresholds(std::size_t i, std::size_t j) const {
  auto it = thresholds_.find({i, j});
  return it == thresholds_.end() ? nullptr : &it->second;
}

double BandScheme::threshold(std::size_t i, std::size_t j, int k) const {
  const auto* d = thresholds(i, j);
  return d == nullptr ? 0.0 : (*d)[offset(k)];
}

namespace {

std::string check_bounds(const BandBounds& bounds, std::size_t num_bands, int k_minus, int n,
                         bool require_full_nominal) {
  if (bounds.lower.size() != num_bands || bounds.upper.size() != num_bands) {
    return "band bounds must have one entry per band";
  }
  long sum_lower = 0;
  long sum_upper = 0;
  for (std::size_t o = 0; o < num_bands; ++o) {
    const int k = static_cast<int>(o) + k_minus;
    const int l = bounds.lower[o];
    const int u = bounds.upper[o];
    if (l < 0 || l > u || u > n) {
      std::ostringstream msg;
      msg << "band " << k << ": bounds must satisfy 0 <= l_k <= u_k <= n (l=" << l << ", u=" << u
          << ", n=" << n << ")";
      return msg.str();
    }
    sum_lower += l;
    sum_upper += u;
    if (k == 0 && require_full_nominal && u != n) {
      return "u_0 must equal n (got u_0=" + std::to_string(u) + ", n=" + std::to_string(n) + ")";
    }
  }
  if (sum_lower > n) {
    return "sum of lower bounds " + std::to_string(sum_lower) + " exceeds n=" + std::to_string(n);
  }
  if (sum_upper < n) {
    return "sum of upper bounds " + std::to_string(sum_upper) + " is below n=" + std::to_string(n);
  }
  return {};
}

}  // namespace

Profile compute_profile(const BandBounds& bounds, int k_minus, int n) {
  const std::size_t bands = bounds.lower.size();
  if (auto err = check_bounds(bounds, bands, k_minus, n, false); !err.empty()) {
    throw InvalidInstance(err);
  }
  Profile prof;
  prof.k_minus = k_minus;
  prof.theta.assign(bands, 0);
  std::size_t p_off = bands;
  for (std::size_t o = 0; o < bands; ++o) {
    long total = 0;
    for (std::size_t q = 0; q <= o; ++q) total += bounds.lower[q];
    for (std::size_t q = o + 1; q < bands; ++q) total += bounds.upper[q];
    if (total <= n) {
      p_off = o;
      break;
    }
  }
  // Unreachable with sum(l) <= n: the last band always qualifies.
  if (p_off == bands) throw InvalidInstance("no band satisfies the profile condition");
  int rest = 0;
  for (std::size_t o = 0; o < bands; ++o) {
    if (o < p_off) prof.theta[o] = bounds.lower[o];
    if (o > p_off) prof.theta[o] = bounds.upper[o];
    if (o != p_off) rest += prof.theta[o];
  }
  prof.theta[p_off] = n - rest;
  prof.p = static_cast<int>(p_off) + k_minus;
  return prof;
}

Profile compute_profile(const BandScheme& scheme, int n) {
  return compute_profile(scheme.shared_bounds(), scheme.k_minus(), n);
}

RowUncertainty row_uncertainty(const NominalProblem& prob, const BandScheme& scheme,
                               std::size_t i) {
  if (i >= prob.num_rows()) throw std::out_of_range("row index out of range");
  RowUncertainty row;
  row.row = i;
  row.k_minus = scheme.k_minus();
  for (std::size_t j = 0; j < prob.num_vars(); ++j) {
    if (const auto* d = scheme.thresholds(i, j)) {
      row.columns.push_back(j);
      row.thresholds.push_back(*d);
    }
  }
  const int n_row = static_cast<int>(row.columns.size());
  row.bounds = scheme.bounds(i);
  for (int& u : row.bounds.upper) u = std::min(u, n_row);
  if (row.certain()) {
    row.profile.k_minus = scheme.k_minus();
    row.profile.p = 0;
    row.profile.theta.assign(scheme.num_bands(), 0);
    return row;
  }
  row.profile = compute_profile(row.bounds, scheme.k_minus(), n_row);
  return row;
}

std::vector<std::string> validate_instance(const NominalProblem& prob, const BandScheme& scheme) {
  std::vector<std::string> issues;
  try {
    prob.check_dimensions();
  } catch (const InvalidInstance& e) {
    issues.emplace_back(e.what());
    return issues;
  }
  const int n = static_cast<int>(prob.num_vars());
  const std::size_t bands = scheme.num_bands();
  if (scheme.k_minus() > 0 || scheme.k_plus() < 0) {
    issues.emplace_back("band range must satisfy K_minus <= 0 <= K_plus");
    return issues;
  }
  if (auto err = check_bounds(scheme.shared_bounds(), bands, scheme.k_minus(), n, true);
      !err.empty()) {
    issues.push_back(err);
  }
  for (const auto& [row, bounds] : scheme.row_overrides()) {
    if (row >= prob.num_rows()) {
      issues.push_back("band bounds override for nonexistent row " + std::to_string(row));
      continue;
    }
    if (auto err = check_bounds(bounds, bands, scheme.k_minus(), n, true); !err.empty()) {
      issues.push_back("row " + std::to_string(row) + ": " + err);
    }
  }
  for (const auto& [key, d] : scheme.all_thresholds()) {
    const auto [i, j] = key;
    const std::string where = "coefficient (" + std::to_string(i) + "," + std::to_string(j) + ")";
    if (i >= prob.num_rows() || j >= prob.num_vars()) {
      issues.push_back(where + " is outside the constraint matrix");
      continue;
    }
    if (d.size() != bands) {
      issues.push_back(where + " must give one threshold per band");
      continue;
    }
    if (d[scheme.offset(0)] != 0.0) issues.push_back(where + ": threshold of band 0 must be 0");
    for (std::size_t o = 1; o < bands; ++o) {
      if (!(d[o - 1] < d[o])) {
        issues.push_back(where + ": thresholds must be strictly increasing across bands (band " +
                         std::to_string(scheme.band(o - 1)) + " vs " +
                         std::to_string(scheme.band(o)) + ")");
        break;
      }
    }
  }
  if (!issues.empty()) return issues;
  for (std::size_t i = 0; i < prob.num_rows(); ++i) {
    try {
      (void)row_uncertainty(prob, scheme, i);
    } catch (const InvalidInstance& e) {
      issues.push_back("row " + std::to_string(i) + ": " + e.what());
    }
  }
  return issues;
}

void require_valid(const NominalProblem& prob, const BandScheme& scheme) {
  auto issues = validate_instance(prob, scheme);
  if (!issues.empty()) throw InvalidInstance(issues.front());
}

Scenario zero_scenario(const NominalProblem& prob) {
  return Scenario{Matrix(prob.num_rows(), std::vector<double>(prob.num_vars(), 0.0))};
}

std::optional<std::size_t> band_of(const std::vector<double>& thresholds, double value) {
  if (thresholds.empty()) return std::nullopt;
  if (value < thresholds.front() - kTolerance || value > thresholds.back() + kTolerance) {
    return std::nullopt;
  }
  for (std::size_t o = 0; o < thresholds.size(); ++o) {
    if (value <= thresholds[o] + kTolerance) return o;
  }
  return std::nullopt;
}

ScenarioCheck validate_row(const NominalProblem& prob, const BandScheme& scheme, std::size_t i,
                           const std::vector<double>& row_dev) {
  if (row_dev.size() != prob.num_vars()) {
    throw std::invalid_argument("scenario row " + std::to_string(i) + " has wrong length");
  }
  ScenarioCheck check;
  const RowUncertainty row = row_uncertainty(prob, scheme, i);
  RowPartition part;
  part.bands.assign(scheme.num_bands(), {});
  std::size_t next = 0;
  for (std::size_t j = 0; j < prob.num_vars(); ++j) {
    const bool uncertain = next < row.columns.size() && row.columns[next] == j;
    if (!uncertain) {
      if (std::abs(row_dev[j]) > kTolerance) {
        check.violation = ScenarioViolation{
            1, i, std::nullopt, j,
            "property (1): coefficient (" + std::to_string(i) + "," + std::to_string(j) +
                ") is certain but deviates by " + std::to_string(row_dev[j])};
        return check;
      }
      part.certain.push_back(j);
      continue;
    }
    const auto o = band_of(row.thresholds[next], row_dev[j]);
    if (!o) {
      check.violation = ScenarioViolation{
          1, i, std::nullopt, j,
          "property (1): deviation " + std::to_string(row_dev[j]) + " of coefficient (" +
              std::to_string(i) + "," + std::to_string(j) + ") is outside its deviation range"};
      return check;
    }
    part.bands[*o].push_back(j);
    ++next;
  }
  for (std::size_t o = 0; o < part.bands.size(); ++o) {
    const int count = static_cast<int>(part.bands[o].size());
    const int k = scheme.band(o);
    if (count < row.bounds.lower[o] || count > row.bounds.upper[o]) {
      const int property = k == scheme.k_minus() ? 3 : 2;
      std::ostringstream msg;
      msg << "property (" << property << "): row " << i << " band " << k << " holds " << count
          << " deviations, allowed [" << row.bounds.lower[o] << ", " << row.bounds.upper[o] << "]";
      check.violation = ScenarioViolation{property, i, k, std::nullopt, msg.str()};
      check.partition.push_back(std::move(part));
      return check;
    }
  }
  check.partition.push_back(std::move(part));
  return check;
}

ScenarioCheck validate_scenario(const NominalProblem& prob, const BandScheme& scheme,
                                const Scenario& s) {
  if (s.dev.size() != prob.num_rows()) {
    throw std::invalid_argument("scenario has " + std::to_string(s.dev.size()) +
                                " rows, problem has " + std::to_string(prob.num_rows()));
  }
  ScenarioCheck result;
  for (std::size_t i = 0; i < prob.num_rows(); ++i) {
    ScenarioCheck row = validate_row(prob, scheme, i, s.dev[i]);
    if (!row.feasible()) {
      row.partition.clear();
      return row;
    }
    result.partition.push_back(std::move(row.partition.front()));
  }
  return result;
}

bool dominates(const Scenario& s, const Scenario& other) {
  if (s.dev.size() != other.dev.size()) throw std::invalid_argument("scenario dimension mismatch");
  for (std::size_t i = 0; i < s.dev.size(); ++i) {
    if (s.dev[i].size() != other.dev[i].size()) {
      throw std::invalid_argument("scenario dimension mismatch");
    }
    for (std::size_t j = 0; j < s.dev[i].size(); ++j) {
      if (s.dev[i][j] < other.dev[i][j]) return false;
    }
  }
  return true;
}

Scenario canonicalize_scenario(const NominalProblem& prob, const BandScheme& scheme,
                               const Scenario& s) {
  if (s.dev.size() != prob.num_rows()) {
    throw std::invalid_argument("scenario has " + std::to_string(s.dev.size()) +
                                " rows, problem has " + std::to_string(prob.num_rows()));
  }
  Scenario out = s;
  for (std::size_t i = 0; i < prob.num_rows(); ++i) {
    const RowUncertainty row = row_uncertainty(prob, scheme, i);
    const ScenarioCheck check = validate_row(prob, scheme, i, s.dev[i]);
    // Over-full bands get repaired below; a range violation cannot be.
    if (check.partition.empty()) {
      throw std::invalid_argument("cannot canonicalize an infeasible scenario: " +
                                  check.violation->message);
    }
    if (row.certain()) continue;
    std::vector<std::vector<std::size_t>> members = check.partition.front().bands;
    for (std::size_t o = 0; o < members.size(); ++o) {
      for (std::size_t j : members[o]) out.dev[i][j] = scheme.threshold(i, j, scheme.band(o));
    }
    const auto& theta = row.profile.theta;
    while (true) {
      std::optional<std::size_t> under;
      for (std::size_t o = members.size(); o-- > 0;) {
        if (members[o].size() < static_cast<std::size_t>(theta[o])) {
          under = o;
          break;
        }
      }
      if (!under) break;
      std::optional<std::size_t> over;
      for (std::size_t o = 0; o < *under; ++o) {
        if (members[o].size() > static_cast<std::size_t>(theta[o])) {
          over = o;
          break;
        }
      }
      if (!over) break;
      auto& from = members[*over];
      const std::size_t j = from.front();  // members are kept sorted
      from.erase(from.begin());
      auto& to = members[*under];
      to.insert(std::lower_bound(to.begin(), to.end(), j), j);
      out.dev[i][j] = scheme.threshold(i, j, scheme.band(*under));
    }
  }
  const ScenarioCheck done = validate_scenario(prob, scheme, out);
  if (!done.feasible()) {
    throw std::invalid_argument("cannot canonicalize an infeasible scenario: " +
                                done.violation->message);
  }
  return out;
}

}  // namespace multiband
