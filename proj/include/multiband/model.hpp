#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace multiband {

/// Comparison tolerance for coefficients and deviations.
inline constexpr double kTolerance = 1e-9;

using Matrix = std::vector<std::vector<double>>;

/// Raised when an instance or band scheme breaks one of its invariants.
class InvalidInstance : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Sense { kMaximize, kMinimize };

/// max c'x  s.t.  A x <= b,  x >= 0 (or free where flagged),  x_j integer for
/// flagged j. Minimization instances are stored negated; `sense` remembers the
/// original direction so reported values can be restored.
struct NominalProblem {
  Sense sense = Sense::kMaximize;
  std::vector<double> c;
  Matrix a;
  std::vector<double> b;
  std::vector<bool> integer;  // length n
  std::vector<bool> free;     // length n; free variables are sign-unrestricted

  std::size_t num_vars() const { return c.size(); }
  std::size_t num_rows() const { return b.size(); }
  bool is_integer(std::size_t j) const { return j < integer.size() && integer[j]; }
  bool is_free(std::size_t j) const { return j < free.size() && free[j]; }

  /// Throws InvalidInstance on dimension mismatch.
  void check_dimensions() const;
};

/// Build a problem, filling the integrality and free masks with `false`.
NominalProblem make_problem(std::vector<double> c, Matrix a, std::vector<double> b,
                            std::vector<std::size_t> int_vars = {});

/// Lower/upper cardinality bounds l_k, u_k indexed by band offset k - k_minus.
struct BandBounds {
  std::vector<int> lower;
  std::vector<int> upper;
};

/// Multi-band uncertainty set. Band indices run over [k_minus, k_plus] with
/// band 0 the nominal band. Only uncertain coefficients have a threshold
/// vector; every other coefficient is certain.
class BandScheme {
 public:
  BandScheme() = default;
  BandScheme(int k_minus, int k_plus, BandBounds shared);

  int k_minus() const { return k_minus_; }
  int k_plus() const { return k_plus_; }
  std::size_t num_bands() const { return static_cast<std::size_t>(k_plus_ - k_minus_ + 1); }
  std::size_t offset(int k) const { return static_cast<std::size_t>(k - k_minus_); }
  int band(std::size_t offset) const { return static_cast<int>(offset) + k_minus_; }

  const BandBounds& shared_bounds() const { return shared_; }
  BandBounds& shared_bounds() { return shared_; }
  /// Per-row bounds, falling back to the shared ones.
  const BandBounds& bounds(std::size_t row) const;
  void set_row_bounds(std::size_t row, BandBounds bounds);
  const std::map<std::size_t, BandBounds>& row_overrides() const { return overrides_; }

  /// Thresholds d_ij^k for all k in K (band 0 entry must be 0).
  void set_thresholds(std::size_t i, std::size_t j, std::vector<double> thresholds);
  /// Convenience: thresholds keyed by band index, band 0 implicit.
  void set_thresholds(std::size_t i, std::size_t j, const std::map<int, double>& by_band);
  const std::vector<double>* thresholds(std::size_t i, std::size_t j) const;
  bool is_uncertain(std::size_t i, std::size_t j) const { return thresholds(i, j) != nullptr; }
  double threshold(std::size_t i, std::size_t j, int k) const;
  const std::map<std::pair<std::size_t, std::size_t>, std::vector<double>>& all_thresholds() const {
    return thresholds_;
  }

 private:
  int k_minus_ = 0;
  int k_plus_ = 0;
  BandBounds shared_;
  std::map<std::size_t, BandBounds> overrides_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<double>> thresholds_;
};

/// Per-band deviation counts of a worst-case scenario.
struct Profile {
  int k_minus = 0;
  int p = 0;
  std::vector<int> theta;  // indexed by band offset

  int theta_at(int k) const { return theta.at(static_cast<std::size_t>(k - k_minus)); }
};

/// Profile for `n` uncertain coefficients under the given bounds.
Profile compute_profile(const BandBounds& bounds, int k_minus, int n);
Profile compute_profile(const BandScheme& scheme, int n);

/// Everything about one constraint's uncertainty: the uncertain columns, their
/// thresholds, the row's effective bounds and its profile.
struct RowUncertainty {
  std::size_t row = 0;
  int k_minus = 0;
  std::vector<std::size_t> columns;
  Matrix thresholds;  // [uncertain column idx][band offset]
  BandBounds bounds;  // upper bounds clamped to columns.size()
  Profile profile;

  std::size_t size() const { return columns.size(); }
  std::size_t num_bands() const { return profile.theta.size(); }
  bool certain() const { return columns.empty(); }
};

RowUncertainty row_uncertainty(const NominalProblem& prob, const BandScheme& scheme, std::size_t i);

/// Human-readable list of every violated invariant; empty means valid.
std::vector<std::string> validate_instance(const NominalProblem& prob, const BandScheme& scheme);
/// Throws InvalidInstance carrying the first violated invariant.
void require_valid(const NominalProblem& prob, const BandScheme& scheme);

/// A concrete deviation matrix d^S (rows x columns).
struct Scenario {
  Matrix dev;
};

Scenario zero_scenario(const NominalProblem& prob);

/// Band partition of one row: uncertain columns by band, plus the certain
/// columns (always at deviation 0, not counted against band bounds).
struct RowPartition {
  std::vector<std::vector<std::size_t>> bands;  // indexed by band offset
  std::vector<std::size_t> certain;
};

struct ScenarioViolation {
  int property = 0;  // 1: range, 2: band count, 3: band K^- count
  std::size_t row = 0;
  std::optional<int> band;
  std::optional<std::size_t> column;
  std::string message;
};

struct ScenarioCheck {
  std::vector<RowPartition> partition;  // filled unless a range check failed
  std::optional<ScenarioViolation> violation;

  bool feasible() const { return !violation.has_value(); }
};

/// Band of a deviation value: smallest k with value <= d^k + tol. Returns
/// nullopt when value lies outside [d^{K^-}, d^{K^+}].
std::optional<std::size_t> band_of(const std::vector<double>& thresholds, double value);

/// Check one row of deviations against range and cardinality properties.
ScenarioCheck validate_row(const NominalProblem& prob, const BandScheme& scheme, std::size_t i,
                           const std::vector<double>& row_dev);
ScenarioCheck validate_scenario(const NominalProblem& prob, const BandScheme& scheme,
                                const Scenario& s);

bool dominates(const Scenario& s, const Scenario& other);

/// Move every deviation to its band endpoint and rebalance band counts to the
/// profile, producing a feasible scenario that dominates `s`. Over-full bands
/// in `s` are repaired upward; throws when that is impossible or a deviation is
/// out of range.
Scenario canonicalize_scenario(const NominalProblem& prob, const BandScheme& scheme,
                               const Scenario& s);

}  // namespace multiband
