#include "multiband/generator.hpp"

#include <random>
#include <stdexcept>

#include "multiband/flowsep.hpp"

namespace multiband {

namespace {

// Raw engine output keeps the stream identical across standard libraries.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : eng_(seed) {}
  int range(int lo, int hi) { return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  bool chance(double p) { return static_cast<double>(eng_() >> 11) * 0x1.0p-53 < p; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace

io::Instance generate(const GenOptions& o) {
  if (o.n == 0) throw std::invalid_argument("gen needs n >= 1");
  if (o.bands < 0 || o.negative_bands < 0) throw std::invalid_argument("band counts must be nonnegative");
  if (o.negative_bands > 2) throw std::invalid_argument("at most 2 negative bands keep coefficients positive");
  Draw rnd(o.seed);
  const int n = static_cast<int>(o.n);
  const int km = -o.negative_bands;
  const int kp = o.bands;
  const std::size_t K = static_cast<std::size_t>(kp - km + 1);

  io::Instance inst;
  NominalProblem& p = inst.problem;
  p.c.resize(o.n);
  for (double& c : p.c) c = rnd.range(1, 9);
  p.a.assign(o.m, std::vector<double>(o.n));
  for (auto& row : p.a) {
    for (double& v : row) v = rnd.range(5, 13);
  }
  p.b.assign(o.m, 0.0);
  p.integer.assign(o.n, o.integer || o.binary);
  p.free.assign(o.n, false);

  // Bounds: l_k in {0, 1} while the budget lasts, u_k in [max(l_k,1), n].
  BandBounds bounds;
  bounds.lower.assign(K, 0);
  bounds.upper.assign(K, n);
  int budget = n;
  for (std::size_t off = 0; off < K; ++off) {
    const int k = static_cast<int>(off) + km;
    if (k == 0) continue;
    const int l = budget > 0 && rnd.chance(0.3) ? 1 : 0;
    budget -= l;
    bounds.lower[off] = l;
    bounds.upper[off] = rnd.range(std::max(l, 1), n);
  }
  inst.scheme = BandScheme(km, kp, bounds);

  const int sum_lower = n - budget;
  for (std::size_t i = 0; i < o.m; ++i) {
    std::vector<bool> uncertain(o.n, false);
    int count = 0;
    for (std::size_t j = 0; j < o.n; ++j) {
      uncertain[j] = K > 1 && rnd.chance(o.uncertain_share);
      count += uncertain[j] ? 1 : 0;
    }
    // An uncertain row must be able to place its lower bounds.
    for (std::size_t j = 0; count > 0 && count < sum_lower && j < o.n; ++j) {
      if (!uncertain[j]) {
        uncertain[j] = true;
        ++count;
      }
    }
    for (std::size_t j = 0; j < o.n; ++j) {
      if (!uncertain[j]) continue;
      std::vector<double> d(K, 0.0);
      for (int k = 1; k <= kp; ++k) d[inst.scheme.offset(k)] = d[inst.scheme.offset(k - 1)] + rnd.range(1, 3);
      for (int k = -1; k >= km; --k) d[inst.scheme.offset(k)] = d[inst.scheme.offset(k + 1)] - rnd.range(1, 2);
      inst.scheme.set_thresholds(i, j, std::move(d));
    }
  }

  const std::vector<double> ones(o.n, 1.0);
  for (std::size_t i = 0; i < o.m; ++i) {
    p.b[i] = 1e9;  // placeholder so check_row sees a well-formed row
    const RowCheck rc = check_row(p, inst.scheme, ones, i);
    p.b[i] = rc.lhs + rnd.range(0, 4);
  }
  if (o.binary) {
    for (std::size_t j = 0; j < o.n; ++j) {
      std::vector<double> row(o.n, 0.0);
      row[j] = 1.0;
      p.a.push_back(std::move(row));
      p.b.push_back(1.0);
    }
  }
  return inst;
}

}  // namespace multiband
