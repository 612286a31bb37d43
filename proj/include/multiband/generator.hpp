#pragma once

// Seeded random instances with integer data. Every coefficient is positive in
// every scenario, so the robust problem is bounded, and b is chosen so that
// x = 1 is robust feasible.

#include <cstddef>
#include <cstdint>

#include "multiband/io.hpp"

namespace multiband {

struct GenOptions {
  std::size_t n = 3;
  std::size_t m = 1;
  int bands = 1;           // positive bands K+
  int negative_bands = 0;  // |K-|
  bool integer = false;    // all variables integer
  bool binary = false;     // integer plus x_j <= 1 rows
  double uncertain_share = 0.75;
  std::uint64_t seed = 1;
};

io::Instance generate(const GenOptions& options);

}  // namespace multiband
