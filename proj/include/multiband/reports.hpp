#pragma once

// Machine-readable results of every command-line operation. Each report is a
// list of JSON documents printed one per line, plus the process exit code.

#include <optional>
#include <string>
#include <vector>

#include "multiband/io.hpp"
#include "multiband/probbound.hpp"

namespace multiband::reports {

using io::json;

enum ExitCode : int {
  kOk = 0,
  kInvalidInstance = 1,
  kParseError = 2,
  kInfeasible = 3,
  kUnbounded = 4,
  kInternalLimit = 5,
};

struct Report {
  int exit_code = kOk;
  std::vector<json> lines;
};

std::string render(const Report& report);

Report validate(const io::Instance& inst);

enum class Method { kCompact, kCuttingPlane };
Report solve(const io::Instance& inst, Method method, bool parallel = true);

Report check(const io::Instance& inst, const std::vector<double>& x, bool exact, bool parallel = true);
Report separate(const io::Instance& inst, const std::vector<double>& x, bool parallel = true);
Report export_compact(const io::Instance& inst);

Report binary_solve(const io::BinaryInstance& inst, io::OracleKind kind, bool prune,
                    bool parallel = true);

struct BoundOptions {
  double beta = 0.05;
  probbound::SearchOptions search;
  std::optional<std::size_t> row;  // all rows when empty
};

/// Bounds at x, or at the robust optimum (compact method) when x is empty.
Report bound(const io::Instance& inst, const std::vector<double>& x, const BoundOptions& options);

}  // namespace multiband::reports
