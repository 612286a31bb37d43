#pragma once

// JSON instance format:
// { "sense": "max"|"min", "n", "m", "c", "A", "b", "int_vars", "free_vars",
//   "bands": { "K_minus", "K_plus", "l": {"k": int}, "u": {"k": int},
//              "dev": [ {"i", "j", "d": {"k": number}} ],
//              "row_bounds": [ {"i", "l": {...}, "u": {...}} ] },
//   "samples": [ {"i", "j", "values": [...], "beta": optional} ] }

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "multiband/model.hpp"
#include "multiband/probbound.hpp"
#include "multiband/robust01.hpp"

namespace multiband::io {

using nlohmann::json;

/// Malformed or structurally wrong JSON (as opposed to InvalidInstance).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Instance {
  NominalProblem problem;  // min-form objectives are stored negated
  BandScheme scheme;
  probbound::SampleSet samples;
};

/// Throws ParseError on structural problems, InvalidInstance on dimension
/// mismatches. Model invariants are left to validate_instance.
Instance parse_instance(const json& doc);
Instance parse_instance_text(const std::string& text);
Instance load_instance(const std::string& path);

/// Inverse of parse_instance; integral numbers print without a fraction.
json to_json(const Instance& inst);
json to_json(const NominalProblem& prob, const BandScheme& scheme);

/// Integral doubles become JSON integers; -0 becomes 0.
json number(double v);
json numbers(const std::vector<double>& v);

/// Objective value in the instance's own sense.
double reported_value(const NominalProblem& prob, double internal_value);

// Cost-uncertain binary programs.
// Graph: {"nodes", "edges": [{"u","v","c","d": {"k": number}}], "source", "target", "bands"}
// Explicit: {"c": [...], "d": [{"k": number}, ...], "points": [[0/1...]], "bands"}
// "bands": {"K_plus", "l": {...}, "u": {...}}; u_0 defaults to n.
enum class OracleKind { kShortestPath, kSpanningTree, kExplicit };

struct BinaryInstance {
  robust01::CombinatorialInstance problem;
  Graph graph;
  std::size_t source = 0;
  std::size_t target = 0;
  std::vector<std::vector<double>> points;
};

BinaryInstance parse_binary_instance(const json& doc, OracleKind kind);

}  // namespace multiband::io
