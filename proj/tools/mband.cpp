// mband: command-line front end for multi-band robust optimization.
//
//   mband validate inst.json
//   mband solve inst.json --method compact|cutting-plane
//   mband gen --n 5 --m 2 --bands 2 --seed 7
//   mband check inst.json --x '[1,0,2]' [--exact]
//   mband separate inst.json --x '[1,0,2]'
//   mband binary-solve graph.json --oracle sp|mst|explicit [--prune]
//   mband bound inst.json [--x ...] --beta 0.05 --tmax 10 --grid 64
//   mband export-compact inst.json
//
// JSON goes to stdout, diagnostics to stderr.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "multiband/generator.hpp"
#include "multiband/io.hpp"
#include "multiband/oracle.hpp"
#include "multiband/reports.hpp"

using namespace multiband;
using reports::Report;

namespace {

std::vector<double> parse_x(const std::string& text) {
  if (text.empty()) return {};
  io::json doc;
  try {
    doc = io::json::parse(text);
  } catch (const io::json::parse_error& e) {
    throw io::ParseError(std::string("--x: ") + e.what());
  }
  if (!doc.is_array()) throw io::ParseError("--x must be a JSON array");
  std::vector<double> x;
  for (const auto& v : doc) {
    if (!v.is_number()) throw io::ParseError("--x entries must be numbers");
    x.push_back(v.get<double>());
  }
  return x;
}

io::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io::ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return io::json::parse(ss.str());
  } catch (const io::json::parse_error& e) {
    throw io::ParseError(e.what());
  }
}

int emit(const Report& rep) {
  std::cout << reports::render(rep);
  return rep.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-band robust optimization"};
  app.require_subcommand(1);
  bool serial = false;
  app.add_flag("--serial", serial, "disable OpenMP kernels");

  std::string path;
  auto* validate = app.add_subcommand("validate", "check model invariants and print profiles");
  validate->add_option("instance", path)->required();

  std::string method = "compact";
  auto* solve = app.add_subcommand("solve", "robust optimum");
  solve->add_option("instance", path)->required();
  solve->add_option("--method", method)->check(CLI::IsMember({"compact", "cutting-plane"}));

  GenOptions gen_opt;
  auto* gen = app.add_subcommand("gen", "random instance");
  gen->add_option("--n", gen_opt.n);
  gen->add_option("--m", gen_opt.m);
  gen->add_option("--bands", gen_opt.bands, "positive bands");
  gen->add_option("--negative-bands", gen_opt.negative_bands);
  gen->add_flag("--integer", gen_opt.integer);
  gen->add_flag("--binary", gen_opt.binary);
  gen->add_option("--seed", gen_opt.seed);

  std::string x_text;
  bool exact = false;
  auto* check = app.add_subcommand("check", "robustness of a point, row by row");
  check->add_option("instance", path)->required();
  check->add_option("--x", x_text)->required();
  check->add_flag("--exact", exact, "also enumerate scenarios (small rows only)");

  auto* sep = app.add_subcommand("separate", "robustness cuts violated at a point");
  sep->add_option("instance", path)->required();
  sep->add_option("--x", x_text)->required();

  std::string oracle_name = "sp";
  bool prune = false;
  auto* binary = app.add_subcommand("binary-solve", "cost-uncertain 0/1 program");
  binary->add_option("instance", path)->required();
  binary->add_option("--oracle", oracle_name)->check(CLI::IsMember({"sp", "mst", "explicit"}));
  binary->add_flag("--prune", prune);

  reports::BoundOptions bound_opt;
  bool unscaled = false;
  std::size_t row = 0;
  auto* bound = app.add_subcommand("bound", "sample-based violation probability bound");
  bound->add_option("instance", path)->required();
  bound->add_option("--x", x_text, "default: robust optimum");
  bound->add_option("--beta", bound_opt.beta)->check(CLI::Range(1e-12, 1.0 - 1e-12));
  bound->add_option("--tmax", bound_opt.search.t_max)->check(CLI::PositiveNumber);
  bound->add_option("--grid", bound_opt.search.grid)->check(CLI::PositiveNumber);
  auto* row_opt = bound->add_option("--row", row);
  bound->add_flag("--hoeffding", unscaled, "radius (d+ + d-) sqrt(ln(1/beta)/2W) without the x factor");

  auto* exp = app.add_subcommand("export-compact", "write the compact robust counterpart");
  exp->add_option("instance", path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : reports::kParseError;
  }

  const bool parallel = !serial;
  try {
    if (*gen) {
      const io::Instance inst = generate(gen_opt);
      std::cout << io::to_json(inst).dump() << '\n';
      return reports::kOk;
    }
    if (*binary) {
      const io::OracleKind kind = oracle_name == "sp"    ? io::OracleKind::kShortestPath
                                  : oracle_name == "mst" ? io::OracleKind::kSpanningTree
                                                         : io::OracleKind::kExplicit;
      return emit(reports::binary_solve(io::parse_binary_instance(load_json(path), kind), kind, prune,
                                        parallel));
    }
    const io::Instance inst = io::load_instance(path);
    if (*validate) {
      const Report rep = reports::validate(inst);
      for (const auto& issue : rep.lines.front()["issues"]) {
        std::cerr << "invalid: " << issue.get<std::string>() << '\n';
      }
      return emit(rep);
    }
    if (*solve) {
      return emit(reports::solve(inst, method == "compact" ? reports::Method::kCompact
                                                          : reports::Method::kCuttingPlane,
                                 parallel));
    }
    if (*check) return emit(reports::check(inst, parse_x(x_text), exact, parallel));
    if (*sep) return emit(reports::separate(inst, parse_x(x_text), parallel));
    if (*bound) {
      if (*row_opt) bound_opt.row = row;
      if (unscaled) bound_opt.search.radius = probbound::MeanRadius::kUnscaled;
      return emit(reports::bound(inst, parse_x(x_text), bound_opt));
    }
    if (*exp) return emit(reports::export_compact(inst));
  } catch (const io::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return reports::kParseError;
  } catch (const InvalidInstance& e) {
    std::cerr << "invalid instance: " << e.what() << '\n';
    return reports::kInvalidInstance;
  } catch (const oracle::SizeGuardExceeded& e) {
    std::cerr << "limit: " << e.what() << '\n';
    return reports::kInternalLimit;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return reports::kInvalidInstance;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return reports::kInternalLimit;
  }
  return reports::kOk;
}
