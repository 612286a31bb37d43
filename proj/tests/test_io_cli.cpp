#include <gtest/gtest.h>

#include <string>

#include "multiband/flowsep.hpp"
#include "multiband/generator.hpp"
#include "multiband/io.hpp"
#include "multiband/reports.hpp"
#include "support.hpp"

using namespace multiband;
using namespace multiband::testing;
using io::json;

namespace {

std::string data(const std::string& name) { return std::string(MBAND_TEST_DATA) + "/" + name; }

}  // namespace

TEST(Json, RoundTrip) {
  const io::Instance inst = io::load_instance(data("fixture.json"));
  EXPECT_EQ(inst.problem.num_vars(), 3U);
  EXPECT_EQ(inst.problem.num_rows(), 4U);
  EXPECT_EQ(*inst.scheme.thresholds(0, 1), (std::vector<double>{0, 2, 5}));
  EXPECT_EQ(inst.scheme.thresholds(1, 0), nullptr);
  const json again = io::to_json(io::parse_instance(io::to_json(inst)));
  EXPECT_EQ(again, io::to_json(inst));
}

TEST(Json, Numbers) {
  EXPECT_EQ(io::number(3.0).dump(), "3");
  EXPECT_EQ(io::number(-0.0).dump(), "0");
  EXPECT_EQ(io::number(2.5).dump(), "2.5");
}

TEST(Json, ParseErrors) {
  EXPECT_THROW(io::load_instance(data("malformed.json")), io::ParseError);
  EXPECT_THROW(io::parse_instance_text(R"({"sense": "max"})"), io::ParseError);
  // Well-formed JSON that breaks an instance rule is not a parse error.
  EXPECT_THROW(io::parse_instance_text(R"({"sense":"max","n":1,"m":1,"c":[1],"A":[[1]],"b":[1],
    "bands":{"K_minus":0,"K_plus":1,"l":{},"u":{},"dev":[{"i":0,"j":0,"d":{"0":0,"1":1}}]}})"),
               InvalidInstance);
}

TEST(Json, MinSenseRestoresSign) {
  const io::Instance inst = io::load_instance(data("fixture_min.json"));
  EXPECT_EQ(inst.problem.sense, Sense::kMinimize);
  EXPECT_EQ(inst.problem.c, (std::vector<double>{1, 1, 1}));
  const auto rep = reports::solve(inst, reports::Method::kCompact);
  EXPECT_NEAR(rep.lines.back()["value"].get<double>(), -8.0 / 3.0, 1e-9);
}

TEST(Reports, ValidateFixture) {
  const auto rep = reports::validate(io::load_instance(data("fixture.json")));
  EXPECT_EQ(rep.exit_code, reports::kOk);
  EXPECT_EQ(rep.lines[0]["profile"]["theta"], json::parse(R"({"0":0,"1":2,"2":1})"));
}

TEST(Reports, ValidateNamesBrokenRules) {
  const auto u0 = reports::validate(io::load_instance(data("bad_u0.json")));
  EXPECT_EQ(u0.exit_code, reports::kInvalidInstance);
  EXPECT_NE(u0.lines[0]["issues"][0].get<std::string>().find("u_0"), std::string::npos);
  EXPECT_EQ(reports::validate(io::load_instance(data("bad_thresholds.json"))).exit_code,
            reports::kInvalidInstance);
}

TEST(Reports, MethodsAgreeOnFixture) {
  const io::Instance inst = io::load_instance(data("fixture.json"));
  const auto compact = reports::solve(inst, reports::Method::kCompact);
  const auto cuts = reports::solve(inst, reports::Method::kCuttingPlane);
  EXPECT_NEAR(compact.lines.back()["value"].get<double>(), cuts.lines.back()["value"].get<double>(), 1e-6);
}

TEST(Reports, StatusExitCodes) {
  EXPECT_EQ(reports::solve(io::load_instance(data("infeasible.json")), reports::Method::kCompact).exit_code,
            reports::kInfeasible);
  EXPECT_EQ(reports::solve(io::load_instance(data("infeasible.json")), reports::Method::kCuttingPlane).exit_code,
            reports::kInfeasible);
  EXPECT_EQ(reports::solve(io::load_instance(data("unbounded.json")), reports::Method::kCuttingPlane).exit_code,
            reports::kUnbounded);
  EXPECT_EQ(reports::solve(io::load_instance(data("unbounded.json")), reports::Method::kCompact).exit_code,
            reports::kUnbounded);
}

TEST(Reports, CheckAndSeparate) {
  const io::Instance inst = io::load_instance(data("fixture.json"));
  const std::vector<double> ones{1, 1, 1};
  const auto chk = reports::check(inst, ones, true);
  EXPECT_FALSE(chk.lines[0]["robust"].get<bool>());
  EXPECT_EQ(chk.lines[0]["rows"][0]["deviation"], 10);
  EXPECT_EQ(chk.lines[0]["rows"][0]["exact_deviation"], 10);
  const auto sep = reports::separate(inst, ones);
  ASSERT_EQ(sep.lines.size(), 1U);
  EXPECT_EQ(sep.lines[0]["coeffs"], json::parse("[5,6,2]"));
}

TEST(Reports, BinarySolveFormats) {
  const auto path = io::parse_binary_instance(json::parse(R"({"nodes":2,"source":0,"target":1,
    "edges":[{"u":0,"v":1,"c":1,"d":{"1":5}},{"u":0,"v":1,"c":2,"d":{"1":0.5}}],
    "bands":{"K_plus":1,"l":{"0":0,"1":0},"u":{"1":1}}})"),
                                              io::OracleKind::kShortestPath);
  const auto rep = reports::binary_solve(path, io::OracleKind::kShortestPath, false);
  EXPECT_EQ(rep.lines[0]["value"], 2.5);
  EXPECT_EQ(rep.lines[0]["x"], json::parse("[0,1]"));
}

TEST(Reports, BoundDefaultsToRobustOptimum) {
  const io::Instance inst = io::load_instance(data("fixture.json"));
  reports::BoundOptions opt;
  opt.row = 0;
  const auto rep = reports::bound(inst, {}, opt);
  ASSERT_EQ(rep.lines.size(), 1U);
  const double raw = rep.lines[0]["bound_raw"].get<double>();
  EXPECT_GE(raw, 0.0);
  EXPECT_LE(rep.lines[0]["bound_clamped"].get<double>(), 1.0);
  EXPECT_NEAR(rep.lines[0]["confidence"].get<double>(), 0.95, 1e-12);
}

TEST(Generator, DeterministicAndValid) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    GenOptions opt;
    opt.n = 2 + seed % 4;
    opt.m = 1 + seed % 3;
    opt.bands = 1 + static_cast<int>(seed % 3);
    opt.negative_bands = static_cast<int>(seed % 2);
    opt.integer = seed % 2 == 0;
    opt.seed = seed;
    const io::Instance a = generate(opt);
    ASSERT_EQ(io::to_json(a).dump(), io::to_json(generate(opt)).dump());
    ASSERT_TRUE(validate_instance(a.problem, a.scheme).empty()) << "seed " << seed;
    // x = 1 is robust feasible by construction.
    const std::vector<double> ones(opt.n, 1.0);
    for (const auto& rc : check_robust(a.problem, a.scheme, ones)) ASSERT_TRUE(rc.robust);
    const auto rep = reports::solve(a, reports::Method::kCompact);
    ASSERT_EQ(rep.exit_code, reports::kOk) << "seed " << seed;
  }
  GenOptions small;
  small.n = 3;
  small.m = 1;
  small.seed = 7;
  const io::Instance g = generate(small);
  EXPECT_EQ(reports::validate(g).exit_code, reports::kOk);
}

TEST(Generator, BudgetShape) {
  GenOptions opt;
  opt.n = 5;
  opt.bands = 1;
  const io::Instance g = generate(opt);
  EXPECT_EQ(g.scheme.k_minus(), 0);
  EXPECT_EQ(g.scheme.k_plus(), 1);
}

TEST(Reports, RenderIsDeterministic) {
  const io::Instance inst = io::load_instance(data("fixture.json"));
  const std::vector<double> x{0.5, 0.5, 0.5};
  EXPECT_EQ(reports::render(reports::solve(inst, reports::Method::kCuttingPlane, true)),
            reports::render(reports::solve(inst, reports::Method::kCuttingPlane, false)));
  EXPECT_EQ(reports::render(reports::bound(inst, x, {})), reports::render(reports::bound(inst, x, {})));
}
