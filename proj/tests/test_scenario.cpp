#include <gtest/gtest.h>

#include <cstdlib>

#include "qgroupoid/runner.hpp"

using namespace qgroupoid;

namespace {

const char* kMoyal = R"(name = moyal
[base]
coordinates = [x, p]
[instance]
kind = moyal
pi = [[0, 1], [-1, 0]]
)";

const char* kBroken = R"(name = broken
expected = %s
[base]
coordinates = [x, p]
[instance]
kind = explicit
term = 1 | x | [1, 0] | [1, 0]
[checks]
run = twistor
)";

std::string broken(const char* expected) {
  char buf[512];
  std::snprintf(buf, sizeof buf, kBroken, expected);
  return buf;
}

std::vector<ParseError> errors_of(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const scenario_error& e) {
    return e.errors();
  }
  return {};
}

bool mentions(const std::vector<ParseError>& es, const std::string& what, std::size_t line) {
  for (const auto& e : es)
    if (e.message.find(what) != std::string::npos && e.line == line) return true;
  return false;
}

}  // namespace

TEST(Expr, Examples) {
  Vars v = make_vars({"x", "y"});
  Poly x = Poly::variable(v, 0), y = Poly::variable(v, 1);
  EXPECT_EQ(parse_poly("(x + 1)^2 - 2*x", v), x * x + Poly::one(v));
  EXPECT_EQ(parse_poly("-x*y/2", v), make_rational(-1, 2) * x * y);
  EXPECT_EQ(parse_poly("3 - -2", v), Poly::constant(v, 5));
  EXPECT_EQ(parse_ratfun("1/x + 1/y", v), RatFun(x + y, x * y));
  EXPECT_EQ(parse_rational("-3/6"), make_rational(-1, 2));
}

TEST(Expr, ErrorsCarryColumns) {
  Vars v = make_vars({"x"});
  try {
    parse_poly("x + q", v);
    FAIL();
  } catch (const expr_error& e) {
    EXPECT_EQ(e.column(), 5u);
  }
  EXPECT_THROW(parse_poly("1/x", v), expr_error);
  EXPECT_THROW(parse_ratfun("x/(x - x)", v), expr_error);
  EXPECT_THROW(parse_ratfun("(x + 1", v), expr_error);
  EXPECT_THROW(parse_ratfun("x^y", v), expr_error);
  EXPECT_THROW(parse_rational_matrix("[[1, 2], [3, 4]"), expr_error);
}

TEST(ParseScenario, MinimalMoyalDefaults) {
  Scenario sc = parse_scenario(kMoyal);
  EXPECT_EQ(sc.order, 3u);
  EXPECT_TRUE(sc.expect_pass);
  EXPECT_EQ(sc.kind, "moyal");
  EXPECT_EQ(sc.pi, (RatMatrix{{0, 1}, {-1, 0}}));
  EXPECT_EQ(sc.max_degree, 2u);
  EXPECT_EQ(sc.checks.front(), "twistor");
  EXPECT_EQ(sc.checks.back(), "eq11");
  EXPECT_EQ(sc.checks.size(), 9u);
}

TEST(ParseScenario, UnknownCheckIsNamed) {
  auto es = errors_of(std::string(kMoyal) + "[checks]\nrun = twistor, frobnicate\n");
  ASSERT_EQ(es.size(), 1u);
  EXPECT_TRUE(mentions(es, "frobnicate", 8));
}

TEST(ParseScenario, CheckFromOtherFamilyRejected) {
  auto es = errors_of(std::string(kMoyal) + "[checks]\nrun = cdybe\n");
  EXPECT_TRUE(mentions(es, "does not apply", 8));
}

TEST(ParseScenario, NonAntisymmetricPiRejected) {
  std::string t = kMoyal;
  t.replace(t.find("[-1, 0]"), 7, "[1, 0]");
  auto es = errors_of(t);
  EXPECT_TRUE(mentions(es, "not antisymmetric", 6));
}

TEST(ParseScenario, MalformedMatrixRejected) {
  std::string t = kMoyal;
  t.replace(t.find("[[0, 1], [-1, 0]]"), 17, "[[0, 1], [-1, 0, 2]]");
  EXPECT_TRUE(mentions(errors_of(t), "row 2", 6));
  t = kMoyal;
  t.replace(t.find("[[0, 1], [-1, 0]]"), 17, "[[0, 1], [-1, zero]]");
  EXPECT_TRUE(mentions(errors_of(t), "unknown variable", 6));
}

TEST(ParseScenario, CollectsEveryError) {
  auto es = errors_of("expected = maybe\norder = 0\n[base]\ncoordinates = [x, x]\n[instance]\nkind = moyal\ncolour = red\n");
  EXPECT_TRUE(mentions(es, "name", 0));
  EXPECT_TRUE(mentions(es, "pass or fail", 1));
  EXPECT_TRUE(mentions(es, "order", 2));
  EXPECT_TRUE(mentions(es, "duplicate coordinate", 4));
  EXPECT_TRUE(mentions(es, "colour", 7));
}

TEST(ParseScenario, MultiLineMatrixKeepsFirstLine) {
  Scenario sc = parse_scenario("name = m\n[base]\ncoordinates = [x, p]\n[instance]\nkind = moyal\npi = [[0, 1],\n  [-1, 0]]\n");
  EXPECT_EQ(sc.pi, (RatMatrix{{0, 1}, {-1, 0}}));
  auto es = errors_of("name = m\n[base]\ncoordinates = [x, p]\n[instance]\nkind = moyal\npi = [[0, 1],\n  [1, 0]]\n");
  EXPECT_TRUE(mentions(es, "not antisymmetric", 6));
}

TEST(ParseScenario, DynamicalFixtureBinds) {
  const std::string head = "name = d\n[instance]\nkind = dynamical-r\n[lie_algebra]\npreset = sl2\n[dynamical_r]\n";
  Scenario a = parse_scenario(head + "preset = sl2-rational\n");
  Scenario b = parse_scenario(head + "r = [[0, -1/l, 0], [1/l, 0, 0], [0, 0, 0]]\n");
  ASSERT_TRUE(a.r && b.r);
  EXPECT_EQ(a.r->r, sl2_rational_r().r);
  EXPECT_EQ(b.r->r, sl2_rational_r().r);
  EXPECT_EQ(a.field, "ratfun");
  EXPECT_EQ(a.checks, (std::vector<std::string>{"cdybe", "equivariance", "symmetric_part", "example41_lambda"}));
  EXPECT_TRUE(mentions(errors_of(head + "r = [[0, -1/m, 0], [1/m, 0, 0], [0, 0, 0]]\n"), "unknown variable", 7));
}

TEST(ParseScenario, CustomLieAlgebra) {
  Scenario sc = parse_scenario(
      "name = g\n[instance]\nkind = classical-ug\n[lie_algebra]\nbasis = [e, f, h]\n"
      "bracket = e, f -> h\nbracket = h, e -> 2*e\nbracket = h, f -> -2*f\ncartan = [h]\n");
  ASSERT_TRUE(sc.g);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(sc.g->structure(i, j), sl2().structure(i, j));
  // [a, [b, c]] + [b, [c, a]] + [c, [a, b]] = a
  auto es = errors_of("name = g\n[instance]\nkind = classical-ug\n[lie_algebra]\nbasis = [a, b, c]\n"
                      "bracket = a, b -> a\nbracket = b, c -> b\n");
  EXPECT_TRUE(mentions(es, "Jacobi", 5));
  EXPECT_TRUE(mentions(errors_of("name = g\n[instance]\nkind = classical-ug\n[lie_algebra]\nbasis = [a, b]\n"
                                 "bracket = a, b -> a*b\n"),
                       "linear combination", 6));
}

TEST(ParseScenario, FrameAndExplicit) {
  Scenario sc = parse_scenario(
      "name = f\n[base]\ncoordinates = [x, y, z]\n[instance]\nkind = commuting-frame\n"
      "frame = [[1, 0, 0], [0, z, 0]]\nc = [[0, 1], [-1, 0]]\n");
  ASSERT_EQ(sc.frame.size(), 2u);
  EXPECT_EQ(sc.frame[1][1], Poly::variable(sc.coordinates, 2));
  EXPECT_TRUE(mentions(errors_of("name = f\n[base]\ncoordinates = [x, y]\n[instance]\nkind = commuting-frame\n"
                                 "frame = [[1, 0]]\nc = [[0, 1], [-1, 0]]\n"),
                       "rows", 7));
  EXPECT_TRUE(mentions(errors_of("name = e\n[base]\ncoordinates = [x, p]\n[instance]\nkind = explicit\n"
                                 "term = 0 | 1 | [0, 0] | [0, 0]\n"),
                       "positive", 6));
}

TEST(SelectChecks, ValidatesNames) {
  Scenario sc = parse_scenario(kMoyal);
  select_checks(sc, {"eq11", "twistor"});
  EXPECT_EQ(sc.checks, (std::vector<std::string>{"eq11", "twistor"}));
  EXPECT_THROW(select_checks(sc, {"frobnicate"}), scenario_error);
  EXPECT_THROW(select_checks(sc, {"counit"}), scenario_error);
}

TEST(Run, BrokenTwistExpectations) {
  RunReport r = run_scenario(parse_scenario(broken("fail")));
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.exit_code(), 0);
  ASSERT_EQ(r.checks.size(), 1u);
  EXPECT_EQ(r.checks[0].status(), "fail");
  EXPECT_EQ(r.checks[0].report.max_residual().rfind("hbar^2*(", 0), 0u) << r.checks[0].report.max_residual();
  EXPECT_EQ(run_scenario(parse_scenario(broken("pass"))).exit_code(), 1);
}

TEST(Run, MoyalPasses) {
  Scenario sc = parse_scenario(kMoyal);
  select_checks(sc, {"twistor", "eq11", "classical_limit", "triangular_round_trip", "regularity"});
  RunReport r = run_scenario(sc);
  for (const auto& c : r.checks) EXPECT_EQ(c.status(), "pass") << c.report.name << ": " << c.report.max_residual();
  EXPECT_EQ(r.exit_code(), 0);
}

TEST(Run, CheckerExceptionsBecomeErrors) {
  // d_x and x d_y do not commute, so the twist cannot be built
  Scenario sc = parse_scenario(
      "name = f\n[base]\ncoordinates = [x, y]\n[instance]\nkind = commuting-frame\n"
      "frame = [[1, 0], [0, x]]\nc = [[0, 1], [-1, 0]]\n[checks]\nrun = twistor, eq11\n");
  RunReport r = run_scenario(sc);
  ASSERT_EQ(r.checks.size(), 2u);
  for (const auto& c : r.checks) {
    EXPECT_EQ(c.status(), "error");
    EXPECT_NE(c.report.error.find("do not commute"), std::string::npos);
  }
  EXPECT_EQ(r.exit_code(), 1);

  Scenario d = parse_scenario(
      "name = d\nexpected = fail\n[instance]\nkind = dynamical-r\n[lie_algebra]\npreset = sl2\n[dynamical_r]\n"
      "r = [[0, -1/l, 0], [2/l, 0, 0], [0, 0, 0]]\n[checks]\nrun = example41_lambda\n");
  RunReport rd = run_scenario(d);
  EXPECT_EQ(rd.checks[0].status(), "error");
  EXPECT_EQ(rd.exit_code(), 0);
}

TEST(Run, MachineReportIsDeterministic) {
  Scenario sc = parse_scenario(broken("fail"));
  select_checks(sc, {"twistor", "star_associativity", "deformed_counit", "eq11"});
  std::string a = machine_report(run_scenario(sc, 1)).dump(2);
  std::string b = machine_report(run_scenario(sc, 4)).dump(2);
  EXPECT_EQ(a, b);
  auto j = nlohmann::ordered_json::parse(a);
  EXPECT_EQ(j["verdict"], "fail");
  EXPECT_EQ(j["checks"][0]["name"], "twistor");
  EXPECT_FALSE(j.contains("timing"));
  EXPECT_TRUE(machine_report(run_scenario(sc, 1), true).contains("timing"));
}

TEST(Run, TextAndMachineAgreeOnVerdicts) {
  RunReport r = run_scenario(parse_scenario(broken("fail")));
  std::string text = text_report(r);
  auto j = machine_report(r);
  EXPECT_NE(text.find("FAIL   twistor"), std::string::npos);
  EXPECT_NE(text.find("verdict: fail"), std::string::npos);
  EXPECT_EQ(j["checks"][0]["status"], "fail");
}

TEST(MaxWorkers, ReadsEnvironment) {
  ::setenv("QG_MAX_WORKERS", "3", 1);
  EXPECT_EQ(max_workers(), 3u);
  ::setenv("QG_MAX_WORKERS", "zero", 1);
  EXPECT_GE(max_workers(), 1u);
  ::unsetenv("QG_MAX_WORKERS");
}
