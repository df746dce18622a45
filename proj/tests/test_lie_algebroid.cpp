#include <gtest/gtest.h>

#include "generators.hpp"
#include "qgroupoid/lie_algebroid.hpp"

using namespace qgroupoid;

namespace {

using MV = Multivector<Poly>;

struct Plane {
  LieAlgebroidData<Poly> A = tangent_algebroid(2);
  Vars v = A.vars;
  Poly x = Poly::variable(v, 0);
  Poly y = Poly::variable(v, 1);
  Poly one = Poly::one(v);
  MV dx = MV::frame(v, 0);
  MV dy = MV::frame(v, 1);
  MV fn(const Poly& f) const { return MV::function(f); }
  MV bi(const Poly& f) const { return MV::term(f, {0, 1}); }
};

// sl2 acting on R^2 by e -> x d_y, f -> y d_x, h -> x d_x - y d_y.
LieAlgebroidData<Poly> sl2_action_algebroid() {
  Vars v = make_vars({"x", "y"});
  auto A = lie_algebra_algebroid<Poly>(sl2(), v);
  Poly x = Poly::variable(v, 0), y = Poly::variable(v, 1);
  A.anchor[0] = {Poly(v), x};
  A.anchor[1] = {y, Poly(v)};
  A.anchor[2] = {x, -y};
  return A;
}

MV random_multivector(probe::Gen& g, const LieAlgebroidData<Poly>& A, std::size_t degree, std::uint32_t coef_deg) {
  MV out(A.vars, degree);
  std::vector<std::vector<std::size_t>> sets;
  std::vector<std::size_t> cur;
  detail::subsets(A.rank(), degree, 0, cur, sets);
  for (const auto& I : sets)
    if (g.integer(0, 2) > 0) out += MV::term(g.poly(A.vars, coef_deg, 2), I);
  return out;
}

int sgn(std::size_t e) { return e % 2 == 0 ? 1 : -1; }

}  // namespace

namespace qgroupoid {
void PrintTo(const Multivector<Poly>& m, std::ostream* os) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < 4; ++i) names.push_back("e" + std::to_string(i));
  *os << m.to_string(names);
}
}  // namespace qgroupoid

TEST(Multivector, WedgeSignsAndCanonicalOrder) {
  Plane r;
  EXPECT_EQ(wedge(r.dy, r.dx), -r.bi(r.one));
  EXPECT_TRUE(wedge(r.dx, r.dx).is_zero());
  EXPECT_EQ(MV::term(r.x, {1, 0}), -r.bi(r.x));
  EXPECT_EQ(r.bi(r.x).to_string(r.A.frame_names), "(x)*dx^dy");
  MV s = r.dx - r.dx;
  EXPECT_TRUE(s.is_zero());
}

TEST(TangentAlgebroid, Examples) {
  Plane r;
  EXPECT_EQ(r.A.rank(), 2u);
  EXPECT_EQ(r.A.anchor[0][0], r.one);
  EXPECT_TRUE(r.A.anchor[0][1].is_zero());
  EXPECT_TRUE(r.A.section_bracket(r.dx, r.dy).is_zero());
  Poly f = r.x * r.x * r.y + r.y;
  EXPECT_EQ(r.A.section_bracket(r.dx, f * r.dy), f.partial(0) * r.dy);
  EXPECT_THROW(tangent_algebroid(0), precondition_error);
}

TEST(AlgebroidAxioms, Examples) {
  EXPECT_TRUE(algebroid_axiom_check(tangent_algebroid(2), 2).passed());
  EXPECT_TRUE(algebroid_axiom_check(lie_algebra_algebroid<Poly>(sl2(), make_vars({})), 0).passed());
  EXPECT_TRUE(algebroid_axiom_check(sl2_action_algebroid(), 2).passed());

  auto bad = lie_algebra_algebroid<Poly>(sl2(), make_vars({}));
  // [h, e] = -2e instead of 2e
  bad.structure[2][0][0] = -bad.structure[2][0][0];
  bad.structure[0][2][0] = -bad.structure[0][2][0];
  CheckReport rep = algebroid_axiom_check(bad, 0);
  ASSERT_FALSE(rep.passed());
  for (const auto& f : rep.failures) EXPECT_EQ(f.probe.rfind("Jacobi", 0), 0u) << f.probe;

  auto wrong_anchor = sl2_action_algebroid();
  wrong_anchor.anchor[2] = {Poly::variable(wrong_anchor.vars, 0), Poly(wrong_anchor.vars)};
  EXPECT_FALSE(algebroid_axiom_check(wrong_anchor, 1).passed());

  auto not_antisym = tangent_algebroid(2);
  not_antisym.structure[0][1][0] = Poly::one(not_antisym.vars);
  EXPECT_FALSE(algebroid_axiom_check(not_antisym, 1).passed());
}

TEST(Schouten, Examples) {
  Plane r;
  EXPECT_EQ(schouten(r.A, r.dx, r.fn(r.x * r.x)), r.fn(2 * r.x));
  EXPECT_EQ(schouten(r.A, r.fn(r.x * r.x), r.dx), r.fn(-2 * r.x));
  EXPECT_TRUE(schouten(r.A, r.bi(r.one), r.bi(r.one)).is_zero());
  EXPECT_TRUE(schouten(r.A, r.bi(r.x), r.bi(r.x)).is_zero());
  EXPECT_EQ(schouten(r.A, r.dx, r.y * r.dx), r.A.section_bracket(r.dx, r.y * r.dx));
  // hand expansion: [x dx^dy - dx^dz, same] = 2 dx^dy^dz on R^3
  auto A3 = tangent_algebroid(3);
  Poly x = Poly::variable(A3.vars, 0), one = Poly::one(A3.vars);
  MV P = MV::term(x, {0, 1}) - MV::term(one, {0, 2});
  EXPECT_EQ(schouten(A3, P, P), MV::term(2 * one, {0, 1, 2}));
}

// coordinate formula: [pi, pi]_{ijk} = 2 (pi^{il} d_l pi^{jk} + cyclic)
TEST(Schouten, BivectorMatchesCoordinateJacobiator) {
  probe::Gen g(41);
  auto A = tangent_algebroid(3);
  for (int trial = 0; trial < 25; ++trial) {
    MV P = random_multivector(g, A, 2, 2);
    auto J = jacobi_residuals(bivector_matrix(A, P));
    EXPECT_EQ(schouten(A, P, P), MV::term(2 * J[0], {0, 1, 2})) << P.to_string(A.frame_names);
  }
}

TEST(Schouten, GradedAntisymmetryLeibnizJacobi) {
  probe::Gen g(7);
  for (const auto& A : {tangent_algebroid(2), sl2_action_algebroid()}) {
    for (int trial = 0; trial < 40; ++trial) {
      std::size_t p = g.integer(0, 2), q = g.integer(0, 2), s = g.integer(0, 4 - static_cast<int>(std::max(p, q)));
      s = std::min<std::size_t>(s, A.rank());
      MV P = random_multivector(g, A, p, 2), Q = random_multivector(g, A, q, 2), R = random_multivector(g, A, s, 1);
      MV PQ = schouten(A, P, Q);
      // [P,Q] = -(-1)^{(p-1)(q-1)} [Q,P]
      EXPECT_EQ(PQ, -sgn((p + 1) * (q + 1)) * schouten(A, Q, P));
      // [P, Q^R] = [P,Q]^R + (-1)^{(p-1)q} Q^[P,R]
      if (q + s <= A.rank())
        EXPECT_EQ(schouten(A, P, wedge(Q, R)), wedge(PQ, R) + sgn((p + 1) * q) * wedge(Q, schouten(A, P, R)));
      // [P,[Q,R]] = [[P,Q],R] + (-1)^{(p-1)(q-1)} [Q,[P,R]]
      if (p + q + s <= A.rank() + 2)
        EXPECT_EQ(schouten(A, P, schouten(A, Q, R)),
                  schouten(A, PQ, R) + sgn((p + 1) * (q + 1)) * schouten(A, Q, schouten(A, P, R)));
    }
  }
}

TEST(Schouten, DegreeOneIsAlgebroidBracketAndAnchor) {
  probe::Gen g(3);
  auto A = sl2_action_algebroid();
  for (int trial = 0; trial < 20; ++trial) {
    MV X = random_multivector(g, A, 1, 2), Y = random_multivector(g, A, 1, 2);
    Poly f = g.poly(A.vars, 2);
    EXPECT_EQ(schouten(A, X, Y), A.section_bracket(X, Y));
    EXPECT_EQ(schouten(A, X, MV::function(f)), MV::function(A.anchor_apply(X, f)));
  }
}

TEST(TriangularDifferential, Examples) {
  Plane r;
  auto zero = triangular_differential(r.A, MV(r.v, 2));
  EXPECT_TRUE(zero.delta(r.x).is_zero());
  EXPECT_TRUE(zero.delta(r.dx).is_zero());

  auto B = triangular_differential(r.A, r.bi(r.one));
  EXPECT_EQ(B.delta(r.x), r.dy);
  EXPECT_EQ(B.delta(r.y), -r.dx);
  EXPECT_TRUE(B.delta(r.dx).is_zero());
  EXPECT_EQ(B.delta(r.x * r.x), 2 * r.x * r.dy);

  auto A3 = tangent_algebroid(3);
  Poly x = Poly::variable(A3.vars, 0);
  MV bad = MV::term(x, {0, 1}) - MV::term(Poly::one(A3.vars), {0, 2});
  EXPECT_THROW(triangular_differential(A3, bad), precondition_error);
}

// Lambda = pi for random Poisson pi = f d_x ^ d_y on R^3; also sl2 action with r-matrix-like Lambda.
TEST(TriangularDifferential, SquareZeroAndCompatibility) {
  probe::Gen g(11);
  auto A = tangent_algebroid(3);
  for (int trial = 0; trial < 6; ++trial) {
    Poly f = g.nonzero_poly(A.vars, 2, 3);
    MV L = MV::term(f, {0, 1});
    auto B = triangular_differential(A, L);
    for (const auto& rep : bialgebroid_compat_check(B, 1)) EXPECT_TRUE(rep.passed()) << rep.name << ": " << rep.max_residual();
    EXPECT_EQ(base_poisson(B).pi, bivector_matrix(A, L));
  }
  auto S = sl2_action_algebroid();
  // e ^ h: [e^h, e^h] = 2 [e,h] ^ e ^ h = 0
  MV L = MV::term(Poly::one(S.vars), {0, 2});
  auto B = triangular_differential(S, L);
  for (const auto& rep : bialgebroid_compat_check(B, 1)) EXPECT_TRUE(rep.passed()) << rep.name << ": " << rep.max_residual();
}

TEST(BialgebroidCompat, Examples) {
  Plane r;
  for (const auto& rep : bialgebroid_compat_check(zero_differential(r.A), 2)) EXPECT_TRUE(rep.passed());
  auto B = triangular_differential(r.A, r.bi(r.x));
  for (const auto& rep : bialgebroid_compat_check(B, 2)) EXPECT_TRUE(rep.passed());
  // non-derivation: keep only the first term of delta on functions
  auto broken = B;
  broken.on_functions = [B, v = r.v](const Poly& f) {
    MV d = B.on_functions(f), out(v, 1);
    if (!d.is_zero()) out.add_term(d.terms().begin()->first, d.terms().begin()->second);
    return out;
  };
  bool any_fail = false;
  for (const auto& rep : bialgebroid_compat_check(broken, 2)) any_fail |= !rep.passed();
  EXPECT_TRUE(any_fail);
}

TEST(BasePoisson, Examples) {
  Plane r;
  auto B = triangular_differential(r.A, r.bi(r.one));
  EXPECT_EQ(base_poisson(B), PoissonBivector::constant(r.v, {{0, 1}, {-1, 0}}));
  auto A3 = tangent_algebroid(3);
  auto B3 = triangular_differential(A3, MV::term(Poly::constant(A3.vars, 3), {0, 1}));
  PoissonBivector p3 = base_poisson(B3);
  EXPECT_EQ(p3, PoissonBivector::constant(A3.vars, {{0, 3, 0}, {-3, 0, 0}, {0, 0, 0}}));
  EXPECT_TRUE(p3.is_poisson());
  EXPECT_EQ(base_poisson(zero_differential(r.A)), PoissonBivector::zero(r.v));
  // non-Poisson differential is rejected
  auto bad = zero_differential(A3);
  Vars v3 = A3.vars;
  bad.on_functions = [v3](const Poly& f) {
    Poly x = Poly::variable(v3, 0);
    return MV::term(f.partial(0) * x, {1}) - MV::term(f.partial(1) * x, {0}) + MV::term(f.partial(0), {2}) -
           MV::term(f.partial(2), {0});
  };
  EXPECT_THROW(base_poisson(bad), invalid_structure_error);
}

TEST(Regularity, Examples) {
  auto A3 = tangent_algebroid(3);
  RankReport c = regularity_rank(A3, MV::term(Poly::one(A3.vars), {0, 1}));
  EXPECT_EQ(c.rank, 2u);
  EXPECT_EQ(c.verdict, "regular");
  Plane r;
  RankReport d = regularity_rank(r.A, r.bi(r.x));
  EXPECT_EQ(d.rank, 2u);
  EXPECT_EQ(d.verdict, "not regular");
  ASSERT_EQ(d.drop_point.size(), 2u);
  EXPECT_EQ(d.drop_point[0], 0);
  RankReport z = regularity_rank(r.A, MV(r.v, 2));
  EXPECT_EQ(z.rank, 0u);
  EXPECT_EQ(z.verdict, "regular");
  // x^2 + 1 never vanishes but is not constant
  RankReport u = regularity_rank(r.A, r.bi(r.x * r.x + r.one));
  EXPECT_EQ(u.verdict, "undetermined");
}

TEST(RatFunCoefficients, TriangularOverFractionField) {
  Vars v = make_vars({"l", "y"});
  auto A = tangent_algebroid<RatFun>(v);
  RatFun l = RatFun::variable(v, 0);
  Multivector<RatFun> L = Multivector<RatFun>::term(RatFun::one(v) / l, {0, 1});
  auto B = triangular_differential(A, L);
  for (const auto& rep : bialgebroid_compat_check(B, 1)) EXPECT_TRUE(rep.passed()) << rep.max_residual();
  auto pi = base_poisson_matrix(B);
  EXPECT_EQ(pi[0][1], RatFun::one(v) / l);
  EXPECT_EQ(regularity_rank(A, L).verdict, "regular");
}
