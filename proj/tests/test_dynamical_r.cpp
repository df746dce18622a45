#include <gtest/gtest.h>

#include "generators.hpp"
#include "qgroupoid/dynamical_r.hpp"
#include "qgroupoid/pbw.hpp"

using namespace qgroupoid;

namespace {

constexpr std::size_t E = 0, F = 1, H = 2;

LieAlgebraData abelian1() { return LieAlgebraData({"h"}, {}, {0}); }

// [r12, r13] + [r12, r23] + [r13, r23] as commutators in U(g)^{(x)3}.
GTensor cybe_by_pbw(const LieAlgebraData& g, const RatMatrix& r, const Vars& v) {
  PBWAlgebra U(g);
  const std::size_t m = g.dim();
  auto gen = [&](std::size_t i) { return PBWMono(U.generator(i).terms().begin()->first); };
  PBWMono one(m, 0);
  PBWTensor<3> r12(m), r13(m), r23(m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      r12.add_term({gen(a), gen(b), one}, r[a][b]);
      r13.add_term({gen(a), one, gen(b)}, r[a][b]);
      r23.add_term({one, gen(a), gen(b)}, r[a][b]);
    }
  auto comm = [&](const PBWTensor<3>& x, const PBWTensor<3>& y) {
    PBWTensor<3> out = U.tensor_mul(x, y);
    PBWTensor<3> yx = U.tensor_mul(y, x);
    for (const auto& [k, c] : yx.terms()) out.add_term(k, -c);
    return out;
  };
  PBWTensor<3> sum = comm(r12, r13);
  sum += comm(r12, r23);
  sum += comm(r13, r23);
  GTensor out(v, g.basis(), 3);
  for (const auto& [k, c] : sum.terms()) {
    std::size_t idx[3];
    for (int s = 0; s < 3; ++s) {
      EXPECT_EQ(total_degree(k[s]), 1u);
      idx[s] = 0;
      while (k[s][idx[s]] == 0) ++idx[s];
    }
    out.at(idx[0], idx[1], idx[2]) = RatFun::constant(v, c);
  }
  return out;
}

}  // namespace

TEST(Cdybe, Examples) {
  LieAlgebraData ab = abelian1();
  EXPECT_TRUE(cdybe_residual(ab, zero_r(ab)).is_zero());
  LieAlgebraData g = sl2();
  EXPECT_TRUE(cdybe_residual(g, sl2_rational_r()).is_zero());
  // constant r: Alt(dr) = 0 and the residual is the CYBE residual
  RatMatrix c = {{0, 0, 1}, {0, 0, 0}, {-1, 0, 0}};
  DynamicalR rc = constant_r(g, c);
  EXPECT_TRUE(alt_dr(g, rc, frozen_alt_convention()).is_zero());
  EXPECT_EQ(cdybe_residual(g, rc), classical_yang_baxter(g, rc));
}

TEST(Cdybe, PerturbedFixtureFails) {
  LieAlgebraData g = sl2();
  DynamicalR r = sl2_rational_r();
  r.r.at(F, E) = Rational(2) * r.r.at(F, E);
  GTensor res = cdybe_residual(g, r);
  EXPECT_FALSE(res.is_zero());
  EXPECT_GT(res.size(), 0u);
}

TEST(Cdybe, CalibrationSelectsExactlyOneConvention) {
  auto cal = calibrate_alt_convention(sl2(), sl2_rational_r());
  ASSERT_EQ(cal.size(), 4u);
  int passing = 0;
  for (const auto& [conv, ok] : cal) {
    passing += ok;
    if (ok) EXPECT_EQ(conv, frozen_alt_convention()) << conv.to_string();
  }
  EXPECT_EQ(passing, 1);
  EXPECT_EQ(frozen_alt_convention().to_string(), "-cyclic");
}

TEST(Cdybe, ConstantRMatchesPbwCommutatorOracle) {
  probe::Gen gen(17);
  LieAlgebraData g = sl2();
  for (int trial = 0; trial < 10; ++trial) {
    RatMatrix c(3, std::vector<Rational>(3));
    for (auto& row : c)
      for (auto& x : row) x = gen.integer(0, 2) ? Rational(0) : gen.rational();
    DynamicalR r = constant_r(g, c);
    EXPECT_EQ(cdybe_residual(g, r), cybe_by_pbw(g, c, r.lambda));
  }
}

// theta(e) = s e, theta(f) = f / s, theta(h) = h is an automorphism fixing h.
TEST(Cdybe, CartanRescalingIsEquivariant) {
  LieAlgebraData g = sl2();
  DynamicalR r = sl2_rational_r();
  RatFun l = RatFun::variable(r.lambda, 0);
  r.r.at(F, E) = Rational(2) * r.r.at(F, E);  // not a solution
  r.r.at(E, H) = l;
  const Rational s(3);
  const Rational scale[3] = {s, 1 / s, Rational(1)};
  DynamicalR rs = r;
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) rs.r.at(a, b) = scale[a] * scale[b] * r.r.at(a, b);
  GTensor res = cdybe_residual(g, r), res_s = cdybe_residual(g, rs);
  ASSERT_FALSE(res.is_zero());
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b)
      for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(res_s.at(a, b, c), scale[a] * scale[b] * scale[c] * res.at(a, b, c));
}

TEST(Equivariance, Examples) {
  LieAlgebraData g = sl2();
  for (const auto& t : equivariance_residual(g, zero_r(g))) EXPECT_TRUE(t.is_zero());
  for (const auto& t : equivariance_residual(g, sl2_rational_r())) EXPECT_TRUE(t.is_zero());
  DynamicalR weighted = zero_r(g);
  weighted.r.at(H, E) = RatFun::one(weighted.lambda);
  EXPECT_FALSE(equivariance_residual(g, weighted)[0].is_zero());
  DynamicalR diag = zero_r(g);
  diag.r.at(H, H) = RatFun::one(diag.lambda) / RatFun::variable(diag.lambda, 0);
  EXPECT_TRUE(equivariance_residual(g, diag)[0].is_zero());
}

TEST(SymmetricPart, Examples) {
  LieAlgebraData g = sl2();
  EXPECT_TRUE(symmetric_part_check(g, sl2_rational_r()).passed());
  DynamicalR bad = zero_r(g);
  bad.r.at(E, F) = RatFun::one(bad.lambda) / RatFun::variable(bad.lambda, 0);
  bad.r.at(F, E) = bad.r.at(E, F);
  EXPECT_FALSE(symmetric_part_check(g, bad).passed());
  // antisymmetric part + Casimir/2, Casimir = e(x)f + f(x)e + h(x)h/2
  DynamicalR cas = sl2_rational_r();
  Rational half(1, 2);
  cas.r.at(E, F) = cas.r.at(E, F) + RatFun::constant(cas.lambda, half);
  cas.r.at(F, E) = cas.r.at(F, E) + RatFun::constant(cas.lambda, half);
  cas.r.at(H, H) = RatFun::constant(cas.lambda, Rational(1, 4));
  EXPECT_TRUE(symmetric_part_check(g, cas).passed());
  // a non-invariant constant symmetric part
  DynamicalR nonin = zero_r(g);
  nonin.r.at(E, E) = RatFun::one(nonin.lambda);
  EXPECT_FALSE(symmetric_part_check(g, nonin).passed());
}

TEST(Example41, Examples) {
  LieAlgebraData ab = abelian1();
  Example41 a = example41_lambda(ab, zero_r(ab));
  EXPECT_EQ(a.algebroid.rank(), 2u);
  EXPECT_TRUE(a.square.is_zero());
  EXPECT_EQ(a.lambda.to_string(a.algebroid.frame_names), "xi^h");
  EXPECT_TRUE(algebroid_axiom_check(a.algebroid, 1).passed());

  LieAlgebraData g = sl2();
  Example41 s = example41_lambda(g, sl2_rational_r());
  EXPECT_EQ(s.algebroid.rank(), 4u);
  EXPECT_TRUE(s.square.is_zero()) << s.square.to_string(s.algebroid.frame_names);
  EXPECT_TRUE(algebroid_axiom_check(s.algebroid, 1).passed());
  auto B = triangular_differential(s.algebroid, s.lambda);
  for (const auto& rep : bialgebroid_compat_check(B, 1)) EXPECT_TRUE(rep.passed()) << rep.name << ": " << rep.max_residual();
  EXPECT_EQ(regularity_rank(s.algebroid, s.lambda).verdict, "regular");

  DynamicalR bad = sl2_rational_r();
  bad.r.at(F, E) = Rational(2) * bad.r.at(F, E);
  EXPECT_THROW(example41_lambda(g, bad), precondition_error);
}

// Under the frozen convention, Lambda built from r = a(l)(e(x)f - f(x)e) has
// [Lambda, Lambda] = 0 exactly when the CDYBE holds, for a sample of a.
TEST(Example41, SchoutenSquareTracksCdybe) {
  LieAlgebraData g = sl2();
  for (int k : {-2, -1, 1, 2}) {
    DynamicalR r = zero_r(g);
    RatFun a = RatFun::constant(r.lambda, Rational(k)) / RatFun::variable(r.lambda, 0);
    r.r.at(E, F) = a;
    r.r.at(F, E) = -a;
    bool solves = cdybe_residual(g, r).is_zero();
    EXPECT_EQ(solves, k == -1);
    if (solves) EXPECT_TRUE(example41_lambda(g, r).square.is_zero());
  }
}
