#include <gtest/gtest.h>

#include "generators.hpp"
#include "qgroupoid/poly.hpp"
#include "qgroupoid/ratfun.hpp"
#include "qgroupoid/series.hpp"

using namespace qgroupoid;

namespace {

struct XY {
  Vars vars = make_vars({"x", "y"});
  Poly x = Poly::variable(vars, 0);
  Poly y = Poly::variable(vars, 1);
  Poly one = Poly::one(vars);
  Poly c(long n, long d = 1) const { return Poly::constant(vars, make_rational(n, d)); }
};

}  // namespace

TEST(Rational, ReducedForm) {
  Rational q = make_rational(6, -4);
  EXPECT_EQ(q.get_num(), -3);
  EXPECT_EQ(q.get_den(), 2);
  EXPECT_EQ(to_string(q), "-3/2");
}

TEST(Poly, MulExamples) {
  XY r;
  EXPECT_EQ((r.x + r.one) * (r.x - r.one), r.x * r.x - r.one);
  EXPECT_TRUE((r.x * Poly(r.vars)).is_zero());
  EXPECT_EQ((r.x + r.y) * (r.x + r.y), r.x * r.x + r.c(2) * r.x * r.y + r.y * r.y);
}

TEST(Poly, MismatchedVariablesIsStructuralError) {
  XY r;
  Poly z = Poly::variable(make_vars({"z"}), 0);
  EXPECT_THROW(r.x * z, structural_error);
  EXPECT_THROW(r.x + z, structural_error);
}

TEST(Poly, PartialExamples) {
  XY r;
  EXPECT_EQ(r.x.pow(3).partial(0), r.c(3) * r.x.pow(2));
  EXPECT_TRUE(r.x.pow(2).partial(1).is_zero());
  EXPECT_EQ((r.x * r.y).partial(0), r.y);
  EXPECT_THROW(r.x.partial(2), structural_error);
}

TEST(Poly, ToString) {
  XY r;
  Poly p = make_rational(3, 2) * r.x.pow(2) * r.y - r.x + r.one;
  EXPECT_EQ(p.to_string(), "3/2*x^2*y - x + 1");
  EXPECT_EQ(Poly(r.vars).to_string(), "0");
}

TEST(Poly, RingLawsOnRandomProbes) {
  XY r;
  probe::Gen g(7);
  for (int i = 0; i < 200; ++i) {
    Poly a = g.poly(r.vars, 3), b = g.poly(r.vars, 3), c = g.poly(r.vars, 3);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a + b) - b, a);
    // Leibniz rule for the partial derivative
    EXPECT_EQ((a * b).partial(0), a.partial(0) * b + a * b.partial(0));
  }
}

TEST(Poly, GcdAndExactDivision) {
  XY r;
  Poly f = (r.x + r.y) * (r.x - r.c(2) * r.y);
  Poly g = (r.x + r.y) * (r.x * r.y + r.one);
  EXPECT_EQ(poly_gcd(f, g), r.x + r.y);
  EXPECT_EQ(exact_divide(f, r.x + r.y), r.x - r.c(2) * r.y);
  EXPECT_THROW(exact_divide(r.x, r.y), structural_error);
  EXPECT_EQ(poly_gcd(r.c(4) * r.x, r.c(6) * r.x * r.x), r.x);
  EXPECT_EQ(poly_gcd(r.x + r.one, r.y), r.one);
}

TEST(Poly, GcdDividesBothOnRandomProbes) {
  XY r;
  probe::Gen g(11);
  for (int i = 0; i < 60; ++i) {
    Poly common = g.nonzero_poly(r.vars, 2, 2);
    Poly a = common * g.nonzero_poly(r.vars, 2, 3);
    Poly b = common * g.nonzero_poly(r.vars, 2, 3);
    Poly d = poly_gcd(a, b);
    EXPECT_NO_THROW(exact_divide(a, d));
    EXPECT_NO_THROW(exact_divide(b, d));
    EXPECT_NO_THROW(exact_divide(d, monic(common)));
  }
}

TEST(RatFun, Examples) {
  Vars v = make_vars({"l"});
  RatFun l = RatFun::variable(v, 0);
  RatFun one = RatFun::one(v);
  RatFun inv = one / l;
  EXPECT_EQ(inv * l, one);
  EXPECT_EQ(inv.partial(0), -(one / (l * l)));
  EXPECT_EQ(inv + inv, RatFun::constant(v, 2) / l);
  EXPECT_EQ((inv + inv).to_string(), "2/l");
  EXPECT_THROW(one / RatFun(v), division_by_zero_error);
  EXPECT_THROW(RatFun(Poly::one(v), Poly(v)), division_by_zero_error);
}

TEST(RatFun, NormalFormIsCanonical) {
  XY r;
  RatFun a(r.c(2) * r.x * (r.x + r.y), r.c(4) * (r.x + r.y) * r.y);
  RatFun b(r.x, r.c(2) * r.y);
  EXPECT_EQ(a.num(), b.num());
  EXPECT_EQ(a.den(), b.den());
  EXPECT_EQ(a.den().leading().second, 1);
}

TEST(RatFun, FieldLawsOnRandomProbes) {
  XY r;
  probe::Gen g(3);
  for (int i = 0; i < 60; ++i) {
    RatFun a = g.ratfun(r.vars, 2), b = g.ratfun(r.vars, 2), c = g.ratfun(r.vars, 1);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a * b).partial(1), a.partial(1) * b + a * b.partial(1));
    if (!b.is_zero()) EXPECT_EQ((a / b) * b, a);
  }
}

namespace {

// Polynomials in u only, truncated as hbar series.
using PS = HbarSeries<Poly>;
const auto pmul = [](const Poly& a, const Poly& b) { return a * b; };

}  // namespace

TEST(HbarSeries, MulExamples) {
  Vars v = make_vars({"u"});
  Poly one = Poly::one(v), zero(v);
  PS a1(std::vector<Poly>{one, one}), b1(std::vector<Poly>{one, -one});
  PS p1 = series_mul(a1, b1, pmul);
  EXPECT_EQ(p1.order(), 1u);
  EXPECT_EQ(p1[0], one);
  EXPECT_TRUE(p1[1].is_zero());

  PS a2(std::vector<Poly>{one, one, zero}), b2(std::vector<Poly>{one, -one, zero});
  PS p2 = series_mul(a2, b2, pmul);
  EXPECT_EQ(p2[0], one);
  EXPECT_TRUE(p2[1].is_zero());
  EXPECT_EQ(p2[2], -one);

  PS unit = PS::constant(2, one, zero);
  EXPECT_EQ(series_mul(a2, unit, pmul), a2);
  // truncation order of a product is the minimum of the operands' orders
  EXPECT_EQ(series_mul(a1, a2, pmul).order(), 1u);
}

TEST(HbarSeries, InvertExamples) {
  Vars v = make_vars({"u"});
  Poly one = Poly::one(v), zero(v), u = Poly::variable(v, 0);
  PS a(std::vector<Poly>{one, u, zero});
  PS inv = series_invert(a, pmul, one);
  EXPECT_EQ(inv[0], one);
  EXPECT_EQ(inv[1], -u);
  EXPECT_EQ(inv[2], u * u);
  EXPECT_EQ(series_invert(PS::constant(3, one, zero), pmul, one), PS::constant(3, one, zero));
  PS bad(std::vector<Poly>{u, one});
  EXPECT_THROW(series_invert(bad, pmul, one), not_invertible_error);
}

TEST(HbarSeries, InverseIsTwoSidedAndTruncationIsAHomomorphism) {
  XY r;
  probe::Gen g(5);
  for (int i = 0; i < 30; ++i) {
    std::vector<Poly> ca{r.one}, cb;
    for (int k = 0; k < 4; ++k) ca.push_back(g.poly(r.vars, 2));
    for (int k = 0; k < 5; ++k) cb.push_back(g.poly(r.vars, 2));
    PS a(ca), b(cb);
    PS ainv = series_invert(a, pmul, r.one);
    PS unit = PS::constant(4, r.one, Poly(r.vars));
    EXPECT_EQ(series_mul(a, ainv, pmul), unit);
    EXPECT_EQ(series_mul(ainv, a, pmul), unit);
    for (std::size_t m = 0; m <= 4; ++m) {
      EXPECT_EQ(series_mul(a.truncated(m), b.truncated(m), pmul), series_mul(a, b, pmul).truncated(m));
      EXPECT_EQ((a.truncated(m) + b.truncated(m)), (a + b).truncated(m));
    }
  }
}
