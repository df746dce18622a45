#include <gtest/gtest.h>

#include <chrono>

#include "qgroupoid/deformed_suite.hpp"

using namespace qgroupoid;

namespace {

const RatMatrix kStd2 = {{0, 1}, {-1, 0}};

void expect_all_pass(const std::vector<CheckReport>& reps) {
  for (const auto& r : reps) {
    EXPECT_TRUE(r.passed()) << r.name << ": " << r.max_residual();
    EXPECT_GT(r.probes, 0u) << r.name;
  }
}

Twist frame_twist_r3(std::size_t order) {
  Vars v = make_vars({"x", "y", "z"});
  Poly z = Poly::variable(v, 2);
  std::vector<PolyDiffOp> frame{PolyDiffOp::partial(v, 0), z * PolyDiffOp::partial(v, 1)};
  return commuting_frame_twist(v, frame, kStd2, order);
}

}  // namespace

TEST(DeformedSuite, IdentityTwistPasses) {
  Vars v = make_vars({"x"});
  DeformedInstance D = make_deformed_instance(identity_twist(v, 2));
  expect_all_pass(deformed_axiom_suite(D));
  EXPECT_TRUE(check_twistor(D.star.twist()).passed());
}

TEST(DeformedSuite, MoyalPlaneOrderThreePasses) {
  Vars v = make_vars({"x", "p"});
  auto t0 = std::chrono::steady_clock::now();
  DeformedInstance D = make_deformed_instance(moyal_twist(v, kStd2, 3));
  expect_all_pass(deformed_axiom_suite(D));
  EXPECT_TRUE(check_twistor(D.star.twist()).passed());
  EXPECT_TRUE(check_star_associativity(D.star, 2).passed());
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_LT(secs, 180.0);
}

TEST(DeformedSuite, FrameTwistOnR3Passes) {
  DeformedInstance D = make_deformed_instance(frame_twist_r3(3));
  expect_all_pass(deformed_axiom_suite(D));
  EXPECT_TRUE(check_twistor(D.star.twist()).passed());
}

TEST(DeformedSuite, BrokenTwistFailsAtSecondOrder) {
  Vars v = make_vars({"x"});
  Twist phi = broken_twist(v, 2);
  CheckReport tw = check_twistor(phi);
  ASSERT_FALSE(tw.passed());
  CheckReport as = check_star_associativity(StarAlgebra(phi), 2);
  ASSERT_FALSE(as.passed());
  for (const auto& f : as.failures) EXPECT_NE(f.residual.find("hbar^2"), std::string::npos) << f.residual;
  DeformedInstance D = make_deformed_instance(phi);
  EXPECT_FALSE(check_deformed_coassociativity(D).passed());
}

// (Delta (x) id)(Delta(x) phi) . phi^{12} equals the transported left side.
TEST(DeformedSuite, CoassociativityBracketingsAgree) {
  Vars v = make_vars({"x", "p"});
  StarAlgebra S(moyal_twist(v, kStd2, 2));
  const Twist& phi = S.twist();
  OpSeries phi12 = phi.series().map([](const PolyDiffOp& b) { return append_identity_slot(b); });
  OpSeries dphi = phi.series().map([](const PolyDiffOp& b) { return coproduct_in_slot(b, 0); });
  OpSeries left_phi = slotwise_series(dphi, phi12);
  for (const auto& op : diffop_probes(v, 1, 2)) {
    OpSeries x = op_series(op, 2);
    OpSeries d3 = x.map([](const PolyDiffOp& b) { return coproduct_in_slot(leibniz_coproduct(b), 0); });
    OpSeries a = slotwise_series(d3, left_phi);
    OpSeries b = slotwise_series(stored_coproduct(S, x).map([](const PolyDiffOp& w) { return coproduct_in_slot(w, 0); }),
                                 phi12);
    EXPECT_EQ(a, b) << op.to_string();
  }
}

TEST(DeformedSuite, CounitSidesRecoverProbe) {
  Vars v = make_vars({"x", "p"});
  DeformedInstance D = make_deformed_instance(moyal_twist(v, kStd2, 2), 1, 1);
  PolyDiffOp d = PolyDiffOp::partial(v, 0);
  auto [l, r] = deformed_counit_sides(D, op_series(d, 2));
  EXPECT_EQ(l, op_series(d, 2));
  EXPECT_EQ(r, op_series(d, 2));
}
