#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qgroupoid/hopf_classical.hpp"
#include "qgroupoid/report.hpp"
#include "qgroupoid/star_twist.hpp"

namespace qgroupoid {

/// D_hbar(P) of Theorem A together with its probe sets. Elements of
/// D_hbar (x)_{R_hbar} D_hbar are stored through Phi (see stored_coproduct).
struct DeformedInstance {
  StarAlgebra star;
  std::vector<OpSeries> probes;       // total-algebra elements x
  std::vector<OpSeries> pair_probes;  // h1, h2 for Eq. (3)
  std::vector<PolySeries> base_probes;
  std::vector<Poly> eq11_probes;

  std::size_t order() const { return star.order(); }
  const Vars& vars() const { return star.vars(); }
};

inline DeformedInstance make_deformed_instance(const Twist& phi, std::uint32_t max_degree = 2,
                                               std::uint32_t max_order = 2) {
  DeformedInstance D{StarAlgebra(phi), {}, {}, {}, {}};
  const std::size_t N = phi.order();
  const Vars& v = phi.vars();
  const std::size_t n = var_count(v);
  auto ops = diffop_probes(v, max_degree, max_order);
  for (const auto& op : ops) D.probes.push_back(op_series(op, N));
  // series-valued probes h = p + hbar q (+ hbar^2 r)
  if (ops.size() >= 3 && N >= 1) {
    for (std::size_t i = 1; i + 2 < ops.size(); i += std::max<std::size_t>(1, ops.size() / 3)) {
      OpSeries s = op_series(ops[i], N);
      s[1] += ops[i + 1];
      if (N >= 2) s[2] += ops[i + 2];
      D.probes.push_back(std::move(s));
    }
  }
  for (const auto& op : diffop_probes(v, std::min<std::uint32_t>(max_degree, 1), std::min<std::uint32_t>(max_order, 1)))
    D.pair_probes.push_back(op_series(op, N));
  if (N >= 1 && D.pair_probes.size() >= 2) {
    OpSeries s = D.pair_probes.back();
    s[1] += D.pair_probes[1][0];
    D.pair_probes.push_back(std::move(s));
  }
  auto monos = monomials_up_to(v, max_degree);
  for (const auto& m : monos) D.base_probes.push_back(poly_series(m, N));
  if (N >= 1 && monos.size() >= 3) {
    PolySeries s = poly_series(monos[1], N);
    s[1] += monos[2];
    D.base_probes.push_back(std::move(s));
  }
  // x_1, x_2, x_1^2, x_1 x_2 (x, p, x^2, xp on the plane)
  Poly x1 = Poly::variable(v, 0);
  Poly x2 = n >= 2 ? Poly::variable(v, 1) : x1;
  D.eq11_probes = {x1, x2, x1 * x1, x1 * x2};
  return D;
}

namespace detail {

inline std::string ser(const OpSeries& s) { return series_to_string(s); }
inline std::string ser(const PolySeries& s) { return series_to_string(s); }

inline OpSeries series_coproduct(const OpSeries& x) {
  return x.map([](const PolyDiffOp& d) { return leibniz_coproduct(d); });
}

}  // namespace detail

/// Eq. (9) as a single residual series.
inline CheckReport check_twistor(const Twist& phi) {
  CheckReport rep{"twistor"};
  rep.record(phi.label(), twistor_residual(phi), [](const OpSeries& s) { return detail::ser(s); });
  return rep;
}

/// Associativity of * on all monomial triples of degree <= max_degree.
inline CheckReport check_star_associativity(const StarAlgebra& S, std::uint32_t max_degree) {
  CheckReport rep{"star_associativity"};
  auto monos = monomials_up_to(S.vars(), max_degree);
  for (const auto& f : monos)
    for (const auto& g : monos)
      for (const auto& h : monos)
        rep.record("(" + f.to_string() + ", " + g.to_string() + ", " + h.to_string() + ")", assoc_residual(S, f, g, h),
                   [](const PolySeries& s) { return detail::ser(s); });
  return rep;
}

/// Eq. (11) on the instance's f probes and on every base probe.
inline CheckReport check_eq11_suite(const DeformedInstance& D) {
  CheckReport rep{"eq11"};
  auto str = [](const OpSeries& s) { return detail::ser(s); };
  for (const auto& f : D.eq11_probes) rep.record("f = " + f.to_string(), check_eq11(D.star, f), str);
  for (const auto& f : D.base_probes) rep.record("f = " + detail::ser(f), check_eq11(D.star, f), str);
  return rep;
}

/// (a) transported coassociativity:
///   ((Delta (x) id) Delta(x)) . ((Delta (x) id) phi . phi^{12})
/// = ((id (x) Delta) Delta(x)) . ((id (x) Delta) phi . phi^{23}).
inline CheckReport check_deformed_coassociativity(const DeformedInstance& D) {
  CheckReport rep{"deformed_coassociativity"};
  const Twist& phi = D.star.twist();
  const std::size_t N = phi.order();
  OpSeries left_phi = zero_ops(D.vars(), 3, N), right_phi = zero_ops(D.vars(), 3, N);
  for (std::size_t k = 0; k <= N; ++k)
    for (std::size_t a = 0; a <= k; ++a) {
      left_phi[k] += slotwise_product(coproduct_in_slot(phi[a], 0), append_identity_slot(phi[k - a]));
      right_phi[k] += slotwise_product(coproduct_in_slot(phi[a], 1), prepend_identity_slot(phi[k - a]));
    }
  for (const auto& x : D.probes) {
    OpSeries dx = detail::series_coproduct(x);
    OpSeries l3 = dx.map([](const PolyDiffOp& b) { return coproduct_in_slot(b, 0); });
    OpSeries r3 = dx.map([](const PolyDiffOp& b) { return coproduct_in_slot(b, 1); });
    rep.record("x = " + detail::ser(x), slotwise_series(l3, left_phi) - slotwise_series(r3, right_phi),
               [](const OpSeries& s) { return detail::ser(s); });
  }
  return rep;
}

/// (b) Eq. (2) in stored form: (Delta(h) phi)(beta(a) (x) 1 - 1 (x) alpha(a)).
inline CheckReport check_deformed_eq2(const DeformedInstance& D) {
  CheckReport rep{"deformed_compatibility_eq2"};
  std::vector<TensorSeries> diffs;
  for (const auto& a : D.base_probes) diffs.push_back(source_target_difference(D.star, a));
  for (const auto& h : D.probes) {
    OpSeries W = stored_coproduct(D.star, h);
    for (std::size_t i = 0; i < D.base_probes.size(); ++i)
      rep.record("h = " + detail::ser(h) + ", a = " + detail::ser(D.base_probes[i]), slotwise_series(W, diffs[i]),
                 [](const OpSeries& s) { return detail::ser(s); });
  }
  return rep;
}

/// (c) Eq. (3) in stored form: Delta(h1 h2) phi = Delta(h1) (Delta(h2) phi).
inline CheckReport check_deformed_eq3(const DeformedInstance& D) {
  CheckReport rep{"deformed_compatibility_eq3"};
  for (const auto& h1 : D.pair_probes) {
    OpSeries d1 = detail::series_coproduct(h1);
    for (const auto& h2 : D.pair_probes) {
      OpSeries lhs = stored_coproduct(D.star, compose_series(h1, h2));
      OpSeries rhs = slotwise_series(d1, stored_coproduct(D.star, h2));
      rep.record("h1 = " + detail::ser(h1) + ", h2 = " + detail::ser(h2), lhs - rhs,
                 [](const OpSeries& s) { return detail::ser(s); });
    }
  }
  return rep;
}

/// sum alpha(eps(x')) x'' and sum beta(eps(x'')) x' over canonical_lift.
inline std::pair<OpSeries, OpSeries> deformed_counit_sides(const DeformedInstance& D, const OpSeries& x) {
  const std::size_t N = std::min(D.order(), x.order());
  auto lift = canonical_lift(D.star, stored_coproduct(D.star, x));
  OpSeries left = zero_ops(D.vars(), 1, N), right = zero_ops(D.vars(), 1, N);
  for (const auto& t : lift) {
    if (t.order > N) continue;
    Poly el = counit(t.left);
    if (!el.is_zero()) {
      OpSeries s = compose_series(alpha_h(D.star, el), op_series(t.right, N)).shifted(t.order, PolyDiffOp(D.vars(), 1));
      left = left + s;
    }
    Poly er = counit(t.right);
    if (!er.is_zero()) {
      OpSeries s = compose_series(beta_h(D.star, er), op_series(t.left, N)).shifted(t.order, PolyDiffOp(D.vars(), 1));
      right = right + s;
    }
  }
  return {left.truncated(N), right.truncated(N)};
}

/// (d) Eq. (4) via canonical_lift, with eps_hbar(D) = D(1); plus
/// eps(1) = 1 and eps alpha = eps beta = id on base probes.
inline CheckReport check_deformed_counit(const DeformedInstance& D) {
  CheckReport rep{"deformed_counit"};
  auto str = [](const OpSeries& s) { return detail::ser(s); };
  auto pstr = [](const PolySeries& s) { return detail::ser(s); };
  rep.record("eps(1) - 1", counit_h(op_series(PolyDiffOp::identity(D.vars()), D.order())) - D.star.lift(Poly::one(D.vars())),
             pstr);
  for (const auto& x : D.probes) {
    auto [l, r] = deformed_counit_sides(D, x);
    rep.record("sum alpha(eps(x')) x'' - x, x = " + detail::ser(x), l - x, str);
    rep.record("sum beta(eps(x'')) x' - x, x = " + detail::ser(x), r - x, str);
  }
  for (const auto& a : D.base_probes) {
    rep.record("eps(alpha(a)) - a, a = " + detail::ser(a), counit_h(alpha_h(D.star, a)) - a, pstr);
    rep.record("eps(beta(a)) - a, a = " + detail::ser(a), counit_h(beta_h(D.star, a)) - a, pstr);
  }
  return rep;
}

/// (e) Definition 3.1 (ii)-(iii): alpha_hbar, beta_hbar, Delta_hbar reduce to
/// the classical maps mod hbar.
inline CheckReport check_deformed_mod_hbar(const DeformedInstance& D) {
  CheckReport rep{"deformed_mod_hbar"};
  auto str = [](const PolyDiffOp& s) { return s.to_string(); };
  for (const auto& a : D.base_probes) {
    rep.record("alpha(a) - a mod hbar, a = " + detail::ser(a),
               alpha_h(D.star, a)[0] - PolyDiffOp::multiplication(a[0]), str);
    rep.record("beta(a) - a mod hbar, a = " + detail::ser(a), beta_h(D.star, a)[0] - PolyDiffOp::multiplication(a[0]),
               str);
  }
  for (const auto& x : D.probes)
    rep.record("Delta_hbar(x) - Delta(x) mod hbar, x = " + detail::ser(x),
               stored_coproduct(D.star, x)[0] - leibniz_coproduct(x[0]), str);
  return rep;
}

/// alpha_hbar a homomorphism and beta_hbar an anti-homomorphism for *, with
/// commuting images.
inline CheckReport check_deformed_source_target(const DeformedInstance& D) {
  CheckReport rep{"deformed_source_target"};
  auto str = [](const OpSeries& s) { return detail::ser(s); };
  std::vector<OpSeries> al, be;
  for (const auto& a : D.base_probes) {
    al.push_back(alpha_h(D.star, a));
    be.push_back(beta_h(D.star, a));
  }
  for (std::size_t i = 0; i < D.base_probes.size(); ++i)
    for (std::size_t j = 0; j < D.base_probes.size(); ++j) {
      std::string tag = "a = " + detail::ser(D.base_probes[i]) + ", b = " + detail::ser(D.base_probes[j]);
      PolySeries ab = D.star.star(D.base_probes[i], D.base_probes[j]);
      rep.record("alpha(a*b) - alpha(a)alpha(b): " + tag, alpha_h(D.star, ab) - compose_series(al[i], al[j]), str);
      rep.record("beta(a*b) - beta(b)beta(a): " + tag, beta_h(D.star, ab) - compose_series(be[j], be[i]), str);
      rep.record("[alpha(a), beta(b)]: " + tag,
                 compose_series(al[i], be[j]) - compose_series(be[j], al[i]), str);
    }
  return rep;
}

/// Theorem A suite in a fixed order.
inline std::vector<CheckReport> deformed_axiom_suite(const DeformedInstance& D) {
  return {check_deformed_coassociativity(D), check_deformed_eq2(D),         check_deformed_eq3(D),
          check_deformed_counit(D),          check_deformed_mod_hbar(D),    check_deformed_source_target(D),
          check_eq11_suite(D)};
}

}  // namespace qgroupoid
