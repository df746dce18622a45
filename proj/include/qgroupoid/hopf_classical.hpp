#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qgroupoid/diffop.hpp"
#include "qgroupoid/pbw.hpp"
#include "qgroupoid/report.hpp"

namespace qgroupoid {

/// (H, R, alpha, beta, m, Delta, epsilon) of a Hopf algebroid, given by
/// evaluators. T2 and T3 carry H (x)_R H and H (x)_R H (x)_R H.
template <class H, class R, class T2, class T3>
struct HopfAlgebroidInstance {
  using Elem = H;
  using Base = R;
  using Two = T2;
  using Three = T3;

  std::string name;
  H one;
  R base_one;
  T2 one_two;  // 1 (x) 1
  std::function<H(const H&, const H&)> mul;
  std::function<R(const R&, const R&)> base_mul;
  std::function<H(const R&)> alpha;
  std::function<H(const R&)> beta;
  std::function<T2(const H&)> coproduct;
  std::function<R(const H&)> counit;
  /// X . (l (x) r) for a plain elementary right factor.
  std::function<T2(const T2&, const H&, const H&)> act_plain;
  /// X . Y with Y a coproduct image (the products of Eq. 3).
  std::function<T2(const T2&, const T2&)> two_mul;
  /// (Delta (x) id) and (id (x) Delta), both built from `coproduct`.
  std::function<T3(const T2&)> coproduct_left;
  std::function<T3(const T2&)> coproduct_right;
  /// sum alpha(eps(x')) x''  and  sum beta(eps(x'')) x'.
  std::function<H(const T2&)> counit_left;
  std::function<H(const T2&)> counit_right;
  std::function<T2(const T2&)> flip;

  std::function<std::string(const H&)> str;
  std::function<std::string(const R&)> base_str;
  std::function<std::string(const T2&)> two_str;
  std::function<std::string(const T3&)> three_str;

  std::vector<H> probes;
  std::vector<H> pair_probes;
  std::vector<R> base_probes;
};

using DiffOpInstance = HopfAlgebroidInstance<PolyDiffOp, Poly, PolyDiffOp, PolyDiffOp>;
using EnvelopingInstance = HopfAlgebroidInstance<PBWElement, Rational, PBWTensor<2>, PBWTensor<3>>;

namespace detail {

inline Vars default_coordinates(std::size_t n) {
  static const char* names[] = {"x", "y", "z"};
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(n <= 3 ? std::string(names[i]) : "x" + std::to_string(i + 1));
  return make_vars(v);
}

}  // namespace detail

/// {c d^I : c monomial of degree <= max_degree, |I| <= max_order}.
inline std::vector<PolyDiffOp> diffop_probes(const Vars& vars, std::uint32_t max_degree, std::uint32_t max_order) {
  std::vector<PolyDiffOp> out;
  for (const auto& c : monomials_up_to(vars, max_degree))
    for (const auto& I : multi_indices_up_to(var_count(vars), max_order)) out.push_back(PolyDiffOp::term(c, {I}));
  return out;
}

/// D(R^n) over R = polynomials with a caller-supplied coproduct (the honest
/// one is leibniz_coproduct).
inline DiffOpInstance dp_instance_with(const Vars& vars, std::function<PolyDiffOp(const PolyDiffOp&)> delta,
                                       std::uint32_t max_degree = 2, std::uint32_t max_order = 2) {
  DiffOpInstance I;
  I.name = "D(R^" + std::to_string(var_count(vars)) + ")";
  I.one = PolyDiffOp::identity(vars);
  I.base_one = Poly::one(vars);
  I.one_two = PolyDiffOp::identity(vars, 2);
  I.mul = [](const PolyDiffOp& a, const PolyDiffOp& b) { return compose(a, b); };
  I.base_mul = [](const Poly& a, const Poly& b) { return a * b; };
  I.alpha = [](const Poly& f) { return PolyDiffOp::multiplication(f); };
  I.beta = [](const Poly& f) { return PolyDiffOp::multiplication(f); };
  I.coproduct = delta;
  I.counit = [](const PolyDiffOp& D) { return counit(D); };
  I.act_plain = [](const PolyDiffOp& X, const PolyDiffOp& l, const PolyDiffOp& r) {
    return slotwise_product(X, plain_tensor({l, r}));
  };
  I.two_mul = [](const PolyDiffOp& X, const PolyDiffOp& Y) { return slotwise_product(X, Y); };
  I.coproduct_left = [delta](const PolyDiffOp& B) {
    PolyDiffOp out(B.vars(), 3);
    for (const auto& [k, c] : B.terms()) {
      Exponents J = B.slot(k, 1);
      PolyDiffOp D = delta(PolyDiffOp::term(c, {B.slot(k, 0)}));
      for (const auto& [kd, d] : D.terms()) out.add_term(detail::concat_key({D.slot(kd, 0), D.slot(kd, 1), J}), d);
    }
    return out;
  };
  I.coproduct_right = [delta](const PolyDiffOp& B) {
    PolyDiffOp out(B.vars(), 3);
    for (const auto& [k, c] : B.terms()) {
      PolyDiffOp first = PolyDiffOp::term(c, {B.slot(k, 0)});
      PolyDiffOp D = delta(PolyDiffOp::derivative(B.vars(), B.slot(k, 1)));
      for (const auto& [kd, d] : D.terms()) {
        SlotTensor T({first, PolyDiffOp::term(d, {D.slot(kd, 0)}), PolyDiffOp::derivative(B.vars(), D.slot(kd, 1))});
        out += normalize(T, B.vars(), 3);
      }
    }
    return out;
  };
  I.counit_left = [](const PolyDiffOp& B) {
    PolyDiffOp out(B.vars(), 1);
    for (const auto& el : representative(B).terms)
      out += el.scale * compose(PolyDiffOp::multiplication(counit(el.slots[0])), el.slots[1]);
    return out;
  };
  I.counit_right = [](const PolyDiffOp& B) {
    PolyDiffOp out(B.vars(), 1);
    for (const auto& el : representative(B).terms)
      out += el.scale * compose(PolyDiffOp::multiplication(counit(el.slots[1])), el.slots[0]);
    return out;
  };
  I.flip = [](const PolyDiffOp& B) { return flip(B); };
  I.str = [](const PolyDiffOp& D) { return D.to_string(); };
  I.base_str = [](const Poly& f) { return f.to_string(); };
  I.two_str = I.str;
  I.three_str = I.str;
  I.probes = diffop_probes(vars, max_degree, max_order);
  I.pair_probes = I.probes;
  I.base_probes = monomials_up_to(vars, max_degree);
  return I;
}

/// Example 2.1: D(R^n) with alpha = beta the inclusion, Leibniz coproduct,
/// counit = zero-order part.
inline DiffOpInstance dp_instance(std::size_t n, std::uint32_t max_degree = 2, std::uint32_t max_order = 2) {
  if (n == 0) throw precondition_error("dp_instance: n must be >= 1");
  return dp_instance_with(detail::default_coordinates(n), [](const PolyDiffOp& D) { return leibniz_coproduct(D); },
                          max_degree, max_order);
}

/// Negative control: the Leibniz coproduct with every 1 (x) d^I term (I != 0)
/// dropped, so Delta(d) = d (x) 1.
inline PolyDiffOp corrupted_coproduct(const PolyDiffOp& D) {
  PolyDiffOp full = leibniz_coproduct(D);
  PolyDiffOp out(D.vars(), 2);
  for (const auto& [k, c] : full.terms()) {
    if (total_degree(full.slot(k, 0)) == 0 && total_degree(full.slot(k, 1)) != 0) continue;
    out.add_term(k, c);
  }
  return out;
}

inline DiffOpInstance dp_corrupted_instance(std::size_t n, std::uint32_t max_degree = 2, std::uint32_t max_order = 2) {
  DiffOpInstance I = dp_instance_with(detail::default_coordinates(n), corrupted_coproduct, max_degree, max_order);
  I.name += " (corrupted coproduct)";
  return I;
}

/// Example 2.2 over a point: U(g) with primitive generators.
inline EnvelopingInstance ug_instance(const LieAlgebraData& g, std::uint32_t pbw_degree = 3) {
  g.validate();
  auto U = std::make_shared<PBWAlgebra>(g);
  const std::size_t n = U->dim();
  EnvelopingInstance I;
  I.name = "U(g), dim " + std::to_string(n);
  I.one = U->one();
  I.base_one = Rational(1);
  I.one_two = PBWTensor<2>(n);
  I.one_two.add_term({PBWMono(n, 0), PBWMono(n, 0)}, Rational(1));
  I.mul = [U](const PBWElement& a, const PBWElement& b) { return U->mul(a, b); };
  I.base_mul = [](const Rational& a, const Rational& b) { return Rational(a * b); };
  I.alpha = [n](const Rational& a) { return PBWElement::constant(n, a); };
  I.beta = I.alpha;
  I.coproduct = [U](const PBWElement& a) { return U->coproduct(a); };
  I.counit = [U](const PBWElement& a) { return U->counit(a); };
  I.act_plain = [U, n](const PBWTensor<2>& X, const PBWElement& l, const PBWElement& r) {
    PBWTensor<2> Y(n);
    PBWAlgebra::expand<2>({l, r}, Rational(1), Y);
    return U->tensor_mul(X, Y);
  };
  I.two_mul = [U](const PBWTensor<2>& X, const PBWTensor<2>& Y) { return U->tensor_mul(X, Y); };
  I.coproduct_left = [U, n](const PBWTensor<2>& X) {
    PBWTensor<3> out(n);
    for (const auto& [k, c] : X.terms()) {
      PBWTensor<2> d = U->coproduct(PBWElement::monomial(k[0]));
      for (const auto& [k2, c2] : d.terms()) out.add_term({k2[0], k2[1], k[1]}, c * c2);
    }
    return out;
  };
  I.coproduct_right = [U, n](const PBWTensor<2>& X) {
    PBWTensor<3> out(n);
    for (const auto& [k, c] : X.terms()) {
      PBWTensor<2> d = U->coproduct(PBWElement::monomial(k[1]));
      for (const auto& [k2, c2] : d.terms()) out.add_term({k[0], k2[0], k2[1]}, c * c2);
    }
    return out;
  };
  I.counit_left = [U, n](const PBWTensor<2>& X) {
    PBWElement out(n);
    for (const auto& [k, c] : X.terms()) out += (c * U->counit(PBWElement::monomial(k[0]))) * PBWElement::monomial(k[1]);
    return out;
  };
  I.counit_right = [U, n](const PBWTensor<2>& X) {
    PBWElement out(n);
    for (const auto& [k, c] : X.terms()) out += (c * U->counit(PBWElement::monomial(k[1]))) * PBWElement::monomial(k[0]);
    return out;
  };
  I.flip = [n](const PBWTensor<2>& X) {
    PBWTensor<2> out(n);
    for (const auto& [k, c] : X.terms()) out.add_term({k[1], k[0]}, c);
    return out;
  };
  auto names = g.basis();
  I.str = [names](const PBWElement& a) { return a.to_string(names); };
  I.base_str = [](const Rational& a) { return to_string(a); };
  I.two_str = [names](const PBWTensor<2>& a) { return a.to_string(names); };
  I.three_str = [names](const PBWTensor<3>& a) { return a.to_string(names); };
  I.probes = U->monomials_up_to(pbw_degree);
  I.pair_probes = I.probes;
  I.base_probes = {Rational(1), make_rational(-2, 3)};
  return I;
}

/// Eq. (1): (Delta (x) id) Delta(h) - (id (x) Delta) Delta(h).
template <class Inst>
CheckReport check_coassociativity(const Inst& I) {
  CheckReport rep{"coassociativity"};
  for (const auto& h : I.probes) {
    auto d = I.coproduct(h);
    rep.record(I.str(h), I.coproduct_left(d) - I.coproduct_right(d), I.three_str);
  }
  return rep;
}

/// Eq. (2): Delta(h) (beta(a) (x) 1 - 1 (x) alpha(a)) = 0.
template <class Inst>
CheckReport check_eq2(const Inst& I) {
  CheckReport rep{"compatibility_eq2"};
  for (const auto& h : I.probes) {
    auto d = I.coproduct(h);
    for (const auto& a : I.base_probes) {
      auto r = I.act_plain(d, I.beta(a), I.one) - I.act_plain(d, I.one, I.alpha(a));
      rep.record("h = " + I.str(h) + ", a = " + I.base_str(a), r, I.two_str);
    }
  }
  return rep;
}

/// Eq. (3): Delta(h1 h2) = Delta(h1) Delta(h2), plus Delta(1) = 1 (x) 1.
template <class Inst>
CheckReport check_eq3(const Inst& I) {
  CheckReport rep{"compatibility_eq3"};
  rep.record("Delta(1)", I.coproduct(I.one) - I.one_two, I.two_str);
  std::vector<typename Inst::Two> deltas;
  deltas.reserve(I.pair_probes.size());
  for (const auto& h : I.pair_probes) deltas.push_back(I.coproduct(h));
  for (std::size_t i = 0; i < I.pair_probes.size(); ++i)
    for (std::size_t j = 0; j < I.pair_probes.size(); ++j) {
      auto r = I.coproduct(I.mul(I.pair_probes[i], I.pair_probes[j])) - I.two_mul(deltas[i], deltas[j]);
      rep.record("h1 = " + I.str(I.pair_probes[i]) + ", h2 = " + I.str(I.pair_probes[j]), r, I.two_str);
    }
  return rep;
}

template <class Inst>
CheckReport check_compatibility(const Inst& I) {
  CheckReport rep{"compatibility"};
  rep.merge(check_eq2(I));
  rep.merge(check_eq3(I));
  return rep;
}

/// Eq. (4): both counit identities, eps(1) = 1, and the bimodule property
/// eps(alpha(a) beta(b) h) = a eps(h) b.
template <class Inst>
CheckReport check_counit(const Inst& I) {
  CheckReport rep{"counit"};
  rep.record_flag("eps(1)", I.counit(I.one) == I.base_one, "eps(1) = " + I.base_str(I.counit(I.one)));
  for (const auto& h : I.probes) {
    auto d = I.coproduct(h);
    rep.record("(eps (x) id) Delta(" + I.str(h) + ")", I.counit_left(d) - h, I.str);
    rep.record("(id (x) eps) Delta(" + I.str(h) + ")", I.counit_right(d) - h, I.str);
  }
  for (const auto& h : I.pair_probes) {
    auto eh = I.counit(h);
    for (const auto& a : I.base_probes)
      for (const auto& b : I.base_probes) {
        auto lhs = I.counit(I.mul(I.mul(I.alpha(a), I.beta(b)), h));
        auto rhs = I.base_mul(I.base_mul(a, eh), b);
        rep.record_flag("eps(alpha(" + I.base_str(a) + ") beta(" + I.base_str(b) + ") " + I.str(h) + ")", lhs == rhs,
                        I.base_str(lhs) + " != " + I.base_str(rhs));
      }
  }
  return rep;
}

/// Definition 2.1 part 1: alpha a homomorphism, beta an anti-homomorphism,
/// and [alpha(a), beta(b)] = 0.
template <class Inst>
CheckReport check_source_target(const Inst& I) {
  CheckReport rep{"source_target"};
  for (const auto& a : I.base_probes)
    for (const auto& b : I.base_probes) {
      std::string tag = "a = " + I.base_str(a) + ", b = " + I.base_str(b);
      rep.record("alpha(ab): " + tag, I.alpha(I.base_mul(a, b)) - I.mul(I.alpha(a), I.alpha(b)), I.str);
      rep.record("beta(ab): " + tag, I.beta(I.base_mul(a, b)) - I.mul(I.beta(b), I.beta(a)), I.str);
      rep.record("[alpha(a), beta(b)]: " + tag,
                 I.mul(I.alpha(a), I.beta(b)) - I.mul(I.beta(b), I.alpha(a)), I.str);
    }
  return rep;
}

/// sigma o Delta = Delta.
template <class Inst>
CheckReport check_cocommutativity(const Inst& I) {
  CheckReport rep{"cocommutativity"};
  for (const auto& h : I.probes) {
    auto d = I.coproduct(h);
    rep.record(I.str(h), I.flip(d) - d, I.two_str);
  }
  return rep;
}

/// The full Definition 2.1 suite in a fixed order.
template <class Inst>
std::vector<CheckReport> classical_suite(const Inst& I) {
  return {check_source_target(I), check_coassociativity(I), check_compatibility(I), check_counit(I),
          check_cocommutativity(I)};
}

}  // namespace qgroupoid
