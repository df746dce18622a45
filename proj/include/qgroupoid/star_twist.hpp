#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qgroupoid/diffop.hpp"
#include "qgroupoid/errors.hpp"
#include "qgroupoid/poisson.hpp"
#include "qgroupoid/series.hpp"

namespace qgroupoid {

using OpSeries = HbarSeries<PolyDiffOp>;
using PolySeries = HbarSeries<Poly>;

namespace detail {

inline auto op_compose() {
  return [](const PolyDiffOp& a, const PolyDiffOp& b) { return compose(a, b); };
}
inline auto op_slotwise() {
  return [](const PolyDiffOp& a, const PolyDiffOp& b) { return slotwise_product(a, b); };
}

}  // namespace detail

inline OpSeries zero_ops(const Vars& vars, std::size_t arity, std::size_t order) {
  return OpSeries(order, PolyDiffOp(vars, arity));
}
inline PolySeries zero_polys(const Vars& vars, std::size_t order) { return PolySeries(order, Poly(vars)); }
inline PolySeries poly_series(const Poly& f, std::size_t order) { return PolySeries::constant(order, f, Poly(f.vars())); }
inline OpSeries op_series(const PolyDiffOp& D, std::size_t order) {
  return OpSeries::constant(order, D, PolyDiffOp(D.vars(), D.arity()));
}

/// phi = 1 (x) 1 + hbar B_1 + ... in (D (x)_R D)[[hbar]], bidifferential normal forms.
class Twist {
 public:
  Twist() = default;
  Twist(OpSeries phi, std::string label = "twist") : phi_(std::move(phi)), label_(std::move(label)) {
    if (phi_[0].arity() != 2) throw invalid_structure_error("Twist: coefficients must be bidifferential");
    for (std::size_t k = 0; k <= phi_.order(); ++k)
      if (phi_[k].arity() != 2) throw invalid_structure_error("Twist: coefficients must be bidifferential");
    if (!(phi_[0] == PolyDiffOp::identity(phi_[0].vars(), 2)))
      throw invalid_structure_error("Twist: leading term must be 1 (x) 1, got " + phi_[0].to_string());
  }

  const OpSeries& series() const { return phi_; }
  const PolyDiffOp& operator[](std::size_t k) const { return phi_[k]; }
  std::size_t order() const { return phi_.order(); }
  const Vars& vars() const { return phi_[0].vars(); }
  const std::string& label() const { return label_; }

  /// Order-by-order inverse under the slotwise product.
  OpSeries inverse() const { return series_invert(phi_, detail::op_slotwise(), phi_[0]); }

 private:
  OpSeries phi_;
  std::string label_;
};

inline Twist identity_twist(const Vars& vars, std::size_t order) {
  return Twist(op_series(PolyDiffOp::identity(vars, 2), order), "identity");
}

/// phi = exp((hbar/2) pi^{ij} d_i (x) d_j), pi constant and antisymmetric.
inline Twist moyal_twist(const Vars& vars, const RatMatrix& pi, std::size_t order) {
  const std::size_t n = var_count(vars);
  require_antisymmetric(pi, n, "moyal_twist");
  PolyDiffOp B(vars, 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (is_zero(pi[i][j])) continue;
      Exponents I(n, 0), J(n, 0);
      I[i] = 1;
      J[j] = 1;
      B += PolyDiffOp::term(Poly::constant(vars, pi[i][j] / 2), {I, J});
    }
  }
  OpSeries phi = zero_ops(vars, 2, order);
  PolyDiffOp power = PolyDiffOp::identity(vars, 2);
  for (std::size_t k = 0; k <= order; ++k) {
    if (k > 0) power = slotwise_product(power, B);
    phi[k] = Rational(1, 1) / factorial(static_cast<std::uint32_t>(k)) * power;
  }
  return Twist(std::move(phi), "moyal");
}

/// phi = exp((hbar/2) c^{ij} X_i (x) X_j) for pairwise commuting first-order
/// operators X_i. Powers are taken with X_j kept in slot 2, so
/// P^k(f, g) = sum c.. (X_{i1}..X_{ik} f)(X_{j1}..X_{jk} g) / 2^k.
inline Twist commuting_frame_twist(const Vars& vars, const std::vector<PolyDiffOp>& frame, const RatMatrix& c,
                                   std::size_t order) {
  const std::size_t r = frame.size();
  require_antisymmetric(c, r, "commuting_frame_twist");
  for (const auto& X : frame) {
    require_same_vars(vars, X.vars(), "commuting_frame_twist");
    if (X.arity() != 1 || X.order() > 1)
      throw precondition_error("commuting_frame_twist: frame fields must be first-order operators");
  }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      if (!(compose(frame[i], frame[j]) == compose(frame[j], frame[i])))
        throw precondition_error("commuting_frame_twist: frame fields " + std::to_string(i) + " and " +
                                 std::to_string(j) + " do not commute");
  SlotTensor P;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (!is_zero(c[i][j])) P = P + SlotTensor({frame[i], frame[j]}, c[i][j] / 2);
  OpSeries phi = zero_ops(vars, 2, order);
  PolyDiffOp power = PolyDiffOp::identity(vars, 2);
  for (std::size_t k = 0; k <= order; ++k) {
    if (k > 0) power = P.terms.empty() ? PolyDiffOp(vars, 2) : slotwise_product(power, P);
    phi[k] = Rational(1) / factorial(static_cast<std::uint32_t>(k)) * power;
  }
  return Twist(std::move(phi), "commuting-frame");
}

/// One explicit term hbar^k * c * d^I (x) d^J.
struct TwistTerm {
  std::size_t order;
  Poly coefficient;
  Exponents left;
  Exponents right;
};

inline Twist explicit_twist(const Vars& vars, std::size_t order, const std::vector<TwistTerm>& terms) {
  OpSeries phi = zero_ops(vars, 2, order);
  for (const auto& t : terms) {
    if (t.order > order) continue;
    phi[t.order] += PolyDiffOp::term(t.coefficient, {t.left, t.right});
  }
  return Twist(std::move(phi), "explicit");
}

/// Negative control: 1 (x) 1 + hbar x d_x (x) d_x on the first coordinate.
inline Twist broken_twist(const Vars& vars, std::size_t order) {
  Exponents e(var_count(vars), 0);
  e[0] = 1;
  return explicit_twist(vars, order,
                        {{0, Poly::one(vars), Exponents(var_count(vars), 0), Exponents(var_count(vars), 0)},
                         {1, Poly::variable(vars, 0), e, e}});
}

/// Eq. (9): (Delta (x) id)(phi) phi^{12} - (id (x) Delta)(phi) phi^{23}. As a
/// tridifferential operator this is phi(phi(f,g),h) - phi(f,phi(g,h)).
inline OpSeries twistor_residual(const Twist& phi) {
  const std::size_t N = phi.order();
  const Vars& v = phi.vars();
  std::vector<PolyDiffOp> left_delta, right_delta, phi12;
  std::vector<SlotTensor> phi23;
  for (std::size_t k = 0; k <= N; ++k) {
    left_delta.push_back(coproduct_in_slot(phi[k], 0));
    right_delta.push_back(coproduct_in_slot(phi[k], 1));
    phi12.push_back(append_identity_slot(phi[k]));
    phi23.push_back(prepend_identity_slot(phi[k]));
  }
  OpSeries out = zero_ops(v, 3, N);
  for (std::size_t k = 0; k <= N; ++k)
    for (std::size_t a = 0; a <= k; ++a) {
      out[k] += slotwise_product(left_delta[a], phi12[k - a]);
      out[k] -= slotwise_product(right_delta[a], phi23[k - a]);
    }
  return out;
}

/// R_hbar with f * g = phi(f, g), plus the cached inverse twist.
class StarAlgebra {
 public:
  explicit StarAlgebra(Twist t) : twist_(std::move(t)), inverse_(twist_.inverse()) {}

  const Twist& twist() const { return twist_; }
  const OpSeries& inverse() const { return inverse_; }
  const Vars& vars() const { return twist_.vars(); }
  std::size_t order() const { return twist_.order(); }
  std::size_t base_dim() const { return var_count(vars()); }

  PolySeries star(const PolySeries& f, const PolySeries& g) const {
    const std::size_t N = std::min({order(), f.order(), g.order()});
    PolySeries out = zero_polys(vars(), N);
    for (std::size_t a = 0; a <= N; ++a)
      for (std::size_t b = 0; a + b <= N; ++b) {
        if (f[b].is_zero()) continue;
        for (std::size_t c = 0; a + b + c <= N; ++c) {
          if (g[c].is_zero()) continue;
          out[a + b + c] += apply(twist_[a], {f[b], g[c]});
        }
      }
    return out;
  }
  PolySeries star(const Poly& f, const Poly& g) const { return star(lift(f), lift(g)); }

  PolySeries lift(const Poly& f) const { return poly_series(f, order()); }

 private:
  Twist twist_;
  OpSeries inverse_;
};

inline PolySeries star_apply(const StarAlgebra& S, const PolySeries& f, const PolySeries& g) { return S.star(f, g); }

/// (f*g)*h - f*(g*h).
inline PolySeries assoc_residual(const StarAlgebra& S, const PolySeries& f, const PolySeries& g, const PolySeries& h) {
  return S.star(S.star(f, g), h) - S.star(f, S.star(g, h));
}
inline PolySeries assoc_residual(const StarAlgebra& S, const Poly& f, const Poly& g, const Poly& h) {
  return assoc_residual(S, S.lift(f), S.lift(g), S.lift(h));
}

/// {x_i, x_j} = B_1(x_i, x_j) - B_1(x_j, x_i).
inline PoissonBivector poisson_from_twist(const Twist& phi) {
  PoissonBivector b = PoissonBivector::zero(phi.vars());
  if (phi.order() < 1) return b;
  const std::size_t n = var_count(phi.vars());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Poly xi = Poly::variable(phi.vars(), i), xj = Poly::variable(phi.vars(), j);
      b.pi[i][j] = apply(phi[1], {xi, xj}) - apply(phi[1], {xj, xi});
    }
  return b;
}

/// alpha(f) g = f * g: sum hbar^{a+b} c (d^I f_b) d^J.
inline OpSeries alpha_h(const StarAlgebra& S, const PolySeries& f) {
  const std::size_t N = std::min(S.order(), f.order());
  OpSeries out = zero_ops(S.vars(), 1, N);
  for (std::size_t a = 0; a <= N; ++a) {
    const PolyDiffOp& B = S.twist()[a];
    for (std::size_t b = 0; a + b <= N; ++b) {
      if (f[b].is_zero()) continue;
      for (const auto& [k, c] : B.terms()) {
        Poly df = f[b].derivative(B.slot(k, 0));
        if (!df.is_zero()) out[a + b] += PolyDiffOp::term(c * df, {B.slot(k, 1)});
      }
    }
  }
  return out;
}

/// beta(f) g = g * f: sum hbar^{a+b} c (d^J f_b) d^I.
inline OpSeries beta_h(const StarAlgebra& S, const PolySeries& f) {
  const std::size_t N = std::min(S.order(), f.order());
  OpSeries out = zero_ops(S.vars(), 1, N);
  for (std::size_t a = 0; a <= N; ++a) {
    const PolyDiffOp& B = S.twist()[a];
    for (std::size_t b = 0; a + b <= N; ++b) {
      if (f[b].is_zero()) continue;
      for (const auto& [k, c] : B.terms()) {
        Poly df = f[b].derivative(B.slot(k, 1));
        if (!df.is_zero()) out[a + b] += PolyDiffOp::term(c * df, {B.slot(k, 0)});
      }
    }
  }
  return out;
}

inline OpSeries alpha_h(const StarAlgebra& S, const Poly& f) { return alpha_h(S, S.lift(f)); }
inline OpSeries beta_h(const StarAlgebra& S, const Poly& f) { return beta_h(S, S.lift(f)); }

/// eps_hbar(D) = D(1), coefficientwise.
inline PolySeries counit_h(const OpSeries& D) {
  return D.map([](const PolyDiffOp& d) { return counit(d); });
}

/// Composition of arity-1 operator series.
inline OpSeries compose_series(const OpSeries& a, const OpSeries& b) { return series_mul(a, b, detail::op_compose()); }
/// Slotwise product of bidifferential (or higher) normal-form series.
inline OpSeries slotwise_series(const OpSeries& a, const OpSeries& b) {
  return series_mul(a, b, detail::op_slotwise());
}

/// Series of plain tensors, e.g. beta(a) (x) 1 - 1 (x) alpha(a).
using TensorSeries = std::vector<SlotTensor>;

inline OpSeries slotwise_series(const OpSeries& a, const TensorSeries& b) {
  const std::size_t N = std::min(a.order(), b.size() - 1);
  OpSeries out = zero_ops(a[0].vars(), a[0].arity(), N);
  for (std::size_t k = 0; k <= N; ++k)
    for (std::size_t i = 0; i <= k; ++i) {
      if (a[i].is_zero() || b[k - i].terms.empty()) continue;
      out[k] += slotwise_product(a[i], b[k - i]);
    }
  return out;
}

/// beta_hbar(f) (x) 1 - 1 (x) alpha_hbar(f), slot placement kept.
inline TensorSeries source_target_difference(const StarAlgebra& S, const PolySeries& f) {
  OpSeries al = alpha_h(S, f), be = beta_h(S, f);
  PolyDiffOp id = PolyDiffOp::identity(S.vars());
  PolyDiffOp zero(S.vars(), 1);
  TensorSeries out;
  for (std::size_t k = 0; k <= al.order(); ++k) {
    SlotTensor t;
    if (!be[k].is_zero()) t = t + plain_tensor({be[k], id});
    if (!al[k].is_zero()) t = t - plain_tensor({id, al[k]});
    out.push_back(std::move(t));
  }
  return out;
}

/// Eq. (11): phi (beta(f) (x) 1 - 1 (x) alpha(f)).
inline OpSeries check_eq11(const StarAlgebra& S, const PolySeries& f) {
  return slotwise_series(S.twist().series(), source_target_difference(S, f));
}
inline OpSeries check_eq11(const StarAlgebra& S, const Poly& f) { return check_eq11(S, S.lift(f)); }

/// Phi-image of Delta_hbar(x): Delta(x) . phi, i.e. (f, g) -> x(f * g).
inline OpSeries stored_coproduct(const StarAlgebra& S, const OpSeries& x) {
  OpSeries dx = x.map([](const PolyDiffOp& d) { return leibniz_coproduct(d); });
  return slotwise_series(dx, S.twist().series());
}

/// One lifted term hbar^order * left (x) right.
struct LiftTerm {
  std::size_t order;
  PolyDiffOp left;
  PolyDiffOp right;
};

/// Phi^{-1}: T = phi^{-1} . W, then c d^I (x) d^J -> (c d^I, d^J).
inline std::vector<LiftTerm> canonical_lift(const StarAlgebra& S, const OpSeries& W) {
  OpSeries T = slotwise_series(S.inverse(), W);
  std::vector<LiftTerm> out;
  for (std::size_t k = 0; k <= T.order(); ++k)
    for (const auto& [key, c] : T[k].terms())
      out.push_back({k, PolyDiffOp::term(c, {T[k].slot(key, 0)}), PolyDiffOp::derivative(S.vars(), T[k].slot(key, 1))});
  return out;
}

/// Phi applied to a lifted sum: sum hbar^k phi . (left (x) right).
inline OpSeries relift(const StarAlgebra& S, const std::vector<LiftTerm>& terms, std::size_t order) {
  TensorSeries T(order + 1);
  for (const auto& t : terms)
    if (t.order <= order) T[t.order] = T[t.order] + plain_tensor({t.left, t.right});
  return slotwise_series(S.twist().series(), T);
}

/// Phi^{-1} sigma Phi on the lifted picture T = phi^{-1} W.
inline OpSeries flip_conjugate(const StarAlgebra& S, const OpSeries& T) {
  OpSeries W = slotwise_series(S.twist().series(), T);
  return slotwise_series(S.inverse(), W.map([](const PolyDiffOp& b) { return flip(b); }));
}

}  // namespace qgroupoid
