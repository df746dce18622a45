#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qgroupoid/errors.hpp"
#include "qgroupoid/lie_algebroid.hpp"
#include "qgroupoid/report.hpp"
#include "qgroupoid/star_twist.hpp"

namespace qgroupoid {

/// Stored form of 1 (x)_hbar X + X (x)_hbar 1 used in Delta^1 X.
///   transported: phi . (X (x) 1 + 1 (x) X)   (the Phi-image, Lemma 2.2)
///   plain:       X (x) 1 + 1 (x) X           (no phi)
/// The two differ already at hbar^1 by phi_1 . (X (x) 1 + 1 (x) X).
enum class SumConvention { transported, plain };

namespace detail {

inline void require_first_order(const StarAlgebra& S, const char* where) {
  if (S.order() < 1) throw precondition_error(std::string(where) + ": the instance must be deformed through hbar^1");
}

/// hbar^1 coefficient of f * g - g * f.
inline Poly hbar1_commutator(const StarAlgebra& S, const Poly& f, const Poly& g) {
  return (S.star(f, g) - S.star(g, f))[1];
}

}  // namespace detail

/// {x_i, x_j} = hbar^1 coefficient of x_i * x_j - x_j * x_i. Throws
/// invalid_structure_error when Jacobi fails.
inline PoissonBivector hbar1_bracket(const StarAlgebra& S) {
  detail::require_first_order(S, "hbar1_bracket");
  const std::size_t n = S.base_dim();
  PoissonBivector b = PoissonBivector::zero(S.vars());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      b.pi[i][j] = detail::hbar1_commutator(S, Poly::variable(S.vars(), i), Poly::variable(S.vars(), j));
  for (const auto& r : b.jacobi_residuals())
    if (!r.is_zero()) throw invalid_structure_error("hbar1_bracket: Jacobi fails, residual " + r.to_string());
  return b;
}

/// c_i d_i (first order, no zero-order part) as a section of TP; nullopt otherwise.
inline std::optional<Multivector<Poly>> as_vector_field(const PolyDiffOp& D) {
  Multivector<Poly> out(D.vars(), 1);
  for (const auto& [k, c] : D.terms()) {
    Exponents I = D.slot(k, 0);
    if (total_degree(I) != 1) return std::nullopt;
    std::size_t i = 0;
    while (I[i] == 0) ++i;
    out.add_term({i}, c);
  }
  return out;
}

/// sum c^{ij} d_i (x) d_j with c antisymmetric, as sum_{i<j} c^{ij} d_i ^ d_j;
/// nullopt if some term is not first order in each slot or c is not antisymmetric.
inline std::optional<Multivector<Poly>> as_bivector(const PolyDiffOp& B) {
  if (B.arity() != 2) return std::nullopt;
  const std::size_t n = B.base_dim();
  std::vector<std::vector<Poly>> c(n, std::vector<Poly>(n, Poly(B.vars())));
  auto index_of = [](const Exponents& I) -> std::optional<std::size_t> {
    if (total_degree(I) != 1) return std::nullopt;
    std::size_t i = 0;
    while (I[i] == 0) ++i;
    return i;
  };
  for (const auto& [k, coef] : B.terms()) {
    auto i = index_of(B.slot(k, 0)), j = index_of(B.slot(k, 1));
    if (!i || !j) return std::nullopt;
    c[*i][*j] += coef;
  }
  Multivector<Poly> out(B.vars(), 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!(c[i][j] == -c[j][i])) return std::nullopt;
      if (i < j) out.add_term({i, j}, c[i][j]);
    }
  return out;
}

/// Bidifferential operator of a section of wedge^2 TP: d_i ^ d_j -> d_i (x) d_j - d_j (x) d_i.
inline PolyDiffOp bivector_operator(const Multivector<Poly>& P) {
  PolyDiffOp out(P.vars(), 2);
  const std::size_t n = var_count(P.vars());
  for (const auto& [I, c] : P.terms()) {
    Exponents a(n, 0), b(n, 0);
    a[I[0]] = 1;
    b[I[1]] = 1;
    out += PolyDiffOp::term(c, {a, b});
    out -= PolyDiffOp::term(c, {b, a});
  }
  return out;
}

/// hbar^1 coefficient of alpha_hbar(f) - beta_hbar(f), as an operator.
inline PolyDiffOp delta_f_operator(const StarAlgebra& S, const Poly& f) {
  detail::require_first_order(S, "delta_f");
  return (alpha_h(S, f) - beta_h(S, f))[1];
}

/// delta f = lim (alpha_hbar f - beta_hbar f) / hbar as a section of TP.
/// Throws invalid_structure_error if the limit is not a vector field.
inline Multivector<Poly> delta_f(const StarAlgebra& S, const Poly& f) {
  PolyDiffOp D = delta_f_operator(S, f);
  auto v = as_vector_field(D);
  if (!v) throw invalid_structure_error("delta_f: limit for f = " + f.to_string() + " is not a vector field: " + D.to_string());
  return *v;
}

/// Delta_hbar(X) - (1 (x)_hbar X + X (x)_hbar 1) in stored form, order by order.
inline OpSeries delta_difference(const StarAlgebra& S, const PolyDiffOp& X, SumConvention conv) {
  const std::size_t N = S.order();
  OpSeries W = stored_coproduct(S, op_series(X, N));
  PolyDiffOp id = PolyDiffOp::identity(S.vars());
  SlotTensor P = plain_tensor({X, id}) + plain_tensor({id, X});
  if (conv == SumConvention::plain) {
    W[0] -= normalize(P, S.vars(), 2);
    return W;
  }
  TensorSeries T(N + 1);
  T[0] = P;
  return W - slotwise_series(S.twist().series(), T);
}

/// Delta^1 X: hbar^1 coefficient of delta_difference.
inline PolyDiffOp delta1_X(const StarAlgebra& S, const PolyDiffOp& X, SumConvention conv = SumConvention::transported) {
  detail::require_first_order(S, "delta_X");
  return delta_difference(S, X, conv)[1];
}

/// Delta^1_op X through Phi^{-1} sigma Phi applied to the hbar^0 part of
/// (Delta_hbar X - ...)/hbar.
inline PolyDiffOp delta1_op_X(const StarAlgebra& S, const PolyDiffOp& X, SumConvention conv = SumConvention::transported) {
  OpSeries D = delta_difference(S, X, conv);
  std::vector<PolyDiffOp> down(D.coefficients().begin() + 1, D.coefficients().end());
  return flip_conjugate(S, OpSeries(std::move(down)))[0];
}

/// delta X = Delta^1 X - Delta^1_op X as an operator.
inline PolyDiffOp delta_X_operator(const StarAlgebra& S, const PolyDiffOp& X, SumConvention conv = SumConvention::transported) {
  PolyDiffOp d1 = delta1_X(S, X, conv);
  return d1 - flip(d1);
}

/// delta X as a section of wedge^2 TP. Throws invalid_structure_error if not a bivector.
inline Multivector<Poly> delta_X(const StarAlgebra& S, const PolyDiffOp& X, SumConvention conv = SumConvention::transported) {
  PolyDiffOp D = delta_X_operator(S, X, conv);
  auto b = as_bivector(D);
  if (!b) throw invalid_structure_error("delta_X: limit for X = " + X.to_string() + " is not a bivector: " + D.to_string());
  return *b;
}

/// Everything Theorem B extracts from D_hbar(P), with the residual checks of
/// Prop. 3.1 (i)-(iv), Prop. 3.2 and the Poisson statement of Theorem B.
struct ClassicalLimitReport {
  PoissonBivector bracket;
  std::vector<std::pair<std::string, Multivector<Poly>>> delta_functions;  // coordinates
  std::vector<std::pair<std::string, Multivector<Poly>>> delta_frame;      // coordinate fields
  LieBialgebroidData<Poly> bialgebroid;
  std::vector<CheckReport> checks;  // prop31_i .. prop31_iv, prop32_eq15, prop32_eq16, theorem_b_poisson

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed()) return false;
    return true;
  }
};

/// The induced bialgebroid (TP, T*P): delta on functions from alpha - beta,
/// on coordinate fields from Delta^1 - Delta^1_op. Throws if a generator
/// does not give a (bi)vector.
inline LieBialgebroidData<Poly> limit_bialgebroid(const StarAlgebra& S, SumConvention conv = SumConvention::transported) {
  auto A = tangent_algebroid<Poly>(S.vars());
  auto frame = std::make_shared<std::vector<Multivector<Poly>>>();
  for (std::size_t a = 0; a < A.rank(); ++a) frame->push_back(delta_X(S, PolyDiffOp::partial(S.vars(), a), conv));
  auto star = std::make_shared<const StarAlgebra>(S);
  return {A, [star](const Poly& f) { return delta_f(*star, f); }, [frame](std::size_t a) { return frame->at(a); }};
}

/// Runs the Theorem B extraction. Functions probed: monomials of degree
/// <= max_degree; sections probed: m d_a with deg m <= max_degree - 1.
inline ClassicalLimitReport assemble_bialgebroid(const StarAlgebra& S, std::uint32_t max_degree = 2,
                                                 SumConvention conv = SumConvention::transported) {
  using MV = Multivector<Poly>;
  detail::require_first_order(S, "assemble_bialgebroid");
  const Vars& v = S.vars();
  const std::size_t n = S.base_dim();
  auto A = tangent_algebroid<Poly>(v);
  const auto& nm = A.frame_names;
  auto mstr = [&nm](const MV& m) { return m.to_string(nm); };
  auto pstr = [](const Poly& p) { return p.to_string(); };

  ClassicalLimitReport out{hbar1_bracket(S), {}, {}, zero_differential(A), {}};
  CheckReport p1{"prop31_i"}, p2{"prop31_ii"}, p3{"prop31_iii"}, p4{"prop31_iv"}, pb{"theorem_b_poisson"};

  auto fns = monomials_up_to(v, max_degree);
  std::vector<MV> df;
  for (const auto& f : fns) {
    PolyDiffOp D = delta_f_operator(S, f);
    auto vf = as_vector_field(D);
    p1.record_flag("delta f in Gamma(A), f = " + f.to_string(), vf.has_value(), D.to_string());
    df.push_back(vf ? *vf : MV(v, 1));
  }
  std::vector<PolyDiffOp> coord_fields;
  for (std::size_t a = 0; a < n; ++a) coord_fields.push_back(PolyDiffOp::partial(v, a));
  std::vector<MV> dX;
  for (std::size_t a = 0; a < n; ++a) {
    PolyDiffOp D = delta_X_operator(S, coord_fields[a], conv);
    auto bv = as_bivector(D);
    p1.record_flag("delta X in Gamma(wedge^2 A), X = " + nm[a], bv.has_value(), D.to_string());
    dX.push_back(bv ? *bv : MV(v, 2));
  }
  if (!p1.passed()) {
    out.checks = {p1, p2, p3, p4, pb};
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    Poly xi = Poly::variable(v, i);
    auto it = std::find(fns.begin(), fns.end(), xi);
    out.delta_functions.emplace_back((*v)[i], it != fns.end() ? df[it - fns.begin()] : delta_f(S, xi));
  }
  for (std::size_t a = 0; a < n; ++a) out.delta_frame.emplace_back(nm[a], dX[a]);

  // (ii) and (iv) on function pairs
  for (std::size_t i = 0; i < fns.size(); ++i)
    for (std::size_t j = 0; j < fns.size(); ++j) {
      const Poly &f = fns[i], &g = fns[j];
      std::string tag = "f = " + f.to_string() + ", g = " + g.to_string();
      if (j >= i && (f * g).degree() <= max_degree + 1) {
        MV lhs = delta_f(S, f * g);
        p2.record(tag, lhs - (f * df[j] + g * df[i]), mstr);
      }
      p4.record(tag, A.anchor_apply(df[i], g) - detail::hbar1_commutator(S, f, g), pstr);
    }
  // (iii) delta(f X) = f delta X + delta f ^ X, computed directly for f X
  for (std::size_t i = 0; i < fns.size(); ++i) {
    if (fns[i].degree() + 1 > max_degree) continue;
    for (std::size_t a = 0; a < n; ++a) {
      PolyDiffOp fX = fns[i] * coord_fields[a];
      PolyDiffOp D = delta_X_operator(S, fX, conv);
      auto bv = as_bivector(D);
      std::string tag = "f = " + fns[i].to_string() + ", X = " + nm[a];
      p1.record_flag("delta X in Gamma(wedge^2 A), X = " + fX.to_string(), bv.has_value(), D.to_string());
      if (!bv) continue;
      p3.record(tag, *bv - (fns[i] * dX[a] + wedge(df[i], MV::frame(v, a))), mstr);
    }
  }

  out.bialgebroid = limit_bialgebroid(S, conv);
  auto compat = bialgebroid_compat_check(out.bialgebroid, max_degree > 0 ? max_degree - 1 : 0);
  compat[0].name = "prop32_eq16";
  compat[1].name = "prop32_eq15";
  try {
    PoissonBivector base = base_poisson(out.bialgebroid);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        pb.record("{" + (*v)[i] + ", " + (*v)[j] + "}", base.pi[i][j] - out.bracket.pi[i][j], pstr);
  } catch (const invalid_structure_error& e) {
    pb.error = e.what();
  }
  out.checks = {p1, p2, p3, p4, compat[1], compat[0], pb};
  return out;
}

}  // namespace qgroupoid
