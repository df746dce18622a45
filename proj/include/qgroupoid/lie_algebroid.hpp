#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qgroupoid/errors.hpp"
#include "qgroupoid/lie_algebra.hpp"
#include "qgroupoid/poisson.hpp"
#include "qgroupoid/poly.hpp"
#include "qgroupoid/ratfun.hpp"
#include "qgroupoid/report.hpp"

namespace qgroupoid {

/// Section of wedge^p A in a fixed frame e_0..e_{r-1}: index sets are strictly
/// increasing, zero coefficients are never stored. C is Poly or RatFun.
template <class C>
class Multivector {
 public:
  using Index = std::vector<std::size_t>;

  Multivector() = default;
  Multivector(Vars vars, std::size_t degree) : vars_(std::move(vars)), degree_(degree) {}

  static Multivector function(const C& f) {
    Multivector m(f.vars(), 0);
    m.add_term({}, f);
    return m;
  }
  /// f e_{I}; I need not be sorted (sign of the sorting permutation applies).
  static Multivector term(const C& f, Index I) {
    Multivector m(f.vars(), I.size());
    int s = sort_sign(I);
    if (s != 0) m.add_term(I, s > 0 ? f : -f);
    return m;
  }
  static Multivector frame(const Vars& vars, std::size_t a) { return term(C::one(vars), {a}); }

  const Vars& vars() const { return vars_; }
  std::size_t degree() const { return degree_; }
  const std::map<Index, C>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  C coefficient(const Index& I) const {
    auto it = terms_.find(I);
    return it == terms_.end() ? C(vars_) : it->second;
  }
  /// Degree-0 value (zero for other degrees).
  C value() const { return coefficient({}); }

  void add_term(const Index& I, const C& c) {
    if (I.size() != degree_) throw structural_error("Multivector: index set has the wrong degree");
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(I, c);
    if (fresh) return;
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  Multivector& operator+=(const Multivector& o) {
    adopt_degree(o, "Multivector +");
    for (const auto& [I, c] : o.terms_) add_term(I, c);
    return *this;
  }
  Multivector& operator-=(const Multivector& o) {
    adopt_degree(o, "Multivector -");
    for (const auto& [I, c] : o.terms_) add_term(I, -c);
    return *this;
  }
  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator-(const Multivector& a) { return Multivector(a.vars_, a.degree_) - a; }
  friend Multivector operator*(const C& f, const Multivector& a) {
    Multivector out(a.vars_, a.degree_);
    if (f.is_zero()) return out;
    for (const auto& [I, c] : a.terms_) out.add_term(I, f * c);
    return out;
  }
  friend Multivector operator*(const Rational& s, const Multivector& a) {
    Multivector out(a.vars_, a.degree_);
    for (const auto& [I, c] : a.terms_) out.add_term(I, s * c);
    return out;
  }
  friend bool operator==(const Multivector& a, const Multivector& b) {
    // zero is zero in every degree
    return a.terms_ == b.terms_ && (a.degree_ == b.degree_ || a.terms_.empty());
  }

  /// Sign of the permutation sorting I (I is sorted in place); 0 on a repeat.
  static int sort_sign(Index& I) {
    int s = 1;
    for (std::size_t i = 1; i < I.size(); ++i)
      for (std::size_t j = i; j > 0 && I[j - 1] >= I[j]; --j) {
        if (I[j - 1] == I[j]) return 0;
        std::swap(I[j - 1], I[j]);
        s = -s;
      }
    return s;
  }

  std::string to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [I, c] : terms_) {
      if (!out.empty()) out += " + ";
      std::string w;
      for (std::size_t k = 0; k < I.size(); ++k) w += (k ? "^" : "") + names.at(I[k]);
      if (I.empty()) {
        out += c.to_string();
      } else if (c == C::one(vars_)) {
        out += w;
      } else {
        out += "(" + c.to_string() + ")*" + w;
      }
    }
    return out;
  }

 private:
  // a zero multivector takes the degree of whatever is added to it
  void adopt_degree(const Multivector& o, const char* where) {
    if (o.degree_ == degree_ || o.is_zero()) return;
    if (!is_zero()) throw structural_error(std::string(where) + ": degree mismatch");
    degree_ = o.degree_;
  }

  Vars vars_;
  std::size_t degree_ = 0;
  std::map<Index, C> terms_;
};

template <class C>
Multivector<C> wedge(const Multivector<C>& a, const Multivector<C>& b) {
  Multivector<C> out(a.vars(), a.degree() + b.degree());
  for (const auto& [I, c] : a.terms())
    for (const auto& [J, d] : b.terms()) {
      typename Multivector<C>::Index K = I;
      K.insert(K.end(), J.begin(), J.end());
      int s = Multivector<C>::sort_sign(K);
      if (s == 0) continue;
      C cd = c * d;
      out.add_term(K, s > 0 ? cd : -cd);
    }
  return out;
}

/// Lie algebroid over R^n (or a rational-function base) given in a global
/// frame: rho(e_a) = sum_i anchor[a][i] d_i, [e_a, e_b] = sum_k c[a][b][k] e_k.
template <class C>
struct LieAlgebroidData {
  Vars vars;
  std::vector<std::string> frame_names;
  std::vector<std::vector<C>> anchor;                   // r x n
  std::vector<std::vector<std::vector<C>>> structure;  // r x r x r

  std::size_t base_dim() const { return var_count(vars); }
  std::size_t rank() const { return frame_names.size(); }

  C zero() const { return C(vars); }

  /// rho(e_a) f.
  C anchor_apply(std::size_t a, const C& f) const {
    C out = zero();
    for (std::size_t i = 0; i < base_dim(); ++i)
      if (!anchor[a][i].is_zero()) out = out + anchor[a][i] * f.partial(i);
    return out;
  }
  /// rho(X) f for a degree-1 section X.
  C anchor_apply(const Multivector<C>& X, const C& f) const {
    C out = zero();
    for (const auto& [I, c] : X.terms()) out = out + c * anchor_apply(I[0], f);
    return out;
  }

  /// [f e_a, g e_b] = fg c_{ab}^k e_k + f rho_a(g) e_b - g rho_b(f) e_a.
  Multivector<C> section_bracket(const Multivector<C>& X, const Multivector<C>& Y) const {
    Multivector<C> out(vars, 1);
    for (const auto& [I, f] : X.terms())
      for (const auto& [J, g] : Y.terms()) {
        const std::size_t a = I[0], b = J[0];
        C fg = f * g;
        for (std::size_t k = 0; k < rank(); ++k)
          if (!structure[a][b][k].is_zero()) out.add_term({k}, fg * structure[a][b][k]);
        out.add_term({b}, f * anchor_apply(a, g));
        out.add_term({a}, -(g * anchor_apply(b, f)));
      }
    return out;
  }

  void validate() const {
    const std::size_t r = rank(), n = base_dim();
    if (anchor.size() != r) throw invalid_structure_error("LieAlgebroidData: anchor needs one row per frame element");
    for (const auto& row : anchor)
      if (row.size() != n) throw invalid_structure_error("LieAlgebroidData: anchor rows need base_dim entries");
    if (structure.size() != r) throw invalid_structure_error("LieAlgebroidData: structure functions have wrong shape");
    for (std::size_t a = 0; a < r; ++a) {
      if (structure[a].size() != r) throw invalid_structure_error("LieAlgebroidData: structure functions have wrong shape");
      for (std::size_t b = 0; b < r; ++b) {
        if (structure[a][b].size() != r)
          throw invalid_structure_error("LieAlgebroidData: structure functions have wrong shape");
        for (std::size_t k = 0; k < r; ++k)
          if (!(structure[a][b][k] == -structure[b][a][k]))
            throw invalid_structure_error("LieAlgebroidData: structure functions are not antisymmetric");
      }
    }
  }
};

template <class C>
LieAlgebroidData<C> empty_algebroid(const Vars& vars, std::vector<std::string> frame_names) {
  LieAlgebroidData<C> A;
  A.vars = vars;
  A.frame_names = std::move(frame_names);
  const std::size_t r = A.rank(), n = var_count(vars);
  A.anchor.assign(r, std::vector<C>(n, C(vars)));
  A.structure.assign(r, std::vector<std::vector<C>>(r, std::vector<C>(r, C(vars))));
  return A;
}

/// TP on the coordinate space `vars`: frame d_i, identity anchor, zero brackets.
template <class C = Poly>
LieAlgebroidData<C> tangent_algebroid(const Vars& vars) {
  const std::size_t n = var_count(vars);
  if (n == 0) throw precondition_error("tangent_algebroid: n >= 1 required");
  std::vector<std::string> names;
  for (const auto& x : *vars) names.push_back("d" + x);
  LieAlgebroidData<C> A = empty_algebroid<C>(vars, names);
  for (std::size_t i = 0; i < n; ++i) A.anchor[i][i] = C::one(vars);
  return A;
}

inline LieAlgebroidData<Poly> tangent_algebroid(std::size_t n) {
  if (n == 0) throw precondition_error("tangent_algebroid: n >= 1 required");
  std::vector<std::string> names;
  const char* xyz[] = {"x", "y", "z"};
  for (std::size_t i = 0; i < n; ++i) names.push_back(n <= 3 ? xyz[i] : "x" + std::to_string(i + 1));
  return tangent_algebroid<Poly>(make_vars(names));
}

/// g viewed as an algebroid with zero anchor over `vars` (a point if empty).
template <class C = Poly>
LieAlgebroidData<C> lie_algebra_algebroid(const LieAlgebraData& g, const Vars& vars) {
  LieAlgebroidData<C> A = empty_algebroid<C>(vars, g.basis());
  for (std::size_t a = 0; a < g.dim(); ++a)
    for (std::size_t b = 0; b < g.dim(); ++b) {
      const auto& s = g.structure(a, b);
      for (std::size_t k = 0; k < g.dim(); ++k) A.structure[a][b][k] = C::constant(vars, s[k]);
    }
  return A;
}

/// Schouten bracket on Gamma(wedge A) with [X, f] = rho(X) f and
/// [P, Q] = -(-1)^{(p-1)(q-1)} [Q, P]. On decomposable sections
/// [X_1..X_p, Y_1..Y_q] = sum (-1)^{i+j} [X_i, Y_j] X_1..^i..X_p Y_1..^j..Y_q.
template <class C>
Multivector<C> schouten(const LieAlgebroidData<C>& A, const Multivector<C>& P, const Multivector<C>& Q) {
  using MV = Multivector<C>;
  using Index = typename MV::Index;
  const std::size_t p = P.degree(), q = Q.degree();
  if (p == 0 && q == 0) return MV(A.vars, 0);
  if (p == 0) {
    MV r = schouten(A, Q, P);
    return (q % 2 == 0) ? r : -r;
  }
  MV out(A.vars, p + q - 1);
  auto drop = [](const Index& I, std::size_t i) {
    Index J = I;
    J.erase(J.begin() + static_cast<std::ptrdiff_t>(i));
    return J;
  };
  for (const auto& [I, f] : P.terms()) {
    if (q == 0) {
      // [X_1..X_p, g] = sum_i (-1)^{p-i} rho(X_i)(g) X_1..^i..X_p, coefficient f on X_1
      const C& g = Q.value();
      for (std::size_t i = 0; i < p; ++i) {
        C d = f * A.anchor_apply(I[i], g);
        if (d.is_zero()) continue;
        out += ((p - 1 - i) % 2 == 0 ? 1 : -1) * MV::term(d, drop(I, i));
      }
      continue;
    }
    for (const auto& [J, g] : Q.terms()) {
      for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < q; ++j) {
          // X_1 = f e_{I0} and Y_1 = g e_{J0} carry the coefficients
          MV Xi = MV::term(i == 0 ? f : C::one(A.vars), {I[i]});
          MV Yj = MV::term(j == 0 ? g : C::one(A.vars), {J[j]});
          MV br = A.section_bracket(Xi, Yj);
          C rest = (i == 0 ? C::one(A.vars) : f) * (j == 0 ? C::one(A.vars) : g);
          Index rI = drop(I, i), rJ = drop(J, j);
          rI.insert(rI.end(), rJ.begin(), rJ.end());
          MV w = wedge(br, MV::term(rest, rI));
          out += (((i + j) % 2 == 0) ? 1 : -1) * w;
        }
    }
  }
  return out;
}

/// Antisymmetric r x r coefficient matrix of a bivector, Lambda = 1/2 M^{ab} e_a ^ e_b.
template <class C>
std::vector<std::vector<C>> bivector_matrix(const LieAlgebroidData<C>& A, const Multivector<C>& L) {
  if (L.degree() != 2 && !L.is_zero()) throw structural_error("bivector_matrix: degree-2 multivector expected");
  std::vector<std::vector<C>> M(A.rank(), std::vector<C>(A.rank(), A.zero()));
  for (const auto& [I, c] : L.terms()) {
    M[I[0]][I[1]] = c;
    M[I[1]][I[0]] = -c;
  }
  return M;
}

/// Lie bialgebroid (A, A*) given through the differential d of A*: an
/// evaluator on functions and on frame elements, extended to all of
/// Gamma(wedge A) as a degree-1 derivation.
template <class C>
struct LieBialgebroidData {
  LieAlgebroidData<C> algebroid;
  std::function<Multivector<C>(const C&)> on_functions;
  std::function<Multivector<C>(std::size_t)> on_frame;

  /// delta(f e_I) = delta f ^ e_I + f sum_k (-1)^k e_{i_1}..delta e_{i_k}..e_{i_p}.
  Multivector<C> delta(const Multivector<C>& P) const {
    using MV = Multivector<C>;
    const Vars& v = algebroid.vars;
    MV out(v, P.degree() + 1);
    for (const auto& [I, f] : P.terms()) {
      out += wedge(on_functions(f), MV::term(C::one(v), I));
      for (std::size_t k = 0; k < I.size(); ++k) {
        typename MV::Index before(I.begin(), I.begin() + static_cast<std::ptrdiff_t>(k));
        typename MV::Index after(I.begin() + static_cast<std::ptrdiff_t>(k + 1), I.end());
        MV w = wedge(wedge(MV::term(f, before), on_frame(I[k])), MV::term(C::one(v), after));
        out += (k % 2 == 0 ? 1 : -1) * w;
      }
    }
    return out;
  }
  Multivector<C> delta(const C& f) const { return on_functions(f); }
};

template <class C>
LieBialgebroidData<C> zero_differential(const LieAlgebroidData<C>& A) {
  Vars v = A.vars;
  return {A, [v](const C&) { return Multivector<C>(v, 1); }, [v](std::size_t) { return Multivector<C>(v, 2); }};
}

/// delta_Lambda = -[Lambda, .]. The sign makes rho(delta f) g = Lambda^{ab} rho_a f rho_b g,
/// i.e. x -> d_p for Lambda = d_x ^ d_p.
template <class C>
LieBialgebroidData<C> triangular_differential(const LieAlgebroidData<C>& A, const Multivector<C>& Lambda) {
  if (Lambda.degree() != 2 && !Lambda.is_zero())
    throw precondition_error("triangular_differential: Lambda must be a bivector");
  Multivector<C> LL = schouten(A, Lambda, Lambda);
  if (!LL.is_zero())
    throw precondition_error("triangular_differential: [Lambda, Lambda] = " + LL.to_string(A.frame_names) + " != 0");
  auto L = std::make_shared<const Multivector<C>>(Lambda);
  return {A, [A, L](const C& f) { return -schouten(A, *L, Multivector<C>::function(f)); },
          [A, L](std::size_t a) { return -schouten(A, *L, Multivector<C>::frame(A.vars, a)); }};
}

/// Frame sections m e_a for monomials m of degree <= d.
template <class C>
std::vector<Multivector<C>> section_probes(const LieAlgebroidData<C>& A, std::uint32_t d) {
  std::vector<Multivector<C>> out;
  for (const auto& m : monomials_up_to(A.vars, d))
    for (std::size_t a = 0; a < A.rank(); ++a) out.push_back(Multivector<C>::term(C(m), {a}));
  return out;
}

template <class C>
std::vector<C> function_probes(const LieAlgebroidData<C>& A, std::uint32_t d) {
  std::vector<C> out;
  for (const auto& m : monomials_up_to(A.vars, d)) out.push_back(C(m));
  return out;
}

/// Antisymmetry, Leibniz, Jacobi and the anchor morphism on frame sections
/// with monomial coefficients of degree <= d.
template <class C>
CheckReport algebroid_axiom_check(const LieAlgebroidData<C>& A, std::uint32_t d) {
  using MV = Multivector<C>;
  CheckReport rep{"algebroid_axioms"};
  try {
    A.validate();
  } catch (const std::exception& e) {
    rep.error = e.what();
    return rep;
  }
  const auto& nm = A.frame_names;
  auto str = [&nm](const MV& m) { return m.to_string(nm); };
  auto cstr = [](const C& c) { return c.to_string(); };
  auto secs = section_probes(A, d);
  auto fns = function_probes(A, d);
  auto br = [&A](const MV& X, const MV& Y) { return A.section_bracket(X, Y); };
  for (const auto& X : secs)
    for (const auto& Y : secs) {
      std::string tag = "X = " + str(X) + ", Y = " + str(Y);
      rep.record("antisymmetry " + tag, br(X, Y) + br(Y, X), str);
      // rho[X,Y] f = rho X rho Y f - rho Y rho X f on coordinate functions
      for (std::size_t i = 0; i < A.base_dim(); ++i) {
        C xi = C(Poly::variable(A.vars, i));
        C lhs = A.anchor_apply(br(X, Y), xi);
        C rhs = A.anchor_apply(X, A.anchor_apply(Y, xi)) - A.anchor_apply(Y, A.anchor_apply(X, xi));
        rep.record("anchor morphism on " + (*A.vars)[i] + ", " + tag, lhs - rhs, cstr);
      }
      for (const auto& f : fns)
        rep.record("Leibniz f = " + f.to_string() + ", " + tag,
                   br(X, f * Y) - f * br(X, Y) - A.anchor_apply(X, f) * Y, str);
    }
  // Jacobi: one coefficient probe in the first slot, constant frame elements elsewhere.
  for (const auto& X : secs)
    for (std::size_t b = 0; b < A.rank(); ++b)
      for (std::size_t c = 0; c < A.rank(); ++c) {
        MV Y = MV::frame(A.vars, b), Z = MV::frame(A.vars, c);
        MV jac = br(X, br(Y, Z)) + br(Y, br(Z, X)) + br(Z, br(X, Y));
        rep.record("Jacobi X = " + str(X) + ", Y = " + str(Y) + ", Z = " + str(Z), jac, str);
      }
  return rep;
}

/// Eq. (16) delta[X, Y] = [delta X, Y] + [X, delta Y] on section pairs and
/// Eq. (15) delta^2 = 0 on functions and frame sections.
template <class C>
std::vector<CheckReport> bialgebroid_compat_check(const LieBialgebroidData<C>& B, std::uint32_t d) {
  using MV = Multivector<C>;
  const auto& A = B.algebroid;
  const auto& nm = A.frame_names;
  auto str = [&nm](const MV& m) { return m.to_string(nm); };
  CheckReport eq16{"eq16"}, eq15{"eq15"};
  auto secs = section_probes(A, d);
  std::vector<MV> dsecs;
  for (const auto& X : secs) dsecs.push_back(B.delta(X));
  for (std::size_t i = 0; i < secs.size(); ++i)
    for (std::size_t j = 0; j < secs.size(); ++j) {
      MV lhs = B.delta(A.section_bracket(secs[i], secs[j]));
      MV rhs = schouten(A, dsecs[i], secs[j]) + schouten(A, secs[i], dsecs[j]);
      eq16.record("X = " + str(secs[i]) + ", Y = " + str(secs[j]), lhs - rhs, str);
    }
  for (const auto& f : function_probes(A, d)) eq15.record("f = " + f.to_string(), B.delta(B.delta(f)), str);
  for (std::size_t i = 0; i < secs.size(); ++i) eq15.record("X = " + str(secs[i]), B.delta(dsecs[i]), str);
  return {eq16, eq15};
}

/// Jacobiator of an antisymmetric bracket matrix on coordinate triples i < j < k.
template <class C>
std::vector<C> jacobi_residuals(const std::vector<std::vector<C>>& pi) {
  std::vector<C> out;
  const std::size_t n = pi.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        C r = pi[i][j] - pi[i][j];
        for (std::size_t l = 0; l < n; ++l)
          r = r + pi[i][l] * pi[j][k].partial(l) + pi[j][l] * pi[k][i].partial(l) + pi[k][l] * pi[i][j].partial(l);
        out.push_back(r);
      }
  return out;
}

/// pi^{ij} = rho(delta x_i) x_j. Throws invalid_structure_error if pi is not
/// antisymmetric or fails Jacobi.
template <class C>
std::vector<std::vector<C>> base_poisson_matrix(const LieBialgebroidData<C>& B) {
  const auto& A = B.algebroid;
  const std::size_t n = A.base_dim();
  std::vector<std::vector<C>> pi(n, std::vector<C>(n, A.zero()));
  for (std::size_t i = 0; i < n; ++i) {
    Multivector<C> dx = B.delta(C(Poly::variable(A.vars, i)));
    for (std::size_t j = 0; j < n; ++j) pi[i][j] = A.anchor_apply(dx, C(Poly::variable(A.vars, j)));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!(pi[i][j] == -pi[j][i])) throw invalid_structure_error("base_poisson: bracket is not antisymmetric");
  for (const auto& r : jacobi_residuals(pi))
    if (!r.is_zero()) throw invalid_structure_error("base_poisson: Jacobi fails, residual " + r.to_string());
  return pi;
}

inline PoissonBivector base_poisson(const LieBialgebroidData<Poly>& B) {
  return {B.algebroid.vars, base_poisson_matrix(B)};
}

/// Rank of an antisymmetric matrix over the fraction field and where it drops.
struct RankReport {
  std::size_t rank = 0;
  std::string verdict;                  // "regular", "not regular", "undetermined"
  std::vector<std::string> minors;      // rank x rank minors (nonzero ones)
  std::vector<Rational> drop_point;     // witness when not regular
};

namespace detail {

inline RatFun determinant(std::vector<std::vector<RatFun>> M, const Vars& vars) {
  const std::size_t n = M.size();
  RatFun det = RatFun::one(vars);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && M[p][c].is_zero()) ++p;
    if (p == n) return RatFun(vars);
    if (p != c) {
      std::swap(M[p], M[c]);
      det = -det;
    }
    det = det * M[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (M[r][c].is_zero()) continue;
      RatFun f = M[r][c] / M[c][c];
      for (std::size_t k = c; k < n; ++k) M[r][k] = M[r][k] - f * M[c][k];
    }
  }
  return det;
}

inline std::size_t rank_of(std::vector<std::vector<RatFun>> M) {
  std::size_t rank = 0;
  const std::size_t rows = M.size(), cols = rows ? M[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && M[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(M[p], M[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (M[r][c].is_zero()) continue;
      RatFun f = M[r][c] / M[rank][c];
      for (std::size_t k = c; k < cols; ++k) M[r][k] = M[r][k] - f * M[rank][k];
    }
    ++rank;
  }
  return rank;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

/// Value at a point, or nullopt if a denominator vanishes there.
inline std::optional<Rational> evaluate_at(const RatFun& f, const std::vector<Rational>& pt) {
  Rational d = f.den().evaluate(pt);
  if (d == 0) return std::nullopt;
  return f.num().evaluate(pt) / d;
}

}  // namespace detail

/// Regular iff some rank-sized minor has a nonzero constant numerator; not
/// regular iff a grid point of [-3,3]^n kills every rank-sized minor; else
/// undetermined.
template <class C>
RankReport regularity_rank(const LieAlgebroidData<C>& A, const Multivector<C>& Lambda) {
  auto M0 = bivector_matrix(A, Lambda);
  const std::size_t r = M0.size();
  std::vector<std::vector<RatFun>> M(r, std::vector<RatFun>(r, RatFun(A.vars)));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) M[i][j] = RatFun(M0[i][j]);
  RankReport rep;
  rep.rank = detail::rank_of(M);
  if (rep.rank == 0) {
    rep.verdict = "regular";
    return rep;
  }
  std::vector<std::vector<std::size_t>> rows;
  std::vector<std::size_t> cur;
  detail::subsets(r, rep.rank, 0, cur, rows);
  std::vector<RatFun> minors;
  bool constant_minor = false;
  for (const auto& R : rows)
    for (const auto& Cc : rows) {
      std::vector<std::vector<RatFun>> sub(rep.rank, std::vector<RatFun>(rep.rank, RatFun(A.vars)));
      for (std::size_t i = 0; i < rep.rank; ++i)
        for (std::size_t j = 0; j < rep.rank; ++j) sub[i][j] = M[R[i]][Cc[j]];
      RatFun d = detail::determinant(sub, A.vars);
      if (d.is_zero()) continue;
      if (d.num().is_constant()) constant_minor = true;
      minors.push_back(d);
    }
  for (const auto& m : minors) rep.minors.push_back(m.to_string());
  if (constant_minor) {
    rep.verdict = "regular";
    return rep;
  }
  const std::size_t n = var_count(A.vars);
  std::vector<Rational> pt(n, Rational(-3));
  for (;;) {
    bool all_zero = true;
    for (const auto& m : minors) {
      auto val = detail::evaluate_at(m, pt);
      if (!val || *val != 0) {
        all_zero = false;
        break;
      }
    }
    if (all_zero) {
      rep.verdict = "not regular";
      rep.drop_point = pt;
      return rep;
    }
    std::size_t k = 0;
    while (k < n && pt[k] == 3) pt[k++] = -3;
    if (k == n) break;
    pt[k] += 1;
  }
  rep.verdict = "undetermined";
  return rep;
}

}  // namespace qgroupoid
