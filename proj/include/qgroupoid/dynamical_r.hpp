#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qgroupoid/errors.hpp"
#include "qgroupoid/lie_algebra.hpp"
#include "qgroupoid/lie_algebroid.hpp"
#include "qgroupoid/ratfun.hpp"
#include "qgroupoid/report.hpp"

namespace qgroupoid {

/// Element of g^{(x) legs} with RatFun entries in the lambda coordinates,
/// stored densely in basis order.
struct GTensor {
  Vars vars;
  std::vector<std::string> names;
  std::size_t legs = 0;
  std::vector<RatFun> c;

  GTensor() = default;
  GTensor(Vars v, std::vector<std::string> n, std::size_t k) : vars(std::move(v)), names(std::move(n)), legs(k) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= names.size();
    c.assign(total, RatFun(vars));
  }

  std::size_t dim() const { return names.size(); }
  RatFun& at(std::size_t a, std::size_t b) { return c.at(a * dim() + b); }
  const RatFun& at(std::size_t a, std::size_t b) const { return c.at(a * dim() + b); }
  RatFun& at(std::size_t a, std::size_t b, std::size_t d) { return c.at((a * dim() + b) * dim() + d); }
  const RatFun& at(std::size_t a, std::size_t b, std::size_t d) const { return c.at((a * dim() + b) * dim() + d); }

  bool is_zero() const {
    for (const auto& x : c)
      if (!x.is_zero()) return false;
    return true;
  }
  /// Number of nonzero entries.
  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& x : c) n += !x.is_zero();
    return n;
  }
  friend GTensor operator+(GTensor a, const GTensor& b) {
    for (std::size_t i = 0; i < a.c.size(); ++i) a.c[i] = a.c[i] + b.c[i];
    return a;
  }
  friend GTensor operator-(GTensor a, const GTensor& b) {
    for (std::size_t i = 0; i < a.c.size(); ++i) a.c[i] = a.c[i] - b.c[i];
    return a;
  }
  friend GTensor operator*(const Rational& s, GTensor a) {
    for (auto& x : a.c) x = s * x;
    return a;
  }
  friend bool operator==(const GTensor& a, const GTensor& b) { return a.legs == b.legs && a.c == b.c; }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i].is_zero()) continue;
      std::string word;
      std::size_t idx = i;
      std::vector<std::size_t> digits(legs);
      for (std::size_t k = legs; k-- > 0;) {
        digits[k] = idx % dim();
        idx /= dim();
      }
      for (std::size_t k = 0; k < legs; ++k) word += (k ? "(x)" : "") + names[digits[k]];
      if (!out.empty()) out += " + ";
      out += "(" + c[i].to_string() + ")*" + word;
    }
    return out.empty() ? "0" : out;
  }
};

/// r = sum r^{ab}(lambda) e_a (x) e_b, lambda dual to the Cartan basis of g.
struct DynamicalR {
  Vars lambda;
  GTensor r;

  void validate(const LieAlgebraData& g) const {
    if (r.legs != 2 || r.dim() != g.dim()) throw invalid_structure_error("DynamicalR: r must be a dim(g) x dim(g) matrix");
    if (var_count(lambda) != g.cartan().size())
      throw invalid_structure_error("DynamicalR: one lambda coordinate per Cartan basis element");
    for (const auto& x : r.c) require_same_vars(x.vars(), lambda, "DynamicalR");
  }
};

/// lambda coordinates for the Cartan basis: "l" for rank one, else l1, l2, ...
inline Vars lambda_vars(const LieAlgebraData& g) {
  const std::size_t k = g.cartan().size();
  if (k == 1) return make_vars({"l"});
  std::vector<std::string> names;
  for (std::size_t i = 0; i < k; ++i) names.push_back("l" + std::to_string(i + 1));
  return make_vars(names);
}

inline DynamicalR zero_r(const LieAlgebraData& g) {
  Vars v = lambda_vars(g);
  return {v, GTensor(v, g.basis(), 2)};
}

/// Constant r given as a Rational matrix.
inline DynamicalR constant_r(const LieAlgebraData& g, const RatMatrix& m) {
  DynamicalR r = zero_r(g);
  if (m.size() != g.dim()) throw invalid_structure_error("constant_r: matrix must be dim(g) x dim(g)");
  for (std::size_t a = 0; a < g.dim(); ++a) {
    if (m[a].size() != g.dim()) throw invalid_structure_error("constant_r: matrix must be dim(g) x dim(g)");
    for (std::size_t b = 0; b < g.dim(); ++b) r.r.at(a, b) = RatFun::constant(r.lambda, m[a][b]);
  }
  return r;
}

/// sl2 rational fixture r = (1/l)(f (x) e - e (x) f) in the basis (e, f, h).
inline DynamicalR sl2_rational_r() {
  LieAlgebraData g = sl2();
  DynamicalR r = zero_r(g);
  RatFun inv = RatFun::one(r.lambda) / RatFun::variable(r.lambda, 0);
  r.r.at(1, 0) = inv;
  r.r.at(0, 1) = -inv;
  return r;
}

/// Sign and slot placement of Alt(dr):
///   cyclic:        sign * sum_a (h_a^{(1)} d_a r^{23} + h_a^{(2)} d_a r^{31} + h_a^{(3)} d_a r^{12})
///   lexicographic: sign * sum_a (h_a^{(1)} d_a r^{23} + h_a^{(2)} d_a r^{13} + h_a^{(3)} d_a r^{12})
struct AltConvention {
  int sign = -1;
  bool cyclic = true;

  std::string to_string() const {
    return std::string(sign > 0 ? "+" : "-") + (cyclic ? "cyclic" : "lexicographic");
  }
  friend bool operator==(const AltConvention& a, const AltConvention& b) {
    return a.sign == b.sign && a.cyclic == b.cyclic;
  }
};

/// The convention selected by calibrate_alt_convention on sl2_rational_r().
inline AltConvention frozen_alt_convention() { return {-1, true}; }

inline GTensor alt_dr(const LieAlgebraData& g, const DynamicalR& r, AltConvention conv) {
  const std::size_t m = g.dim();
  GTensor out(r.lambda, g.basis(), 3);
  for (std::size_t al = 0; al < g.cartan().size(); ++al) {
    const std::size_t h = g.cartan()[al];
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) {
        RatFun d = r.r.at(a, b).partial(al);
        if (d.is_zero()) continue;
        out.at(h, a, b) = out.at(h, a, b) + d;       // h^{(1)} r^{23}
        if (conv.cyclic) {
          out.at(b, h, a) = out.at(b, h, a) + d;     // h^{(2)} r^{31}
        } else {
          out.at(a, h, b) = out.at(a, h, b) + d;     // h^{(2)} r^{13}
        }
        out.at(a, b, h) = out.at(a, b, h) + d;       // h^{(3)} r^{12}
      }
  }
  return Rational(conv.sign) * out;
}

/// [r^{12}, r^{13}] + [r^{12}, r^{23}] + [r^{13}, r^{23}] from structure constants.
inline GTensor classical_yang_baxter(const LieAlgebraData& g, const DynamicalR& r) {
  const std::size_t m = g.dim();
  GTensor out(r.lambda, g.basis(), 3);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      if (r.r.at(a, b).is_zero()) continue;
      for (std::size_t c = 0; c < m; ++c)
        for (std::size_t d = 0; d < m; ++d) {
          if (r.r.at(c, d).is_zero()) continue;
          RatFun rr = r.r.at(a, b) * r.r.at(c, d);
          for (std::size_t k = 0; k < m; ++k) {
            const Rational& ac = g.structure(a, c)[k];
            const Rational& bc = g.structure(b, c)[k];
            const Rational& bd = g.structure(b, d)[k];
            if (ac != 0) out.at(k, b, d) = out.at(k, b, d) + ac * rr;  // [e_a, e_c] (x) e_b (x) e_d
            if (bc != 0) out.at(a, k, d) = out.at(a, k, d) + bc * rr;  // e_a (x) [e_b, e_c] (x) e_d
            if (bd != 0) out.at(a, c, k) = out.at(a, c, k) + bd * rr;  // e_a (x) e_c (x) [e_b, e_d]
          }
        }
    }
  return out;
}

/// Alt(dr) + [r12, r13] + [r12, r23] + [r13, r23].
inline GTensor cdybe_residual(const LieAlgebraData& g, const DynamicalR& r,
                              AltConvention conv = frozen_alt_convention()) {
  r.validate(g);
  return alt_dr(g, r, conv) + classical_yang_baxter(g, r);
}

/// All four sign/placement conventions with whether r solves the CDYBE under each.
inline std::vector<std::pair<AltConvention, bool>> calibrate_alt_convention(const LieAlgebraData& g, const DynamicalR& r) {
  std::vector<std::pair<AltConvention, bool>> out;
  for (int sign : {1, -1})
    for (bool cyclic : {true, false}) {
      AltConvention c{sign, cyclic};
      out.emplace_back(c, cdybe_residual(g, r, c).is_zero());
    }
  return out;
}

/// [x (x) 1 + 1 (x) x, t] for a 2-tensor t.
inline GTensor ad_diagonal(const LieAlgebraData& g, std::size_t x, const GTensor& t) {
  const std::size_t m = g.dim();
  GTensor out(t.vars, t.names, 2);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      const RatFun& v = t.at(a, b);
      if (v.is_zero()) continue;
      for (std::size_t k = 0; k < m; ++k) {
        const Rational& xa = g.structure(x, a)[k];
        const Rational& xb = g.structure(x, b)[k];
        if (xa != 0) out.at(k, b) = out.at(k, b) + xa * v;
        if (xb != 0) out.at(a, k) = out.at(a, k) + xb * v;
      }
    }
  return out;
}

/// [h_a (x) 1 + 1 (x) h_a, r(lambda)] for each Cartan generator, concatenated.
inline std::vector<GTensor> equivariance_residual(const LieAlgebraData& g, const DynamicalR& r) {
  r.validate(g);
  std::vector<GTensor> out;
  for (std::size_t h : g.cartan()) out.push_back(ad_diagonal(g, h, r.r));
  return out;
}

inline GTensor symmetric_part(const DynamicalR& r) {
  GTensor s = r.r;
  for (std::size_t a = 0; a < s.dim(); ++a)
    for (std::size_t b = 0; b < s.dim(); ++b) s.at(a, b) = r.r.at(a, b) + r.r.at(b, a);
  return s;
}

inline GTensor antisymmetric_part(const DynamicalR& r) {
  GTensor s = r.r;
  for (std::size_t a = 0; a < s.dim(); ++a)
    for (std::size_t b = 0; b < s.dim(); ++b) s.at(a, b) = Rational(1, 2) * (r.r.at(a, b) - r.r.at(b, a));
  return s;
}

/// r^{12} + r^{21} must be lambda-independent and ad-invariant.
inline CheckReport symmetric_part_check(const LieAlgebraData& g, const DynamicalR& r) {
  CheckReport rep{"symmetric_part"};
  r.validate(g);
  GTensor s = symmetric_part(r);
  auto str = [](const GTensor& t) { return t.to_string(); };
  for (std::size_t al = 0; al < var_count(r.lambda); ++al) {
    GTensor d = s;
    for (auto& x : d.c) x = x.partial(al);
    rep.record("d/d" + (*r.lambda)[al] + " (r + r21)", d, str);
  }
  for (std::size_t x = 0; x < g.dim(); ++x) rep.record("[" + g.basis()[x] + ", r + r21]", ad_diagonal(g, x, s), str);
  return rep;
}

/// Product algebroid T h* x g with its bivector Lambda = sum xi_a ^ h_a + r
/// and the Schouten square [Lambda, Lambda].
struct Example41 {
  LieAlgebroidData<RatFun> algebroid;
  Multivector<RatFun> lambda;
  Multivector<RatFun> square;
};

/// Throws precondition_error (with the offending residual) unless r passes
/// cdybe_residual, equivariance_residual and symmetric_part_check.
inline Example41 example41_lambda(const LieAlgebraData& g, const DynamicalR& r,
                                  AltConvention conv = frozen_alt_convention()) {
  GTensor cd = cdybe_residual(g, r, conv);
  if (!cd.is_zero()) throw precondition_error("example41_lambda: CDYBE residual " + cd.to_string());
  for (const auto& e : equivariance_residual(g, r))
    if (!e.is_zero()) throw precondition_error("example41_lambda: equivariance residual " + e.to_string());
  CheckReport sym = symmetric_part_check(g, r);
  if (!sym.passed()) throw precondition_error("example41_lambda: symmetric part " + sym.max_residual());

  const Vars& v = r.lambda;
  const std::size_t k = var_count(v), m = g.dim();
  std::vector<std::string> names;
  for (std::size_t a = 0; a < k; ++a) names.push_back("xi" + std::string(k == 1 ? "" : std::to_string(a + 1)));
  for (const auto& b : g.basis()) names.push_back(b);
  LieAlgebroidData<RatFun> A = empty_algebroid<RatFun>(v, names);
  for (std::size_t a = 0; a < k; ++a) A.anchor[a][a] = RatFun::one(v);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = 0; c < m; ++c) A.structure[k + a][k + b][k + c] = RatFun::constant(v, g.structure(a, b)[c]);

  Multivector<RatFun> L(v, 2);
  for (std::size_t a = 0; a < k; ++a) L += Multivector<RatFun>::term(RatFun::one(v), {a, k + g.cartan()[a]});
  GTensor anti = antisymmetric_part(r);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      if (!anti.at(a, b).is_zero()) L += Multivector<RatFun>::term(anti.at(a, b), {k + a, k + b});
  Multivector<RatFun> sq = schouten(A, L, L);
  return {std::move(A), std::move(L), std::move(sq)};
}

}  // namespace qgroupoid
