#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qgroupoid/errors.hpp"
#include "qgroupoid/rational.hpp"

namespace qgroupoid {

/// Exponent multi-index; also used for derivative multi-indices.
using Exponents = std::vector<std::uint32_t>;

/// Shared, immutable list of coordinate names. A null handle is the empty list.
using Vars = std::shared_ptr<const std::vector<std::string>>;

inline Vars make_vars(std::vector<std::string> names) {
  return std::make_shared<const std::vector<std::string>>(std::move(names));
}

inline std::size_t var_count(const Vars& v) { return v ? v->size() : 0; }

inline bool same_vars(const Vars& a, const Vars& b) {
  if (a == b) return true;
  if (var_count(a) != var_count(b)) return false;
  if (var_count(a) == 0) return true;
  return *a == *b;
}

inline void require_same_vars(const Vars& a, const Vars& b, const char* where) {
  if (!same_vars(a, b)) throw structural_error(std::string(where) + ": mismatched variable lists");
}

inline std::uint32_t total_degree(const Exponents& e) {
  std::uint32_t d = 0;
  for (auto x : e) d += x;
  return d;
}

inline bool divides(const Exponents& small, const Exponents& big) {
  for (std::size_t i = 0; i < small.size(); ++i)
    if (small[i] > big[i]) return false;
  return true;
}

/// All multi-indices of length n with total degree <= d, in graded order.
inline std::vector<Exponents> multi_indices_up_to(std::size_t n, std::uint32_t d) {
  std::vector<Exponents> out;
  Exponents cur(n, 0);
  for (std::uint32_t deg = 0; deg <= d; ++deg) {
    // enumerate compositions of deg into n parts, lexicographically descending
    auto rec = [&](auto&& self, std::size_t pos, std::uint32_t left) -> void {
      if (pos + 1 == n) {
        cur[pos] = left;
        out.push_back(cur);
        return;
      }
      for (std::uint32_t k = left + 1; k-- > 0;) {
        cur[pos] = k;
        self(self, pos + 1, left - k);
      }
    };
    if (n == 0) {
      if (deg == 0) out.push_back({});
      continue;
    }
    rec(rec, 0, deg);
  }
  return out;
}

/// Sub-multi-indices K <= I together with prod binom(I_i, K_i).
inline std::vector<std::pair<Exponents, Rational>> sub_indices(const Exponents& I) {
  std::vector<std::pair<Exponents, Rational>> out;
  Exponents k(I.size(), 0);
  auto rec = [&](auto&& self, std::size_t pos, Rational c) -> void {
    if (pos == I.size()) {
      out.emplace_back(k, c);
      return;
    }
    for (std::uint32_t j = 0; j <= I[pos]; ++j) {
      k[pos] = j;
      self(self, pos + 1, c * binomial(I[pos], j));
    }
  };
  rec(rec, 0, Rational(1));
  return out;
}

/// Sparse multivariate polynomial with exact rational coefficients.
/// Terms are kept in a lexicographically ordered map with no zero entries,
/// so equality is structural.
class Poly {
 public:
  using Terms = std::map<Exponents, Rational>;

  Poly() = default;
  explicit Poly(Vars vars) : vars_(std::move(vars)) {}

  static Poly constant(Vars vars, const Rational& c) {
    Poly p(std::move(vars));
    if (!qgroupoid::is_zero(c)) p.terms_.emplace(Exponents(p.nvars(), 0), c);
    return p;
  }
  static Poly one(Vars vars) { return constant(std::move(vars), Rational(1)); }
  static Poly variable(Vars vars, std::size_t k) {
    Poly p(std::move(vars));
    if (k >= p.nvars()) throw structural_error("Poly::variable: index out of range");
    Exponents e(p.nvars(), 0);
    e[k] = 1;
    p.terms_.emplace(std::move(e), Rational(1));
    return p;
  }
  static Poly monomial(Vars vars, Exponents e, const Rational& c = Rational(1)) {
    Poly p(std::move(vars));
    if (e.size() != p.nvars()) throw structural_error("Poly::monomial: exponent length");
    if (!qgroupoid::is_zero(c)) p.terms_.emplace(std::move(e), c);
    return p;
  }

  const Vars& vars() const { return vars_; }
  std::size_t nvars() const { return var_count(vars_); }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
  }
  Rational constant_term() const {
    auto it = terms_.find(Exponents(nvars(), 0));
    return it == terms_.end() ? Rational(0) : it->second;
  }
  Rational coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }
  std::uint32_t degree() const {
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
    return d;
  }
  std::uint32_t degree_in(std::size_t k) const {
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[k]);
    return d;
  }
  // lex-leading term
  const std::pair<const Exponents, Rational>& leading() const { return *terms_.rbegin(); }

  void add_term(const Exponents& e, const Rational& c) {
    if (qgroupoid::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (qgroupoid::is_zero(it->second)) terms_.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    adopt_vars(o, "Poly +");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    adopt_vars(o, "Poly -");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Poly& operator*=(const Rational& s) {
    if (qgroupoid::is_zero(s)) {
      terms_.clear();
    } else {
      for (auto& [e, c] : terms_) c *= s;
    }
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) {
    for (auto& [e, c] : a.terms_) c = -c;
    return a;
  }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    require_same_vars(a.vars_, b.vars_, "poly_mul");
    Poly r(a.vars_ ? a.vars_ : b.vars_);
    const std::size_t n = r.nvars();
    Exponents e(n);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) {
    return same_vars(a.vars_, b.vars_) && a.terms_ == b.terms_;
  }

  Poly pow(std::uint32_t k) const {
    Poly r = one(vars_);
    for (std::uint32_t i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  /// Exact partial derivative in coordinate k.
  Poly partial(std::size_t k) const {
    if (k >= nvars()) throw structural_error("poly_partial: coordinate index out of range");
    Poly r(vars_);
    for (const auto& [e, c] : terms_) {
      if (e[k] == 0) continue;
      Exponents f = e;
      --f[k];
      r.add_term(f, c * e[k]);
    }
    return r;
  }

  /// Iterated derivative d^I.
  Poly derivative(const Exponents& I) const {
    if (I.size() != nvars()) throw structural_error("Poly::derivative: multi-index length");
    Poly r(vars_);
    for (const auto& [e, c] : terms_) {
      if (!divides(I, e)) continue;
      Rational coef = c;
      Exponents f = e;
      for (std::size_t i = 0; i < I.size(); ++i) {
        for (std::uint32_t j = 0; j < I[i]; ++j) coef *= (e[i] - j);
        f[i] -= I[i];
      }
      r.add_term(f, coef);
    }
    return r;
  }

  Rational evaluate(std::span<const Rational> point) const {
    if (point.size() != nvars()) throw structural_error("Poly::evaluate: point dimension");
    Rational acc(0);
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (std::size_t i = 0; i < e.size(); ++i) {
        for (std::uint32_t j = 0; j < e[i]; ++j) t *= point[i];
      }
      acc += t;
    }
    return acc;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      Rational mag = abs(c);
      bool neg = sgn(c) < 0;
      if (first) {
        if (neg) os << "-";
      } else {
        os << (neg ? " - " : " + ");
      }
      first = false;
      bool unit_coef = (mag == 1);
      bool has_var = total_degree(e) > 0;
      if (!unit_coef || !has_var) {
        os << mag.get_str();
        if (has_var) os << "*";
      }
      bool first_var = true;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!first_var) os << "*";
        first_var = false;
        os << (*vars_)[i];
        if (e[i] > 1) os << "^" << e[i];
      }
    }
    return os.str();
  }

 private:
  void adopt_vars(const Poly& o, const char* where) {
    if (!vars_ && terms_.empty()) {
      vars_ = o.vars_;
      return;
    }
    require_same_vars(vars_, o.vars_, where);
  }

  Vars vars_;
  Terms terms_;
};

namespace detail {

inline int main_var(const Poly& p) {
  int v = -1;
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t i = e.size(); i-- > 0;) {
      if (e[i] != 0) {
        v = std::max(v, static_cast<int>(i));
        break;
      }
    }
  }
  return v;
}

// Coefficient of v^d, as a polynomial free of v.
inline Poly coeff_in(const Poly& p, std::size_t v, std::uint32_t d) {
  Poly r(p.vars());
  for (const auto& [e, c] : p.terms()) {
    if (e[v] != d) continue;
    Exponents f = e;
    f[v] = 0;
    r.add_term(f, c);
  }
  return r;
}

inline Poly var_power(const Vars& vars, std::size_t v, std::uint32_t d) {
  Exponents e(var_count(vars), 0);
  e[v] = d;
  return Poly::monomial(vars, e);
}

}  // namespace detail

/// Scales p so that its lex-leading coefficient is 1 (zero stays zero).
inline Poly monic(const Poly& p) {
  if (p.is_zero()) return p;
  Rational lc = p.leading().second;
  return p * (Rational(1) / lc);
}

/// Exact quotient a / b; throws if b does not divide a.
inline Poly exact_divide(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw division_by_zero_error("exact_divide: division by zero polynomial");
  require_same_vars(a.vars(), b.vars(), "exact_divide");
  Poly q(b.vars());
  Poly r = a;
  const auto& [lb, cb] = b.leading();
  while (!r.is_zero()) {
    const auto& [lr, cr] = r.leading();
    if (!divides(lb, lr)) throw structural_error("exact_divide: not divisible");
    Exponents t(lr.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = lr[i] - lb[i];
    Rational c = cr / cb;
    Poly m = Poly::monomial(b.vars(), t, c);
    q += m;
    r -= m * b;
  }
  return q;
}

inline Poly poly_gcd(const Poly& a, const Poly& b);

namespace detail {

inline Poly content_in(const Poly& p, std::size_t v) {
  Poly g(p.vars());
  for (std::uint32_t d = 0, top = p.degree_in(v); d <= top; ++d) {
    Poly c = coeff_in(p, v, d);
    if (!c.is_zero()) g = poly_gcd(g, c);
  }
  return g;
}

inline Poly primitive_in(const Poly& p, std::size_t v) {
  if (p.is_zero()) return p;
  return exact_divide(p, content_in(p, v));
}

inline Poly pseudo_remainder(Poly r, const Poly& b, std::size_t v) {
  const std::uint32_t db = b.degree_in(v);
  const Poly lb = coeff_in(b, v, db);
  while (!r.is_zero() && r.degree_in(v) >= db) {
    std::uint32_t dr = r.degree_in(v);
    Poly lr = coeff_in(r, v, dr);
    r = lb * r - lr * var_power(b.vars(), v, dr - db) * b;
  }
  return r;
}

}  // namespace detail

/// Greatest common divisor in Q[x_1..x_n], normalized monic in lex order.
/// Recursive primitive remainder sequence on the highest occurring variable.
inline Poly poly_gcd(const Poly& a, const Poly& b) {
  require_same_vars(a.vars(), b.vars(), "poly_gcd");
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);
  if (a.is_constant() || b.is_constant()) return Poly::one(a.vars() ? a.vars() : b.vars());
  const int va = detail::main_var(a);
  const int vb = detail::main_var(b);
  const std::size_t v = static_cast<std::size_t>(std::max(va, vb));
  if (va != vb) {
    // only one operand involves v: the gcd divides every v-coefficient of it
    const Poly& with = (va > vb) ? a : b;
    const Poly& without = (va > vb) ? b : a;
    Poly g = without;
    for (std::uint32_t d = 0, top = with.degree_in(v); d <= top; ++d) {
      Poly c = detail::coeff_in(with, v, d);
      if (!c.is_zero()) g = poly_gcd(g, c);
      if (g.is_constant()) break;
    }
    return monic(g);
  }
  Poly ca = detail::content_in(a, v);
  Poly cb = detail::content_in(b, v);
  Poly g = poly_gcd(ca, cb);
  Poly pa = exact_divide(a, ca);
  Poly pb = exact_divide(b, cb);
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
  while (true) {
    Poly r = detail::pseudo_remainder(pa, pb, v);
    if (r.is_zero()) break;
    if (r.degree_in(v) == 0) {
      pb = Poly::one(a.vars());
      break;
    }
    pa = std::move(pb);
    pb = detail::primitive_in(r, v);
  }
  return monic(g * detail::primitive_in(pb, v));
}

/// All monomials (coefficient 1) of total degree <= d.
inline std::vector<Poly> monomials_up_to(const Vars& vars, std::uint32_t d) {
  std::vector<Poly> out;
  for (auto& e : multi_indices_up_to(var_count(vars), d)) out.push_back(Poly::monomial(vars, e));
  return out;
}

}  // namespace qgroupoid
