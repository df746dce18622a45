#pragma once

#include <string>
#include <utility>

#include "qgroupoid/poly.hpp"

namespace qgroupoid {

/// Rational function num/den over Q. Kept fully reduced (gcd divided out)
/// with a denominator whose lex-leading coefficient is 1, so equality is
/// structural; operator== also cross-multiplies as a fallback.
class RatFun {
 public:
  RatFun() = default;
  explicit RatFun(Vars vars) : num_(vars), den_(Poly::one(vars)) {}
  RatFun(const Poly& p)  // NOLINT: polynomials embed implicitly
      : num_(p), den_(Poly::one(p.vars())) {}
  RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    require_same_vars(num_.vars(), den_.vars(), "RatFun");
    if (den_.is_zero()) throw division_by_zero_error("RatFun: identically zero denominator");
    normalize();
  }

  static RatFun constant(Vars vars, const Rational& c) { return RatFun(Poly::constant(std::move(vars), c)); }
  static RatFun one(Vars vars) { return constant(std::move(vars), Rational(1)); }
  static RatFun variable(Vars vars, std::size_t k) { return RatFun(Poly::variable(std::move(vars), k)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const Vars& vars() const { return num_.vars(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }
  std::size_t size() const { return num_.size() + den_.size() - 1; }

  friend RatFun operator+(const RatFun& a, const RatFun& b) {
    if (a.den_ == b.den_) return RatFun(a.num_ + b.num_, a.den_);
    return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFun operator-(const RatFun& a, const RatFun& b) {
    if (a.den_ == b.den_) return RatFun(a.num_ - b.num_, a.den_);
    return RatFun(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFun operator-(const RatFun& a) {
    RatFun r = a;
    r.num_ = -r.num_;
    return r;
  }
  friend RatFun operator*(const RatFun& a, const RatFun& b) { return RatFun(a.num_ * b.num_, a.den_ * b.den_); }
  friend RatFun operator*(const Rational& s, const RatFun& a) {
    RatFun r = a;
    r.num_ *= s;
    return r;
  }
  friend RatFun operator/(const RatFun& a, const RatFun& b) {
    if (b.is_zero()) throw division_by_zero_error("RatFun: division by identically zero function");
    return RatFun(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
  RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
  RatFun& operator*=(const RatFun& o) { return *this = *this * o; }

  friend bool operator==(const RatFun& a, const RatFun& b) {
    if (a.num_ == b.num_ && a.den_ == b.den_) return true;
    return a.num_ * b.den_ == b.num_ * a.den_;
  }

  /// Quotient rule.
  RatFun partial(std::size_t k) const {
    return RatFun(num_.partial(k) * den_ - num_ * den_.partial(k), den_ * den_);
  }

  std::string to_string() const {
    if (den_.is_constant()) return num_.to_string();
    auto wrap = [](const Poly& p) {
      std::string s = p.to_string();
      return p.size() > 1 ? "(" + s + ")" : s;
    };
    return wrap(num_) + "/" + wrap(den_);
  }

 private:
  void normalize() {
    if (num_.is_zero()) {
      den_ = Poly::one(num_.vars());
      return;
    }
    if (!den_.is_constant()) {
      Poly g = poly_gcd(num_, den_);
      if (!g.is_constant()) {
        num_ = exact_divide(num_, g);
        den_ = exact_divide(den_, g);
      }
    }
    Rational lc = den_.leading().second;
    if (lc != 1) {
      Rational inv = Rational(1) / lc;
      num_ *= inv;
      den_ *= inv;
    }
  }

  Poly num_;
  Poly den_;
};

}  // namespace qgroupoid
