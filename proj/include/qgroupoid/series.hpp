#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qgroupoid/errors.hpp"
#include "qgroupoid/rational.hpp"

namespace qgroupoid {

/// Formal power series in hbar truncated at order N, with coefficients in V.
/// V must be closed under +, -, scaling by Rational, and expose is_zero().
template <class V>
class HbarSeries {
 public:
  HbarSeries(std::size_t order, const V& zero) : coeffs_(order + 1, zero) {}
  explicit HbarSeries(std::vector<V> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw structural_error("HbarSeries: needs at least the hbar^0 coefficient");
  }
  /// v placed at hbar^0, zero elsewhere.
  static HbarSeries constant(std::size_t order, const V& v, const V& zero) {
    HbarSeries s(order, zero);
    s.coeffs_[0] = v;
    return s;
  }

  std::size_t order() const { return coeffs_.size() - 1; }
  const V& operator[](std::size_t k) const { return coeffs_.at(k); }
  V& operator[](std::size_t k) { return coeffs_.at(k); }
  const std::vector<V>& coefficients() const { return coeffs_; }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const V& v) { return v.is_zero(); });
  }
  /// Total number of stored terms over all orders (V must expose size()).
  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& v : coeffs_) n += v.size();
    return n;
  }
  std::string to_string() const;

  /// Lowest k with a nonzero coefficient, or order()+1 if the series vanishes.
  std::size_t valuation() const {
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
      if (!coeffs_[k].is_zero()) return k;
    return coeffs_.size();
  }

  HbarSeries truncated(std::size_t order) const {
    std::size_t n = std::min(order, this->order());
    return HbarSeries(std::vector<V>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(n + 1)));
  }

  friend HbarSeries operator+(const HbarSeries& a, const HbarSeries& b) {
    std::size_t n = std::min(a.order(), b.order());
    std::vector<V> c;
    c.reserve(n + 1);
    for (std::size_t k = 0; k <= n; ++k) c.push_back(a.coeffs_[k] + b.coeffs_[k]);
    return HbarSeries(std::move(c));
  }
  friend HbarSeries operator-(const HbarSeries& a, const HbarSeries& b) {
    std::size_t n = std::min(a.order(), b.order());
    std::vector<V> c;
    c.reserve(n + 1);
    for (std::size_t k = 0; k <= n; ++k) c.push_back(a.coeffs_[k] - b.coeffs_[k]);
    return HbarSeries(std::move(c));
  }
  friend HbarSeries operator*(const Rational& s, const HbarSeries& a) {
    std::vector<V> c;
    c.reserve(a.coeffs_.size());
    for (const auto& v : a.coeffs_) c.push_back(s * v);
    return HbarSeries(std::move(c));
  }

  friend bool operator==(const HbarSeries& a, const HbarSeries& b) {
    std::size_t n = std::min(a.order(), b.order());
    for (std::size_t k = 0; k <= n; ++k)
      if (!(a.coeffs_[k] == b.coeffs_[k])) return false;
    return true;
  }

  /// Multiplies every coefficient by hbar^shift, dropping what falls past N.
  HbarSeries shifted(std::size_t shift, const V& zero) const {
    HbarSeries s(order(), zero);
    for (std::size_t k = 0; k + shift <= order(); ++k) s.coeffs_[k + shift] = coeffs_[k];
    return s;
  }

  template <class F>
  auto map(F&& f) const {
    using W = std::decay_t<decltype(f(coeffs_[0]))>;
    std::vector<W> c;
    c.reserve(coeffs_.size());
    for (const auto& v : coeffs_) c.push_back(f(v));
    return HbarSeries<W>(std::move(c));
  }

 private:
  std::vector<V> coeffs_;
};

/// Cauchy product truncated at min(N_a, N_b); mul is the bilinear coefficient product.
template <class V, class W, class Mul>
auto series_mul(const HbarSeries<V>& a, const HbarSeries<W>& b, Mul&& mul) {
  using U = std::decay_t<decltype(mul(a[0], b[0]))>;
  const std::size_t n = std::min(a.order(), b.order());
  std::vector<U> c;
  c.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    U acc = mul(a[0], b[k]);
    for (std::size_t i = 1; i <= k; ++i) {
      if (a[i].is_zero() || b[k - i].is_zero()) continue;
      acc = acc + mul(a[i], b[k - i]);
    }
    c.push_back(std::move(acc));
  }
  return HbarSeries<U>(std::move(c));
}

/// Order-by-order inverse of a series whose hbar^0 coefficient is the unit:
/// b_0 = 1, b_k = -sum_{i=1..k} a_i b_{k-i}.
template <class V, class Mul>
HbarSeries<V> series_invert(const HbarSeries<V>& a, Mul&& mul, const V& unit) {
  if (!(a[0] == unit)) throw not_invertible_error("series_invert: leading coefficient is not the unit");
  std::vector<V> b;
  b.reserve(a.order() + 1);
  b.push_back(unit);
  for (std::size_t k = 1; k <= a.order(); ++k) {
    V acc = mul(a[1], b[k - 1]);
    for (std::size_t i = 2; i <= k; ++i) {
      if (a[i].is_zero() || b[k - i].is_zero()) continue;
      acc = acc + mul(a[i], b[k - i]);
    }
    b.push_back(Rational(-1) * acc);
  }
  return HbarSeries<V>(std::move(b));
}

/// Human-readable "c0 + hbar*(c1) + hbar^2*(c2)" skipping zero orders.
template <class V>
std::string series_to_string(const HbarSeries<V>& s) {
  std::string out;
  for (std::size_t k = 0; k <= s.order(); ++k) {
    if (s[k].is_zero()) continue;
    if (!out.empty()) out += " + ";
    std::string body = s[k].to_string();
    if (k == 0) {
      out += body;
    } else {
      out += (k == 1 ? std::string("hbar") : "hbar^" + std::to_string(k)) + "*(" + body + ")";
    }
  }
  return out.empty() ? "0" : out;
}

template <class V>
std::string HbarSeries<V>::to_string() const {
  return series_to_string(*this);
}

}  // namespace qgroupoid
