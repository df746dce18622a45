#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qgroupoid/lie_algebra.hpp"
#include "qgroupoid/poly.hpp"

namespace qgroupoid {

/// PBW monomial: exponent of each basis element. With basis x_0..x_{n-1} the
/// monomial (a_0..a_{n-1}) stands for x_{n-1}^{a_{n-1}} ... x_1^{a_1} x_0^{a_0},
/// i.e. basis indices are non-increasing from left to right. For sl_2 with
/// basis (e,f,h) that is h^c f^b e^a, so e.f straightens to fe + h.
using PBWMono = Exponents;

/// Element of U(g) as a map from PBW monomials to coefficients.
class PBWElement {
 public:
  using Terms = std::map<PBWMono, Rational>;

  PBWElement() = default;
  explicit PBWElement(std::size_t dim) : dim_(dim) {}

  static PBWElement constant(std::size_t dim, const Rational& c) {
    PBWElement p(dim);
    p.add_term(PBWMono(dim, 0), c);
    return p;
  }
  static PBWElement one(std::size_t dim) { return constant(dim, Rational(1)); }
  static PBWElement generator(std::size_t dim, std::size_t i) {
    PBWMono m(dim, 0);
    m.at(i) = 1;
    PBWElement p(dim);
    p.add_term(m, Rational(1));
    return p;
  }
  static PBWElement monomial(PBWMono m, const Rational& c = Rational(1)) {
    PBWElement p(m.size());
    p.add_term(std::move(m), c);
    return p;
  }

  std::size_t dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  std::uint32_t degree() const {
    std::uint32_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, total_degree(m));
    return d;
  }
  Rational coefficient(const PBWMono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const PBWMono& m, const Rational& c) {
    if (m.size() != dim_) throw structural_error("PBWElement: monomial length");
    if (qgroupoid::is_zero(c)) return;
    auto [it, ins] = terms_.try_emplace(m, c);
    if (!ins) {
      it->second += c;
      if (qgroupoid::is_zero(it->second)) terms_.erase(it);
    }
  }

  PBWElement& operator+=(const PBWElement& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  PBWElement& operator-=(const PBWElement& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend PBWElement operator+(PBWElement a, const PBWElement& b) { return a += b; }
  friend PBWElement operator-(PBWElement a, const PBWElement& b) { return a -= b; }
  friend PBWElement operator-(PBWElement a) {
    for (auto& [m, c] : a.terms_) c = -c;
    return a;
  }
  friend PBWElement operator*(const Rational& s, PBWElement a) {
    if (qgroupoid::is_zero(s)) return PBWElement(a.dim_);
    for (auto& [m, c] : a.terms_) c *= s;
    return a;
  }
  friend bool operator==(const PBWElement& a, const PBWElement& b) { return a.dim_ == b.dim_ && a.terms_ == b.terms_; }

  std::string to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [m, c] = *it;
      std::string word = mono_string(m, names);
      Rational a = abs(c);
      if (first) {
        if (c < 0) os << "-";
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      if (word.empty()) {
        os << qgroupoid::to_string(a);
      } else {
        if (a != 1) os << qgroupoid::to_string(a) << "*";
        os << word;
      }
    }
    return os.str();
  }

  static std::string mono_string(const PBWMono& m, const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = m.size(); i-- > 0;) {
      if (m[i] == 0) continue;
      if (!out.empty()) out += "*";
      out += i < names.size() ? names[i] : "x" + std::to_string(i);
      if (m[i] > 1) out += "^" + std::to_string(m[i]);
    }
    return out;
  }

 private:
  void check(const PBWElement& o) const {
    if (dim_ != o.dim_) throw structural_error("PBWElement: dimension mismatch");
  }

  std::size_t dim_ = 0;
  Terms terms_;
};

/// Sum of K-fold tensors of PBW monomials, U(g)^{(x)K} over the ground field.
template <std::size_t K>
class PBWTensor {
 public:
  using Key = std::array<PBWMono, K>;
  using Terms = std::map<Key, Rational>;

  PBWTensor() = default;
  explicit PBWTensor(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Key& k, const Rational& c) {
    if (qgroupoid::is_zero(c)) return;
    auto [it, ins] = terms_.try_emplace(k, c);
    if (!ins) {
      it->second += c;
      if (qgroupoid::is_zero(it->second)) terms_.erase(it);
    }
  }
  PBWTensor& operator+=(const PBWTensor& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  PBWTensor& operator-=(const PBWTensor& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
  }
  friend PBWTensor operator+(PBWTensor a, const PBWTensor& b) { return a += b; }
  friend PBWTensor operator-(PBWTensor a, const PBWTensor& b) { return a -= b; }
  friend PBWTensor operator*(const Rational& s, PBWTensor a) {
    if (qgroupoid::is_zero(s)) return PBWTensor(a.dim_);
    for (auto& [k, c] : a.terms_) c *= s;
    return a;
  }
  friend bool operator==(const PBWTensor& a, const PBWTensor& b) { return a.terms_ == b.terms_; }

  std::string to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!first) os << " + ";
      first = false;
      os << qgroupoid::to_string(it->second) << "*(";
      for (std::size_t s = 0; s < K; ++s) {
        if (s) os << " (x) ";
        std::string w = PBWElement::mono_string(it->first[s], names);
        os << (w.empty() ? "1" : w);
      }
      os << ")";
    }
    return os.str();
  }

 private:
  std::size_t dim_ = 0;
  Terms terms_;
};

/// Multiplication in U(g) by straightening words: the leftmost adjacent pair
/// x_i x_j with i < j is rewritten as x_j x_i + [x_i, x_j] until every word
/// has non-increasing indices.
class PBWAlgebra {
 public:
  explicit PBWAlgebra(LieAlgebraData g) : g_(std::make_shared<const LieAlgebraData>(std::move(g))) {}

  const LieAlgebraData& lie() const { return *g_; }
  std::size_t dim() const { return g_->dim(); }
  const std::vector<std::string>& names() const { return g_->basis(); }

  PBWElement one() const { return PBWElement::one(dim()); }
  PBWElement generator(std::size_t i) const { return PBWElement::generator(dim(), i); }
  PBWElement generator(const std::string& name) const { return generator(g_->index(name)); }

  PBWElement mul(const PBWElement& a, const PBWElement& b) const {
    PBWElement out(dim());
    Memo memo;
    for (const auto& [ma, ca] : a.terms()) {
      for (const auto& [mb, cb] : b.terms()) {
        Word w = to_word(ma);
        Word wb = to_word(mb);
        w.insert(w.end(), wb.begin(), wb.end());
        out += (ca * cb) * straighten(w, memo);
      }
    }
    return out;
  }

  PBWElement pow(const PBWElement& a, unsigned k) const {
    PBWElement r = one();
    for (unsigned i = 0; i < k; ++i) r = mul(r, a);
    return r;
  }

  /// Normal form of an arbitrary word in the generators.
  PBWElement word(const std::vector<std::size_t>& w) const {
    Memo memo;
    return straighten(w, memo);
  }

  /// Delta(x) = x (x) 1 + 1 (x) x on generators, extended multiplicatively.
  /// The factors of a PBW monomial are powers of primitive elements, so
  /// Delta(x_i^a) = sum_k binom(a,k) x_i^k (x) x_i^{a-k}, and the normal order
  /// of both tensor legs is preserved.
  PBWTensor<2> coproduct(const PBWElement& a) const {
    PBWTensor<2> out(dim());
    for (const auto& [m, c] : a.terms()) {
      for (const auto& [left, bin] : sub_indices(m)) {
        PBWMono right(m.size());
        for (std::size_t i = 0; i < m.size(); ++i) right[i] = m[i] - left[i];
        out.add_term({left, right}, c * bin);
      }
    }
    return out;
  }

  /// Projection to degree 0.
  Rational counit(const PBWElement& a) const { return a.coefficient(PBWMono(dim(), 0)); }

  /// Componentwise product in U(g) (x) ... (x) U(g).
  template <std::size_t K>
  PBWTensor<K> tensor_mul(const PBWTensor<K>& a, const PBWTensor<K>& b) const {
    PBWTensor<K> out(dim());
    for (const auto& [ka, ca] : a.terms()) {
      for (const auto& [kb, cb] : b.terms()) {
        std::array<PBWElement, K> legs;
        for (std::size_t s = 0; s < K; ++s)
          legs[s] = mul(PBWElement::monomial(ka[s]), PBWElement::monomial(kb[s]));
        expand<K>(legs, ca * cb, out);
      }
    }
    return out;
  }

  /// All normal-ordered monomials of total degree <= d.
  std::vector<PBWElement> monomials_up_to(std::uint32_t d) const {
    std::vector<PBWElement> out;
    for (const auto& m : multi_indices_up_to(dim(), d)) out.push_back(PBWElement::monomial(m));
    return out;
  }

  /// Sum over the legs' terms of coef * (l_1 (x) ... (x) l_K).
  template <std::size_t K>
  static void expand(const std::array<PBWElement, K>& legs, const Rational& coef, PBWTensor<K>& out) {
    typename PBWTensor<K>::Key key;
    expand_rec<K>(legs, 0, coef, key, out);
  }

 private:
  using Word = std::vector<std::size_t>;
  using Memo = std::map<Word, PBWElement>;

  template <std::size_t K>
  static void expand_rec(const std::array<PBWElement, K>& legs, std::size_t s, const Rational& coef,
                         typename PBWTensor<K>::Key& key, PBWTensor<K>& out) {
    if (s == K) {
      out.add_term(key, coef);
      return;
    }
    for (const auto& [m, c] : legs[s].terms()) {
      key[s] = m;
      expand_rec<K>(legs, s + 1, coef * c, key, out);
    }
  }

  Word to_word(const PBWMono& m) const {
    Word w;
    for (std::size_t i = m.size(); i-- > 0;)
      for (std::uint32_t k = 0; k < m[i]; ++k) w.push_back(i);
    return w;
  }

  PBWElement straighten(const Word& w, Memo& memo) const {
    auto it = memo.find(w);
    if (it != memo.end()) return it->second;
    PBWElement out(dim());
    std::size_t pos = w.size();
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i] < w[i + 1]) {
        pos = i;
        break;
      }
    }
    if (pos == w.size()) {
      PBWMono m(dim(), 0);
      for (auto i : w) ++m[i];
      out.add_term(m, Rational(1));
    } else {
      Word swapped = w;
      std::swap(swapped[pos], swapped[pos + 1]);
      out += straighten(swapped, memo);
      const auto& c = g_->structure(w[pos], w[pos + 1]);
      for (std::size_t k = 0; k < dim(); ++k) {
        if (qgroupoid::is_zero(c[k])) continue;
        Word shorter(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
        shorter.push_back(k);
        shorter.insert(shorter.end(), w.begin() + static_cast<std::ptrdiff_t>(pos + 2), w.end());
        out += c[k] * straighten(shorter, memo);
      }
    }
    memo.emplace(w, out);
    return out;
  }

  std::shared_ptr<const LieAlgebraData> g_;
};

}  // namespace qgroupoid
