#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qgroupoid/errors.hpp"
#include "qgroupoid/poly.hpp"

namespace qgroupoid {

/// Arity-k polydifferential operator in normal form
///   sum_t c_t(x) * d^{I_1} (x) ... (x) d^{I_k},
/// one polynomial coefficient per derivative tuple. The key concatenates the
/// k multi-indices slot by slot. Coefficients sit in slot 1: every
/// multiplication operator in slots 2..k has been migrated to the front, which
/// realizes D (x)_R ... (x)_R D as the space of k-differential operators.
class PolyDiffOp {
 public:
  using Key = Exponents;
  using Terms = std::map<Key, Poly>;

  PolyDiffOp() = default;
  PolyDiffOp(Vars vars, std::size_t arity) : vars_(std::move(vars)), arity_(arity) {
    if (arity_ == 0) throw structural_error("PolyDiffOp: arity must be >= 1");
  }

  /// 1 (x) ... (x) 1.
  static PolyDiffOp identity(Vars vars, std::size_t arity = 1) { return multiplication(Poly::one(vars), arity); }
  /// c * (1 (x) ... (x) 1).
  static PolyDiffOp multiplication(const Poly& c, std::size_t arity = 1) {
    PolyDiffOp d(c.vars(), arity);
    d.add_term(Key(arity * c.nvars(), 0), c);
    return d;
  }
  /// c * d^{I_1} (x) ... (x) d^{I_k}.
  static PolyDiffOp term(const Poly& c, const std::vector<Exponents>& slots) {
    PolyDiffOp d(c.vars(), slots.size());
    Key k;
    for (const auto& s : slots) {
      if (s.size() != c.nvars()) throw structural_error("PolyDiffOp::term: multi-index length");
      k.insert(k.end(), s.begin(), s.end());
    }
    d.add_term(k, c);
    return d;
  }
  /// Pure derivative d^I of arity 1.
  static PolyDiffOp derivative(const Vars& vars, const Exponents& I) { return term(Poly::one(vars), {I}); }
  /// First-order coordinate derivative d/dx_k.
  static PolyDiffOp partial(const Vars& vars, std::size_t k) {
    Exponents I(var_count(vars), 0);
    I.at(k) = 1;
    return derivative(vars, I);
  }

  const Vars& vars() const { return vars_; }
  std::size_t arity() const { return arity_; }
  std::size_t base_dim() const { return var_count(vars_); }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Multi-index of slot s (0-based) inside a key.
  Exponents slot(const Key& k, std::size_t s) const {
    const std::size_t n = base_dim();
    return Exponents(k.begin() + static_cast<std::ptrdiff_t>(s * n),
                     k.begin() + static_cast<std::ptrdiff_t>((s + 1) * n));
  }
  /// Highest total derivative order over all slots and terms.
  std::uint32_t order() const {
    std::uint32_t d = 0;
    for (const auto& [k, c] : terms_) d = std::max(d, total_degree(k));
    return d;
  }
  std::uint32_t slot_order(std::size_t s) const {
    std::uint32_t d = 0;
    for (const auto& [k, c] : terms_) d = std::max(d, total_degree(slot(k, s)));
    return d;
  }
  /// Highest polynomial degree among coefficients.
  std::uint32_t coefficient_degree() const {
    std::uint32_t d = 0;
    for (const auto& [k, c] : terms_) d = std::max(d, c.degree());
    return d;
  }
  Poly coefficient(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Poly(vars_) : it->second;
  }

  void add_term(const Key& k, const Poly& c) {
    if (k.size() != arity_ * base_dim()) throw structural_error("PolyDiffOp: key length");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  PolyDiffOp& operator+=(const PolyDiffOp& o) {
    check_compatible(o, "PolyDiffOp +");
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  PolyDiffOp& operator-=(const PolyDiffOp& o) {
    check_compatible(o, "PolyDiffOp -");
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
  }
  friend PolyDiffOp operator+(PolyDiffOp a, const PolyDiffOp& b) { return a += b; }
  friend PolyDiffOp operator-(PolyDiffOp a, const PolyDiffOp& b) { return a -= b; }
  friend PolyDiffOp operator-(PolyDiffOp a) {
    for (auto& [k, c] : a.terms_) c = -c;
    return a;
  }
  friend PolyDiffOp operator*(const Rational& s, PolyDiffOp a) {
    if (qgroupoid::is_zero(s)) return PolyDiffOp(a.vars_, a.arity_);
    for (auto& [k, c] : a.terms_) c *= s;
    return a;
  }
  /// Left multiplication of the tuple coefficient by a function.
  friend PolyDiffOp operator*(const Poly& f, const PolyDiffOp& a) {
    PolyDiffOp r(a.vars_, a.arity_);
    for (const auto& [k, c] : a.terms_) r.add_term(k, f * c);
    return r;
  }

  friend bool operator==(const PolyDiffOp& a, const PolyDiffOp& b) {
    return a.arity_ == b.arity_ && same_vars(a.vars_, b.vars_) && a.terms_ == b.terms_;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!first) os << " + ";
      first = false;
      const auto& [k, c] = *it;
      if (c.size() > 1) {
        os << "(" << c.to_string() << ")";
      } else {
        os << c.to_string();
      }
      os << "*[";
      for (std::size_t s = 0; s < arity_; ++s) {
        if (s) os << " | ";
        os << derivative_name(slot(k, s));
      }
      os << "]";
    }
    return os.str();
  }

  std::string derivative_name(const Exponents& I) const {
    if (total_degree(I) == 0) return "1";
    std::string out;
    for (std::size_t i = 0; i < I.size(); ++i) {
      if (I[i] == 0) continue;
      if (!out.empty()) out += "*";
      out += "d" + (*vars_)[i];
      if (I[i] > 1) out += "^" + std::to_string(I[i]);
    }
    return out;
  }

 private:
  void check_compatible(const PolyDiffOp& o, const char* where) const {
    if (arity_ != o.arity_) throw structural_error(std::string(where) + ": arity mismatch");
    require_same_vars(vars_, o.vars_, where);
  }

  Vars vars_;
  std::size_t arity_ = 1;
  Terms terms_;
};

namespace detail {

inline PolyDiffOp::Key concat_key(const std::vector<Exponents>& slots) {
  PolyDiffOp::Key k;
  for (const auto& s : slots) k.insert(k.end(), s.begin(), s.end());
  return k;
}

inline Exponents add_exps(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Exponents sub_exps(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

}  // namespace detail

/// sum_t c_t * prod_j d^{I_j} f_j.
inline Poly apply(const PolyDiffOp& D, std::span<const Poly> args) {
  if (args.size() != D.arity()) throw structural_error("apply: arity mismatch");
  for (const auto& a : args) require_same_vars(D.vars(), a.vars(), "apply");
  Poly out(D.vars());
  std::map<std::pair<std::size_t, Exponents>, Poly> cache;
  auto deriv = [&](std::size_t s, const Exponents& I) -> const Poly& {
    auto key = std::make_pair(s, I);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, args[s].derivative(I)).first;
    return it->second;
  };
  for (const auto& [k, c] : D.terms()) {
    Poly t = c;
    for (std::size_t s = 0; s < D.arity() && !t.is_zero(); ++s) t = t * deriv(s, D.slot(k, s));
    out += t;
  }
  return out;
}

inline Poly apply(const PolyDiffOp& D, std::initializer_list<Poly> args) {
  std::vector<Poly> v(args);
  return apply(D, std::span<const Poly>(v));
}

/// Normal form of D o E for arity-1 operators via
/// d^I o c = sum_{K<=I} binom(I,K) (d^K c) d^{I-K}.
inline PolyDiffOp compose(const PolyDiffOp& D, const PolyDiffOp& E) {
  if (D.arity() != 1 || E.arity() != 1) throw structural_error("compose: arity-1 operators expected");
  require_same_vars(D.vars(), E.vars(), "compose");
  PolyDiffOp out(D.vars(), 1);
  for (const auto& [I, a] : D.terms()) {
    auto subs = sub_indices(I);
    for (const auto& [J, b] : E.terms()) {
      for (const auto& [K, bin] : subs) {
        Poly dk = b.derivative(K);
        if (dk.is_zero()) continue;
        Exponents key = detail::add_exps(detail::sub_exps(I, K), J);
        out.add_term(key, bin * (a * dk));
      }
    }
  }
  return out;
}

/// A plain tensor: a formal sum of scaled elementary tensors D_1 (x) ... (x) D_k
/// of arity-1 operators whose coefficients stay in the slot they were placed
/// in. Used as the right operand of products where the representative
/// matters (phi^{23}, beta(a) (x) 1 - 1 (x) alpha(a)).
struct SlotTensor {
  struct Elementary {
    Rational scale;
    std::vector<PolyDiffOp> slots;
  };
  std::vector<Elementary> terms;

  SlotTensor() = default;
  explicit SlotTensor(std::vector<PolyDiffOp> slots, Rational scale = Rational(1)) {
    terms.push_back({std::move(scale), std::move(slots)});
  }

  bool is_zero() const {
    for (const auto& t : terms) {
      if (is_zero_scale(t.scale)) continue;
      bool any_zero = false;
      for (const auto& s : t.slots) any_zero = any_zero || s.is_zero();
      if (!any_zero) return false;
    }
    return true;
  }
  friend SlotTensor operator+(SlotTensor a, const SlotTensor& b) {
    a.terms.insert(a.terms.end(), b.terms.begin(), b.terms.end());
    return a;
  }
  friend SlotTensor operator-(SlotTensor a, const SlotTensor& b) {
    for (auto t : b.terms) {
      t.scale = -t.scale;
      a.terms.push_back(std::move(t));
    }
    return a;
  }
  friend SlotTensor operator*(const Rational& s, SlotTensor a) {
    for (auto& t : a.terms) t.scale *= s;
    return a;
  }

 private:
  static bool is_zero_scale(const Rational& q) { return qgroupoid::is_zero(q); }
};

/// Migrates every slot's coefficients into the single tuple coefficient.
/// Action preserving: apply(normalize(T), f) = sum scale * prod_j D_j(f_j).
inline PolyDiffOp normalize(const SlotTensor& T, const Vars& vars, std::size_t arity) {
  PolyDiffOp out(vars, arity);
  for (const auto& el : T.terms) {
    if (el.slots.size() != arity) throw structural_error("normalize: arity mismatch");
    // running product over slots: map from partial key to coefficient
    std::map<PolyDiffOp::Key, Poly> acc;
    acc.emplace(PolyDiffOp::Key{}, Poly::constant(vars, el.scale));
    for (const auto& D : el.slots) {
      if (D.arity() != 1) throw structural_error("normalize: slots must be arity-1 operators");
      require_same_vars(vars, D.vars(), "normalize");
      std::map<PolyDiffOp::Key, Poly> next;
      for (const auto& [pk, pc] : acc) {
        for (const auto& [I, c] : D.terms()) {
          PolyDiffOp::Key k = pk;
          k.insert(k.end(), I.begin(), I.end());
          auto [it, ins] = next.try_emplace(k, pc * c);
          if (!ins) it->second += pc * c;
        }
      }
      acc = std::move(next);
    }
    for (const auto& [k, c] : acc) out.add_term(k, c);
  }
  return out;
}

inline PolyDiffOp normalize(const SlotTensor& T) {
  if (T.terms.empty()) throw structural_error("normalize: empty tensor has no arity");
  const auto& s = T.terms.front().slots;
  return normalize(T, s.front().vars(), s.size());
}

/// Splits a normal form into its slot-1-coefficient representative.
inline SlotTensor representative(const PolyDiffOp& B) {
  SlotTensor T;
  for (const auto& [k, c] : B.terms()) {
    std::vector<PolyDiffOp> slots;
    slots.push_back(PolyDiffOp::term(c, {B.slot(k, 0)}));
    for (std::size_t s = 1; s < B.arity(); ++s) slots.push_back(PolyDiffOp::derivative(B.vars(), B.slot(k, s)));
    T.terms.push_back({Rational(1), std::move(slots)});
  }
  return T;
}

/// B . C computed slot by slot: (B.C)(f_1..f_k) = B(C_1 f_1, ..., C_k f_k)
/// summed over the elementary tensors of C. The result does not depend on
/// the representative of B; it does depend on C's slot placement.
inline PolyDiffOp slotwise_product(const PolyDiffOp& B, const SlotTensor& C) {
  PolyDiffOp out(B.vars(), B.arity());
  const std::size_t k = B.arity();
  for (const auto& el : C.terms) {
    if (el.slots.size() != k) throw structural_error("slotwise_product: arity mismatch");
    if (is_zero(el.scale)) continue;
    for (const auto& [key, b] : B.terms()) {
      std::vector<PolyDiffOp> composed;
      composed.reserve(k);
      for (std::size_t s = 0; s < k; ++s) {
        PolyDiffOp ds = PolyDiffOp::derivative(B.vars(), B.slot(key, s));
        if (s == 0) ds = PolyDiffOp::term(b, {B.slot(key, 0)});
        composed.push_back(compose(ds, el.slots[s]));
      }
      out += normalize(SlotTensor(std::move(composed), el.scale), B.vars(), k);
    }
  }
  return out;
}

/// Product of normal forms with C read through its slot-1 representative.
/// On normal forms this is the multiplication of the associative algebra
/// D (x) C[d] (x) ... (x) C[d], so it is associative.
inline PolyDiffOp slotwise_product(const PolyDiffOp& B, const PolyDiffOp& C) {
  if (B.arity() != C.arity()) throw structural_error("slotwise_product: arity mismatch");
  require_same_vars(B.vars(), C.vars(), "slotwise_product");
  const std::size_t k = B.arity();
  const std::size_t n = B.base_dim();
  PolyDiffOp out(B.vars(), k);
  for (const auto& [kb, b] : B.terms()) {
    Exponents I1 = B.slot(kb, 0);
    auto subs = sub_indices(I1);
    for (const auto& [kc, c] : C.terms()) {
      for (const auto& [K, bin] : subs) {
        Poly dc = c.derivative(K);
        if (dc.is_zero()) continue;
        PolyDiffOp::Key key(k * n);
        for (std::size_t i = 0; i < n; ++i) key[i] = I1[i] - K[i] + kc[i];
        for (std::size_t i = n; i < k * n; ++i) key[i] = kb[i] + kc[i];
        out.add_term(key, bin * (b * dc));
      }
    }
  }
  return out;
}

/// Leibniz coproduct applied to slot s: the slot's multi-index I is split as
/// sum_{J<=I} binom(I,J) d^J (x) d^{I-J}. Arity grows by one. With s = 0 on an
/// arity-1 operator this is Delta(D)(f,g) = D(fg).
inline PolyDiffOp coproduct_in_slot(const PolyDiffOp& B, std::size_t s) {
  if (s >= B.arity()) throw structural_error("coproduct_in_slot: slot out of range");
  PolyDiffOp out(B.vars(), B.arity() + 1);
  for (const auto& [k, c] : B.terms()) {
    Exponents I = B.slot(k, s);
    for (const auto& [J, bin] : sub_indices(I)) {
      std::vector<Exponents> slots;
      for (std::size_t t = 0; t < B.arity(); ++t) {
        if (t == s) {
          slots.push_back(J);
          slots.push_back(detail::sub_exps(I, J));
        } else {
          slots.push_back(B.slot(k, t));
        }
      }
      out.add_term(detail::concat_key(slots), bin * c);
    }
  }
  return out;
}

inline PolyDiffOp leibniz_coproduct(const PolyDiffOp& D) {
  if (D.arity() != 1) throw structural_error("leibniz_coproduct: arity-1 operator expected");
  return coproduct_in_slot(D, 0);
}

/// Zero-order part, equivalently D(1).
inline Poly counit(const PolyDiffOp& D) {
  if (D.arity() != 1) throw structural_error("counit: arity-1 operator expected");
  return D.coefficient(Exponents(D.base_dim(), 0));
}

/// Exchanges the two slots of a bidifferential operator.
inline PolyDiffOp flip(const PolyDiffOp& B) {
  if (B.arity() != 2) throw structural_error("flip: arity-2 operator expected");
  PolyDiffOp out(B.vars(), 2);
  for (const auto& [k, c] : B.terms()) out.add_term(detail::concat_key({B.slot(k, 1), B.slot(k, 0)}), c);
  return out;
}

/// B (x) 1: appends an identity slot (already normal).
inline PolyDiffOp append_identity_slot(const PolyDiffOp& B) {
  PolyDiffOp out(B.vars(), B.arity() + 1);
  Exponents zero(B.base_dim(), 0);
  for (const auto& [k, c] : B.terms()) {
    PolyDiffOp::Key key = k;
    key.insert(key.end(), zero.begin(), zero.end());
    out.add_term(key, c);
  }
  return out;
}

/// 1 (x) B as a plain tensor: B's coefficients stay in slot 2.
inline SlotTensor prepend_identity_slot(const PolyDiffOp& B) {
  SlotTensor T;
  for (auto el : representative(B).terms) {
    el.slots.insert(el.slots.begin(), PolyDiffOp::identity(B.vars()));
    T.terms.push_back(std::move(el));
  }
  return T;
}

/// Elementary plain tensor D_1 (x) ... (x) D_k.
inline SlotTensor plain_tensor(std::vector<PolyDiffOp> slots) { return SlotTensor(std::move(slots)); }

}  // namespace qgroupoid
