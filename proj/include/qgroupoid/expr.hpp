#pragma once

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qgroupoid/errors.hpp"
#include "qgroupoid/poisson.hpp"
#include "qgroupoid/poly.hpp"
#include "qgroupoid/ratfun.hpp"

namespace qgroupoid {

/// Malformed expression, matrix or list; column is 1-based within the parsed text.
class expr_error : public std::runtime_error {
 public:
  expr_error(const std::string& msg, std::size_t column)
      : std::runtime_error(msg + " (column " + std::to_string(column) + ")"), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

namespace detail {

// expr   := term (('+' | '-') term)*
// term   := unary (('*' | '/') unary)*
// unary  := ('-' | '+') unary | power
// power  := atom ('^' integer)?
// atom   := integer | name | '(' expr ')'
class ExprParser {
 public:
  ExprParser(std::string_view s, Vars vars) : s_(s), vars_(std::move(vars)) {}

  RatFun parse() {
    RatFun v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw expr_error(msg, pos_ + 1); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RatFun expr() {
    RatFun v = term();
    for (;;) {
      if (eat('+')) {
        v = v + term();
      } else if (eat('-')) {
        v = v - term();
      } else {
        return v;
      }
    }
  }
  RatFun term() {
    RatFun v = unary();
    for (;;) {
      if (eat('*')) {
        v = v * unary();
      } else if (eat('/')) {
        std::size_t at = pos_;
        RatFun d = unary();
        if (d.is_zero()) {
          pos_ = at;
          fail("division by zero");
        }
        v = v / d;
      } else {
        return v;
      }
    }
  }
  RatFun unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  RatFun power() {
    RatFun base = atom();
    if (!eat('^')) return base;
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a non-negative integer exponent");
    unsigned long k = std::stoul(std::string(s_.substr(start, pos_ - start)));
    if (k > 64) fail("exponent too large");
    RatFun out = RatFun::one(vars_);
    for (unsigned long i = 0; i < k; ++i) out = out * base;
    return out;
  }
  RatFun atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RatFun v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return RatFun::constant(vars_, Rational(std::string(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      for (std::size_t i = 0; i < var_count(vars_); ++i)
        if ((*vars_)[i] == name) return RatFun::variable(vars_, i);
      pos_ = start;
      fail("unknown variable '" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  Vars vars_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline RatFun parse_ratfun(std::string_view text, const Vars& vars) { return detail::ExprParser(text, vars).parse(); }

inline Poly parse_poly(std::string_view text, const Vars& vars) {
  RatFun r = parse_ratfun(text, vars);
  if (!r.is_polynomial()) throw expr_error("expected a polynomial, got " + r.to_string(), 1);
  Rational d = r.den().terms().begin()->second;
  return (1 / d) * r.num();
}

inline Rational parse_rational(std::string_view text) {
  RatFun r = parse_ratfun(text, make_vars({}));
  return r.num().is_zero() ? Rational(0) : r.num().terms().begin()->second / r.den().terms().begin()->second;
}

/// Splits "[a, b, [c, d]]" into its top-level items (brackets and parentheses nest).
inline std::vector<std::string> split_list(std::string_view text) {
  std::size_t b = text.find_first_not_of(" \t");
  std::size_t e = text.find_last_not_of(" \t");
  if (b == std::string_view::npos || text[b] != '[' || text[e] != ']')
    throw expr_error("expected a bracketed list", b == std::string_view::npos ? 1 : b + 1);
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  bool any = false;
  for (std::size_t i = b + 1; i < e; ++i) {
    char c = text[i];
    if (c == '[' || c == '(') ++depth;
    if (c == ']' || c == ')') {
      if (--depth < 0) throw expr_error("unbalanced brackets", i + 1);
    }
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
      continue;
    }
    if (!std::isspace(static_cast<unsigned char>(c))) any = true;
    cur += c;
  }
  if (depth != 0) throw expr_error("unbalanced brackets", e + 1);
  if (any || !out.empty()) out.push_back(cur);
  return out;
}

/// "[[..], [..]]" as rows of expressions.
inline std::vector<std::vector<RatFun>> parse_matrix(std::string_view text, const Vars& vars) {
  std::vector<std::vector<RatFun>> out;
  for (const auto& row : split_list(text)) {
    std::vector<RatFun> r;
    for (const auto& item : split_list(row)) r.push_back(parse_ratfun(item, vars));
    out.push_back(std::move(r));
  }
  return out;
}

inline RatMatrix parse_rational_matrix(std::string_view text) {
  RatMatrix out;
  for (const auto& row : split_list(text)) {
    std::vector<Rational> r;
    for (const auto& item : split_list(row)) r.push_back(parse_rational(item));
    out.push_back(std::move(r));
  }
  return out;
}

inline Exponents parse_exponents(std::string_view text) {
  Exponents out;
  for (const auto& item : split_list(text)) {
    Rational q = parse_rational(item);
    if (q < 0 || q.get_den() != 1) throw expr_error("expected a non-negative integer, got " + item, 1);
    out.push_back(static_cast<std::uint32_t>(q.get_num().get_ui()));
  }
  return out;
}

}  // namespace qgroupoid
