#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qgroupoid/dynamical_r.hpp"
#include "qgroupoid/expr.hpp"
#include "qgroupoid/hopf_classical.hpp"
#include "qgroupoid/lie_algebra.hpp"
#include "qgroupoid/star_twist.hpp"

namespace qgroupoid {

enum class CheckFamily { classical, twist, dynamical };

struct CheckInfo {
  std::string name;
  CheckFamily family;
  std::string summary;
  bool in_default;
};

inline const std::vector<CheckInfo>& check_catalog() {
  using F = CheckFamily;
  static const std::vector<CheckInfo> cat = {
      {"source_target", F::classical, "alpha, beta homomorphism/anti-homomorphism, commuting images", true},
      {"coassociativity", F::classical, "Eq. (1) on probes", true},
      {"compatibility", F::classical, "Eqs. (2) and (3)", true},
      {"counit", F::classical, "Eq. (4) and the counit bimodule property", true},
      {"cocommutativity", F::classical, "sigma o Delta = Delta", true},
      {"twistor", F::twist, "Eq. (9) residual of the twist", true},
      {"star_associativity", F::twist, "(f*g)*h - f*(g*h) on monomial triples", true},
      {"deformed_coassociativity", F::twist, "Theorem A: coassociativity of the twisted coproduct", true},
      {"deformed_compatibility_eq2", F::twist, "Theorem A: Eq. (2) for the twisted coproduct", true},
      {"deformed_compatibility_eq3", F::twist, "Theorem A: Eq. (3) for the twisted coproduct", true},
      {"deformed_counit", F::twist, "Theorem A: counit identities", true},
      {"deformed_mod_hbar", F::twist, "Theorem A: reduction mod hbar", true},
      {"deformed_source_target", F::twist, "Theorem A: alpha_h, beta_h", true},
      {"eq11", F::twist, "Eq. (11) on f in {x1, x2, x1^2, x1 x2}", true},
      {"classical_limit", F::twist, "Theorem B: Prop. 3.1 (i)-(iv), Prop. 3.2, base Poisson", false},
      {"triangular_round_trip", F::twist, "Theorem C: limit equals the declared Lambda and delta = -[Lambda, .]", false},
      {"regularity", F::twist, "Lambda has constant rank", false},
      {"cdybe", F::dynamical, "classical dynamical Yang-Baxter residual", true},
      {"equivariance", F::dynamical, "[h (x) 1 + 1 (x) h, r] = 0", true},
      {"symmetric_part", F::dynamical, "r + r21 constant and ad-invariant", true},
      {"example41_lambda", F::dynamical, "Example 4.1: [Lambda, Lambda] = 0", true},
      {"calibration", F::dynamical, "exactly the frozen Alt(dr) convention solves", false},
      {"bialgebroid_compat", F::dynamical, "Example 4.1 Lambda gives a Lie bialgebroid (Eqs. 15-16)", false},
  };
  return cat;
}

inline const CheckInfo* find_check(std::string_view name) {
  for (const auto& c : check_catalog())
    if (c.name == name) return &c;
  return nullptr;
}

inline std::string to_string(CheckFamily f) {
  switch (f) {
    case CheckFamily::classical:
      return "classical";
    case CheckFamily::twist:
      return "twist";
    case CheckFamily::dynamical:
      return "dynamical";
  }
  return "?";
}

struct ParseError {
  std::size_t line = 0;  // 0: not tied to a line
  std::string message;

  std::string to_string() const { return line ? "line " + std::to_string(line) + ": " + message : message; }
};

class scenario_error : public std::runtime_error {
 public:
  explicit scenario_error(std::vector<ParseError> errors)
      : std::runtime_error(join(errors)), errors_(std::move(errors)) {}
  const std::vector<ParseError>& errors() const { return errors_; }

 private:
  static std::string join(const std::vector<ParseError>& es) {
    std::string out;
    for (const auto& e : es) out += (out.empty() ? "" : "\n") + e.to_string();
    return out;
  }
  std::vector<ParseError> errors_;
};

struct Scenario {
  std::string name;
  bool expect_pass = true;
  std::size_t order = 3;

  Vars coordinates;
  std::string field = "poly";

  std::string kind;  // classical-dp, classical-ug, moyal, commuting-frame, explicit, dynamical-r
  bool corrupt = false;
  RatMatrix pi;
  std::vector<std::vector<Poly>> frame;  // rows are fields, columns coordinates
  RatMatrix c;
  std::vector<TwistTerm> terms;  // hbar^k corrections, k >= 1

  std::optional<LieAlgebraData> g;
  std::optional<DynamicalR> r;

  std::uint32_t max_degree = 2;
  std::uint32_t max_order = 2;
  std::uint32_t pbw_degree = 3;

  std::vector<std::string> checks;

  CheckFamily family() const {
    if (kind == "classical-dp" || kind == "classical-ug") return CheckFamily::classical;
    if (kind == "dynamical-r") return CheckFamily::dynamical;
    return CheckFamily::twist;
  }
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline int bracket_balance(std::string_view s) {
  int d = 0;
  for (char ch : s) {
    if (ch == '[' || ch == '(') ++d;
    if (ch == ']' || ch == ')') --d;
  }
  return d;
}

struct Entry {
  std::string section;
  std::string key;
  std::string value;
  std::size_t line;
};

inline std::vector<std::string> split_names(std::string_view s) {
  std::string t = trim(s);
  if (!t.empty() && t.front() == '[') {
    std::vector<std::string> out;
    for (const auto& x : split_list(t)) out.push_back(trim(x));
    return out;
  }
  std::vector<std::string> out;
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

inline bool valid_name(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; });
}

class ScenarioParser {
 public:
  Scenario parse(std::string_view text) {
    lex(text);
    if (!errors_.empty()) throw scenario_error(errors_);
    check_keys();
    top();
    base();
    std::size_t before = errors_.size();
    lie_algebra();
    lie_failed_ = errors_.size() != before;
    instance();
    probes();
    checks();
    if (!errors_.empty()) throw scenario_error(errors_);
    return sc_;
  }

 private:
  void error(std::size_t line, std::string msg) { errors_.push_back({line, std::move(msg)}); }

  void lex(std::string_view text) {
    std::string section;
    std::size_t lineno = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
      ++lineno;
      std::string line = trim(raw.substr(0, raw.find('#')));
      if (line.empty()) continue;
      if (line.front() == '[' && line.find('=') == std::string::npos) {
        if (line.back() != ']') {
          error(lineno, "malformed section header '" + line + "'");
          continue;
        }
        section = trim(std::string_view(line).substr(1, line.size() - 2));
        static const std::vector<std::string> known = {"base", "instance", "lie_algebra", "dynamical_r", "probes", "checks"};
        if (std::find(known.begin(), known.end(), section) == known.end())
          error(lineno, "unknown section [" + section + "]");
        sections_[section] = lineno;
        continue;
      }
      std::size_t eq = line.find('=');
      if (eq == std::string::npos) {
        error(lineno, "expected 'key = value', got '" + line + "'");
        continue;
      }
      Entry e{section, trim(std::string_view(line).substr(0, eq)), trim(std::string_view(line).substr(eq + 1)), lineno};
      // a bracketed value may continue on following lines until balanced
      while (bracket_balance(e.value) > 0 && std::getline(in, raw)) {
        ++lineno;
        e.value += " " + trim(raw.substr(0, raw.find('#')));
      }
      if (bracket_balance(e.value) != 0) error(e.line, "unbalanced brackets in value of '" + e.key + "'");
      if (e.value.empty()) error(e.line, "empty value for '" + e.key + "'");
      entries_.push_back(std::move(e));
    }
  }

  void check_keys() {
    static const std::map<std::string, std::vector<std::string>> allowed = {
        {"", {"name", "expected", "order"}},
        {"base", {"coordinates", "dimension", "field"}},
        {"instance", {"kind", "pi", "frame", "c", "term", "corrupt"}},
        {"lie_algebra", {"preset", "basis", "bracket", "cartan"}},
        {"dynamical_r", {"preset", "r"}},
        {"probes", {"max_degree", "max_order", "pbw_degree"}},
        {"checks", {"run"}},
    };
    static const std::vector<std::string> repeatable = {"term", "bracket", "run"};
    std::map<std::pair<std::string, std::string>, std::size_t> seen;
    for (const auto& e : entries_) {
      auto it = allowed.find(e.section);
      if (it == allowed.end()) continue;  // unknown section already reported
      const auto& keys = it->second;
      std::string where = e.section.empty() ? "top level" : "[" + e.section + "]";
      if (std::find(keys.begin(), keys.end(), e.key) == keys.end()) {
        error(e.line, "unknown key '" + e.key + "' in " + where);
        continue;
      }
      auto [pos, fresh] = seen.emplace(std::make_pair(e.section, e.key), e.line);
      if (!fresh && std::find(repeatable.begin(), repeatable.end(), e.key) == repeatable.end())
        error(e.line, "duplicate key '" + e.key + "' in " + where + " (first on line " + std::to_string(pos->second) + ")");
    }
  }

  const Entry* get(const std::string& section, const std::string& key) const {
    for (const auto& e : entries_)
      if (e.section == section && e.key == key) return &e;
    return nullptr;
  }
  std::vector<const Entry*> all(const std::string& section, const std::string& key) const {
    std::vector<const Entry*> out;
    for (const auto& e : entries_)
      if (e.section == section && e.key == key) out.push_back(&e);
    return out;
  }
  std::size_t section_line(const std::string& s) const {
    auto it = sections_.find(s);
    return it == sections_.end() ? 0 : it->second;
  }

  std::optional<std::uint64_t> positive(const Entry& e, bool allow_zero = false) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(e.value.data(), e.value.data() + e.value.size(), v);
    if (ec != std::errc() || p != e.value.data() + e.value.size() || (!allow_zero && v == 0) || v > 64) {
      error(e.line, "'" + e.key + "' must be an integer in [" + (allow_zero ? "0" : "1") + ", 64], got '" + e.value + "'");
      return std::nullopt;
    }
    return v;
  }

  template <class F>
  auto guarded(const Entry& e, F&& f) -> std::optional<decltype(f())> {
    try {
      return f();
    } catch (const std::exception& ex) {
      error(e.line, "'" + e.key + "': " + ex.what());
      return std::nullopt;
    }
  }

  void top() {
    if (const Entry* e = get("", "name")) {
      sc_.name = e->value;
    } else {
      error(0, "missing top-level key 'name'");
    }
    if (const Entry* e = get("", "expected")) {
      if (e->value == "pass" || e->value == "fail") {
        sc_.expect_pass = e->value == "pass";
      } else {
        error(e->line, "'expected' must be pass or fail, got '" + e->value + "'");
      }
    }
    if (const Entry* e = get("", "order"))
      if (auto v = positive(*e)) sc_.order = *v;
  }

  void base() {
    const Entry* coords = get("base", "coordinates");
    const Entry* dim = get("base", "dimension");
    if (const Entry* f = get("base", "field")) {
      if (f->value != "poly" && f->value != "ratfun") error(f->line, "'field' must be poly or ratfun, got '" + f->value + "'");
      sc_.field = f->value;
      field_line_ = f->line;
    }
    std::optional<std::size_t> n;
    if (dim)
      if (auto v = positive(*dim)) n = *v;
    if (coords) {
      auto names = guarded(*coords, [&] { return split_names(coords->value); });
      if (!names) return;
      for (const auto& s : *names)
        if (!valid_name(s)) error(coords->line, "invalid coordinate name '" + s + "'");
      std::vector<std::string> sorted = *names;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        error(coords->line, "duplicate coordinate names");
      if (names->empty()) error(coords->line, "no coordinates given");
      if (n && *n != names->size())
        error(coords->line, "dimension " + std::to_string(*n) + " does not match " + std::to_string(names->size()) +
                                " coordinate names");
      sc_.coordinates = make_vars(*names);
    } else if (n) {
      sc_.coordinates = detail::default_coordinates(*n);
    }
  }

  void lie_algebra() {
    const Entry* preset = get("lie_algebra", "preset");
    const Entry* basis = get("lie_algebra", "basis");
    if (preset) {
      if (basis || get("lie_algebra", "bracket") || get("lie_algebra", "cartan"))
        error(preset->line, "'preset' excludes basis, bracket and cartan");
      if (preset->value == "sl2") {
        sc_.g = sl2();
      } else {
        error(preset->line, "unknown Lie algebra preset '" + preset->value + "' (known: sl2)");
      }
      return;
    }
    if (!basis) {
      if (std::size_t l = section_line("lie_algebra")) error(l, "[lie_algebra] needs 'preset' or 'basis'");
      return;
    }
    auto names = guarded(*basis, [&] { return split_names(basis->value); });
    if (!names) return;
    for (const auto& s : *names)
      if (!valid_name(s)) error(basis->line, "invalid basis name '" + s + "'");
    Vars bv = make_vars(*names);
    const std::size_t n = names->size();
    auto index = [&](const std::string& s) -> std::optional<std::size_t> {
      for (std::size_t i = 0; i < n; ++i)
        if ((*names)[i] == s) return i;
      return std::nullopt;
    };
    std::map<std::pair<std::size_t, std::size_t>, LieAlgebraData::Vec> br;
    bool ok = true;
    for (const Entry* e : all("lie_algebra", "bracket")) {
      std::size_t arrow = e->value.find("->");
      auto lhs = split_names(e->value.substr(0, arrow == std::string::npos ? 0 : arrow));
      if (arrow == std::string::npos || lhs.size() != 2) {
        error(e->line, "bracket must read 'a, b -> combination'");
        ok = false;
        continue;
      }
      auto i = index(lhs[0]), j = index(lhs[1]);
      if (!i || !j) {
        error(e->line, "bracket names an element outside the basis");
        ok = false;
        continue;
      }
      auto rhs = guarded(*e, [&] { return parse_poly(e->value.substr(arrow + 2), bv); });
      if (!rhs) {
        ok = false;
        continue;
      }
      LieAlgebraData::Vec v(n, Rational(0));
      for (const auto& [ex, coef] : rhs->terms()) {
        std::uint32_t deg = 0;
        std::size_t at = 0;
        for (std::size_t k = 0; k < ex.size(); ++k)
          if (ex[k]) deg += ex[k], at = k;
        if (deg != 1) {
          error(e->line, "bracket value must be a linear combination of basis elements");
          ok = false;
          break;
        }
        v[at] = coef;
      }
      if (br.count({*i, *j})) {
        error(e->line, "bracket [" + lhs[0] + ", " + lhs[1] + "] given twice");
        ok = false;
      }
      br[{*i, *j}] = v;
    }
    std::vector<std::size_t> cartan;
    if (const Entry* e = get("lie_algebra", "cartan")) {
      auto cs = guarded(*e, [&] { return split_names(e->value); });
      for (const auto& s : cs.value_or(std::vector<std::string>{})) {
        if (auto i = index(s)) {
          cartan.push_back(*i);
        } else {
          error(e->line, "cartan element '" + s + "' is not in the basis");
          ok = false;
        }
      }
    }
    if (!ok) return;
    try {
      sc_.g = LieAlgebraData(*names, br, cartan);
    } catch (const std::exception& ex) {
      error(basis->line, ex.what());
    }
  }

  RatMatrix rational_matrix(const Entry& e, std::size_t rows, std::size_t cols) {
    auto m = guarded(e, [&] { return parse_rational_matrix(e.value); });
    if (!m) return {};
    if (m->size() != rows) {
      error(e.line, "'" + e.key + "' must have " + std::to_string(rows) + " rows, got " + std::to_string(m->size()));
      return {};
    }
    for (std::size_t i = 0; i < rows; ++i)
      if ((*m)[i].size() != cols) {
        error(e.line, "'" + e.key + "' row " + std::to_string(i + 1) + " must have " + std::to_string(cols) + " entries");
        return {};
      }
    return *m;
  }

  bool antisymmetric(const Entry& e, const RatMatrix& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j)
        if (m[i][j] != -m[j][i]) {
          error(e.line, "'" + e.key + "' is not antisymmetric: entry (" + std::to_string(i + 1) + ", " +
                            std::to_string(j + 1) + ") is " + qgroupoid::to_string(m[i][j]) + ", entry (" +
                            std::to_string(j + 1) + ", " + std::to_string(i + 1) + ") is " +
                            qgroupoid::to_string(m[j][i]));
          return false;
        }
    return true;
  }

  void instance() {
    const Entry* kind = get("instance", "kind");
    if (!kind) {
      error(section_line("instance"), "missing [instance] kind");
      return;
    }
    static const std::vector<std::string> kinds = {"classical-dp", "classical-ug", "moyal",
                                                   "commuting-frame", "explicit", "dynamical-r"};
    if (std::find(kinds.begin(), kinds.end(), kind->value) == kinds.end()) {
      error(kind->line, "unknown instance kind '" + kind->value + "'");
      return;
    }
    sc_.kind = kind->value;
    const std::string& k = sc_.kind;
    auto forbid = [&](const std::string& key) {
      if (const Entry* e = get("instance", key)) error(e->line, "'" + key + "' does not apply to kind " + k);
    };
    if (k != "moyal") forbid("pi");
    if (k != "commuting-frame") forbid("frame"), forbid("c");
    if (k != "explicit") forbid("term");
    if (k != "classical-dp") forbid("corrupt");

    const bool needs_base = k == "classical-dp" || k == "moyal" || k == "commuting-frame" || k == "explicit";
    if (needs_base && !sc_.coordinates) {
      error(kind->line, "kind " + k + " needs [base] coordinates or dimension");
      return;
    }
    if (!needs_base && sc_.coordinates) error(section_line("base"), "kind " + k + " takes no [base] coordinates");
    if (needs_base && sc_.field != "poly") error(field_line_, "kind " + k + " needs field = poly");
    if (k == "dynamical-r") {
      if (field_line_ && sc_.field != "ratfun") error(field_line_, "kind dynamical-r needs field = ratfun");
      sc_.field = "ratfun";
    }
    if (k == "classical-ug" || k == "dynamical-r") {
      if (!sc_.g && !has_lie_errors()) error(kind->line, "kind " + k + " needs a [lie_algebra] section");
    } else if (section_line("lie_algebra")) {
      error(section_line("lie_algebra"), "kind " + k + " takes no [lie_algebra]");
    }
    if (k != "dynamical-r" && section_line("dynamical_r"))
      error(section_line("dynamical_r"), "kind " + k + " takes no [dynamical_r]");

    const std::size_t n = sc_.coordinates ? var_count(sc_.coordinates) : 0;
    if (k == "classical-dp") {
      if (const Entry* e = get("instance", "corrupt")) {
        if (e->value != "true" && e->value != "false") error(e->line, "'corrupt' must be true or false");
        sc_.corrupt = e->value == "true";
      }
    } else if (k == "moyal") {
      const Entry* e = get("instance", "pi");
      if (!e) {
        error(kind->line, "kind moyal needs 'pi'");
        return;
      }
      RatMatrix m = rational_matrix(*e, n, n);
      if (!m.empty() && antisymmetric(*e, m)) sc_.pi = m;
    } else if (k == "commuting-frame") {
      const Entry* f = get("instance", "frame");
      const Entry* c = get("instance", "c");
      if (!f || !c) {
        error(kind->line, "kind commuting-frame needs 'frame' and 'c'");
        return;
      }
      auto rows = guarded(*f, [&] {
        std::vector<std::vector<Poly>> out;
        for (const auto& row : split_list(f->value)) {
          std::vector<Poly> r;
          for (const auto& item : split_list(row)) r.push_back(parse_poly(item, sc_.coordinates));
          out.push_back(std::move(r));
        }
        return out;
      });
      if (!rows) return;
      if (rows->empty()) error(f->line, "'frame' needs at least one field");
      for (std::size_t i = 0; i < rows->size(); ++i)
        if ((*rows)[i].size() != n)
          error(f->line, "'frame' row " + std::to_string(i + 1) + " must have " + std::to_string(n) + " entries");
      sc_.frame = *rows;
      RatMatrix m = rational_matrix(*c, rows->size(), rows->size());
      if (!m.empty() && antisymmetric(*c, m)) sc_.c = m;
    } else if (k == "explicit") {
      auto ts = all("instance", "term");
      if (ts.empty()) error(kind->line, "kind explicit needs at least one 'term'");
      for (const Entry* e : ts) {
        auto t = guarded(*e, [&] { return twist_term(e->value, n); });
        if (t) sc_.terms.push_back(*t);
      }
    } else if (k == "dynamical-r" && sc_.g) {
      dynamical();
    }
  }

  bool has_lie_errors() const { return lie_failed_; }

  // "order | coefficient | [left exponents] | [right exponents]"
  TwistTerm twist_term(const std::string& v, std::size_t n) {
    std::vector<std::string> parts;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, '|')) parts.push_back(trim(item));
    if (parts.size() != 4) throw expr_error("term must read 'order | coefficient | [left] | [right]'", 1);
    std::uint64_t order = 0;
    auto [p, ec] = std::from_chars(parts[0].data(), parts[0].data() + parts[0].size(), order);
    if (ec != std::errc() || p != parts[0].data() + parts[0].size() || order == 0)
      throw expr_error("term order must be a positive integer (hbar^0 is 1 (x) 1)", 1);
    TwistTerm t{order, parse_poly(parts[1], sc_.coordinates), parse_exponents(parts[2]), parse_exponents(parts[3])};
    if (t.left.size() != n || t.right.size() != n)
      throw expr_error("multi-indices must have " + std::to_string(n) + " entries", 1);
    return t;
  }

  void dynamical() {
    const LieAlgebraData& g = *sc_.g;
    const Entry* preset = get("dynamical_r", "preset");
    const Entry* r = get("dynamical_r", "r");
    if (preset && r) error(r->line, "'preset' excludes 'r'");
    if (preset) {
      if (preset->value != "sl2-rational") {
        error(preset->line, "unknown dynamical r preset '" + preset->value + "' (known: sl2-rational)");
      } else if (g.basis() != sl2().basis() || g.cartan() != sl2().cartan()) {
        error(preset->line, "preset sl2-rational needs [lie_algebra] preset = sl2");
      } else {
        sc_.r = sl2_rational_r();
      }
      return;
    }
    if (!r) {
      error(section_line("dynamical_r") ? section_line("dynamical_r") : section_line("instance"),
            "kind dynamical-r needs [dynamical_r] preset or r");
      return;
    }
    if (g.cartan().empty()) {
      error(r->line, "dynamical r needs a nonempty cartan subset");
      return;
    }
    DynamicalR out = zero_r(g);
    auto m = guarded(*r, [&] { return parse_matrix(r->value, out.lambda); });
    if (!m) return;
    if (m->size() != g.dim()) {
      error(r->line, "'r' must be " + std::to_string(g.dim()) + " x " + std::to_string(g.dim()));
      return;
    }
    for (std::size_t a = 0; a < g.dim(); ++a) {
      if ((*m)[a].size() != g.dim()) {
        error(r->line, "'r' must be " + std::to_string(g.dim()) + " x " + std::to_string(g.dim()));
        return;
      }
      for (std::size_t b = 0; b < g.dim(); ++b) out.r.at(a, b) = (*m)[a][b];
    }
    sc_.r = out;
  }

  void probes() {
    if (const Entry* e = get("probes", "max_degree"))
      if (auto v = positive(*e)) sc_.max_degree = static_cast<std::uint32_t>(*v);
    if (const Entry* e = get("probes", "max_order"))
      if (auto v = positive(*e)) sc_.max_order = static_cast<std::uint32_t>(*v);
    if (const Entry* e = get("probes", "pbw_degree"))
      if (auto v = positive(*e)) sc_.pbw_degree = static_cast<std::uint32_t>(*v);
  }

  void checks() {
    auto runs = all("checks", "run");
    for (const Entry* e : runs) {
      for (const auto& name : split_names(e->value)) {
        const CheckInfo* info = find_check(name);
        if (!info) {
          error(e->line, "unknown check '" + name + "'");
        } else if (!sc_.kind.empty() && info->family != sc_.family()) {
          error(e->line, "check '" + name + "' does not apply to kind " + sc_.kind);
        } else if (std::find(sc_.checks.begin(), sc_.checks.end(), name) != sc_.checks.end()) {
          error(e->line, "check '" + name + "' listed twice");
        } else {
          sc_.checks.push_back(name);
        }
      }
    }
    if (runs.empty() && !sc_.kind.empty())
      for (const auto& c : check_catalog())
        if (c.family == sc_.family() && c.in_default) sc_.checks.push_back(c.name);
  }

  Scenario sc_;
  std::vector<Entry> entries_;
  std::map<std::string, std::size_t> sections_;
  std::vector<ParseError> errors_;
  std::size_t field_line_ = 0;
  bool lie_failed_ = false;
};

}  // namespace detail

/// Throws scenario_error carrying every problem found, each with its line.
inline Scenario parse_scenario(std::string_view text) { return detail::ScenarioParser().parse(text); }

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw scenario_error({{0, "cannot read " + path}});
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

/// Replaces the check list (command-line --check); names are validated like the file's.
inline void select_checks(Scenario& sc, const std::vector<std::string>& names) {
  std::vector<ParseError> errs;
  std::vector<std::string> out;
  for (const auto& n : names) {
    const CheckInfo* info = find_check(n);
    if (!info) {
      errs.push_back({0, "unknown check '" + n + "'"});
    } else if (info->family != sc.family()) {
      errs.push_back({0, "check '" + n + "' does not apply to kind " + sc.kind});
    } else if (std::find(out.begin(), out.end(), n) == out.end()) {
      out.push_back(n);
    }
  }
  if (!errs.empty()) throw scenario_error(errs);
  sc.checks = out;
}

}  // namespace qgroupoid
