#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "qgroupoid/classical_limit.hpp"
#include "qgroupoid/deformed_suite.hpp"
#include "qgroupoid/dynamical_r.hpp"
#include "qgroupoid/hopf_classical.hpp"
#include "qgroupoid/lie_algebroid.hpp"
#include "qgroupoid/scenario.hpp"

namespace qgroupoid {

struct CheckResult {
  CheckReport report;
  double millis = 0;

  std::string status() const {
    if (!report.error.empty()) return "error";
    return report.passed() ? "pass" : "fail";
  }
};

struct RunReport {
  std::string scenario;
  std::string kind;
  std::size_t order = 0;
  bool expect_pass = true;
  std::vector<CheckResult> checks;
  double total_millis = 0;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.report.passed(); });
  }
  bool expectation_met() const { return passed() == expect_pass; }
  int exit_code() const { return expectation_met() ? 0 : 1; }
};

/// Everything the checks share, built once before they are dispatched.
struct ScenarioContext {
  const Scenario* sc = nullptr;
  std::optional<DiffOpInstance> dp;
  std::optional<EnvelopingInstance> ug;
  std::optional<Twist> twist;
  std::optional<StarAlgebra> star;
  std::optional<DeformedInstance> deformed;
  std::optional<Multivector<Poly>> declared_lambda;  // moyal and commuting-frame
};

namespace detail {

inline std::vector<PolyDiffOp> frame_operators(const Scenario& sc) {
  std::vector<PolyDiffOp> out;
  for (const auto& row : sc.frame) {
    PolyDiffOp X(sc.coordinates, 1);
    for (std::size_t k = 0; k < row.size(); ++k)
      if (!row[k].is_zero()) X += row[k] * PolyDiffOp::partial(sc.coordinates, k);
    out.push_back(X);
  }
  return out;
}

inline Multivector<Poly> declared_lambda(const Scenario& sc) {
  using MV = Multivector<Poly>;
  const Vars& v = sc.coordinates;
  MV out(v, 2);
  if (sc.kind == "moyal") {
    for (std::size_t i = 0; i < sc.pi.size(); ++i)
      for (std::size_t j = i + 1; j < sc.pi.size(); ++j)
        if (!is_zero(sc.pi[i][j])) out += MV::term(Poly::constant(v, sc.pi[i][j]), {i, j});
    return out;
  }
  std::vector<MV> X;
  for (const auto& row : sc.frame) {
    MV f(v, 1);
    for (std::size_t k = 0; k < row.size(); ++k)
      if (!row[k].is_zero()) f += row[k] * MV::frame(v, k);
    X.push_back(f);
  }
  for (std::size_t i = 0; i < X.size(); ++i)
    for (std::size_t j = i + 1; j < X.size(); ++j)
      if (!is_zero(sc.c[i][j])) out += sc.c[i][j] * wedge(X[i], X[j]);
  return out;
}

inline Twist build_twist(const Scenario& sc) {
  const Vars& v = sc.coordinates;
  const std::size_t n = var_count(v);
  if (sc.kind == "moyal") return moyal_twist(v, sc.pi, sc.order);
  if (sc.kind == "commuting-frame") return commuting_frame_twist(v, frame_operators(sc), sc.c, sc.order);
  std::vector<TwistTerm> terms{{0, Poly::one(v), Exponents(n, 0), Exponents(n, 0)}};
  terms.insert(terms.end(), sc.terms.begin(), sc.terms.end());
  return explicit_twist(v, sc.order, terms);
}

inline bool needs_deformed(const Scenario& sc) {
  for (const auto& c : sc.checks)
    if (c.rfind("deformed_", 0) == 0 || c == "eq11") return true;
  return false;
}

inline Multivector<Poly> as_multivector(const PoissonBivector& pi) {
  Multivector<Poly> out(pi.vars, 2);
  for (std::size_t i = 0; i < pi.dim(); ++i)
    for (std::size_t j = i + 1; j < pi.dim(); ++j) out.add_term({i, j}, pi.pi[i][j]);
  return out;
}

template <class Inst>
CheckReport classical_check(const std::string& name, const Inst& I) {
  if (name == "source_target") return check_source_target(I);
  if (name == "coassociativity") return check_coassociativity(I);
  if (name == "compatibility") return check_compatibility(I);
  if (name == "counit") return check_counit(I);
  return check_cocommutativity(I);
}

inline CheckReport round_trip(const ScenarioContext& cx) {
  using MV = Multivector<Poly>;
  const Scenario& sc = *cx.sc;
  const StarAlgebra& S = *cx.star;
  CheckReport rep{"triangular_round_trip"};
  auto A = tangent_algebroid<Poly>(S.vars());
  auto mstr = [&A](const MV& m) { return m.to_string(A.frame_names); };
  MV bracket = as_multivector(hbar1_bracket(S));
  MV lambda = cx.declared_lambda ? *cx.declared_lambda : bracket;
  rep.record("hbar^1 bracket - Lambda", bracket - lambda, mstr);
  auto limit = limit_bialgebroid(S);
  auto tri = triangular_differential(A, lambda);
  for (const auto& f : monomials_up_to(S.vars(), sc.max_degree))
    rep.record("delta(" + f.to_string() + ")", limit.delta(f) - tri.delta(f), mstr);
  for (std::size_t a = 0; a < A.rank(); ++a)
    rep.record("delta(" + A.frame_names[a] + ")", limit.on_frame(a) - tri.on_frame(a), mstr);
  return rep;
}

inline CheckReport regularity(const ScenarioContext& cx) {
  CheckReport rep{"regularity"};
  auto A = tangent_algebroid<Poly>(cx.sc->coordinates);
  Multivector<Poly> lambda = cx.declared_lambda ? *cx.declared_lambda : as_multivector(hbar1_bracket(*cx.star));
  RankReport r = regularity_rank(A, lambda);
  std::string detail = "rank " + std::to_string(r.rank) + ", " + r.verdict;
  if (!r.drop_point.empty()) {
    detail += ", rank drops at (";
    for (std::size_t i = 0; i < r.drop_point.size(); ++i) detail += (i ? ", " : "") + to_string(r.drop_point[i]);
    detail += ")";
  }
  rep.record_flag(detail, r.verdict == "regular", detail);
  return rep;
}

inline CheckReport dynamical_check(const std::string& name, const Scenario& sc) {
  const LieAlgebraData& g = *sc.g;
  const DynamicalR& r = *sc.r;
  auto gstr = [](const GTensor& t) { return t.to_string(); };
  if (name == "cdybe") {
    CheckReport rep{name};
    rep.record("CDYBE (" + frozen_alt_convention().to_string() + ")", cdybe_residual(g, r), gstr);
    return rep;
  }
  if (name == "equivariance") {
    CheckReport rep{name};
    auto res = equivariance_residual(g, r);
    for (std::size_t i = 0; i < res.size(); ++i) {
      const std::string& h = g.basis()[g.cartan()[i]];
      rep.record("[" + h + " (x) 1 + 1 (x) " + h + ", r]", res[i], gstr);
    }
    return rep;
  }
  if (name == "symmetric_part") return symmetric_part_check(g, r);
  if (name == "calibration") {
    CheckReport rep{name};
    const AltConvention frozen = frozen_alt_convention();
    for (const auto& [conv, ok] : calibrate_alt_convention(g, r)) {
      bool want = conv == frozen;
      rep.record_flag(conv.to_string(), ok == want,
                      ok ? "solves, but is not the frozen convention" : "the frozen convention does not solve");
    }
    return rep;
  }
  Example41 E = example41_lambda(g, r);
  if (name == "example41_lambda") {
    CheckReport rep{name};
    rep.record("[Lambda, Lambda]", E.square, [&E](const Multivector<RatFun>& m) { return m.to_string(E.algebroid.frame_names); });
    return rep;
  }
  CheckReport rep{name};
  auto d = triangular_differential(E.algebroid, E.lambda);
  for (const auto& part : bialgebroid_compat_check(d, 1)) rep.merge(part);
  return rep;
}

inline CheckReport run_check(const std::string& name, const ScenarioContext& cx) {
  const Scenario& sc = *cx.sc;
  if (sc.family() == CheckFamily::classical)
    return cx.dp ? classical_check(name, *cx.dp) : classical_check(name, *cx.ug);
  if (sc.family() == CheckFamily::dynamical) return dynamical_check(name, sc);
  if (name == "twistor") return check_twistor(*cx.twist);
  if (name == "star_associativity") return check_star_associativity(*cx.star, sc.max_degree);
  if (name == "classical_limit") {
    CheckReport rep{name};
    for (const auto& c : assemble_bialgebroid(*cx.star, sc.max_degree).checks) rep.merge(c);
    return rep;
  }
  if (name == "triangular_round_trip") return round_trip(cx);
  if (name == "regularity") return regularity(cx);
  const DeformedInstance& D = *cx.deformed;
  if (name == "deformed_coassociativity") return check_deformed_coassociativity(D);
  if (name == "deformed_compatibility_eq2") return check_deformed_eq2(D);
  if (name == "deformed_compatibility_eq3") return check_deformed_eq3(D);
  if (name == "deformed_counit") return check_deformed_counit(D);
  if (name == "deformed_mod_hbar") return check_deformed_mod_hbar(D);
  if (name == "deformed_source_target") return check_deformed_source_target(D);
  if (name == "eq11") return check_eq11_suite(D);
  throw structural_error("run_check: no checker for '" + name + "'");
}

}  // namespace detail

/// Builds the instance the scenario describes. Throws on structural problems
/// (e.g. frame fields that do not commute).
inline ScenarioContext build_context(const Scenario& sc) {
  ScenarioContext cx;
  cx.sc = &sc;
  if (sc.kind == "classical-dp") {
    std::function<PolyDiffOp(const PolyDiffOp&)> delta = [](const PolyDiffOp& D) { return leibniz_coproduct(D); };
    if (sc.corrupt) delta = corrupted_coproduct;
    cx.dp = dp_instance_with(sc.coordinates, delta, sc.max_degree, sc.max_order);
    return cx;
  }
  if (sc.kind == "classical-ug") {
    cx.ug = ug_instance(*sc.g, sc.pbw_degree);
    return cx;
  }
  if (sc.family() == CheckFamily::dynamical) {
    sc.r->validate(*sc.g);
    return cx;
  }
  cx.twist = detail::build_twist(sc);
  if (sc.kind != "explicit") cx.declared_lambda = detail::declared_lambda(sc);
  if (detail::needs_deformed(sc)) {
    cx.deformed = make_deformed_instance(*cx.twist, sc.max_degree, sc.max_order);
    cx.star = cx.deformed->star;
  } else {
    cx.star = StarAlgebra(*cx.twist);
  }
  return cx;
}

/// Worker cap: QG_MAX_WORKERS if set to a positive integer, else the hardware count.
inline std::size_t max_workers() {
  if (const char* s = std::getenv("QG_MAX_WORKERS")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end != s && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs the scenario's checks (concurrently, up to max_workers()); results
/// keep the scenario's order. Checker exceptions become "error" results.
inline RunReport run_scenario(const Scenario& sc, std::size_t workers = max_workers()) {
  using clock = std::chrono::steady_clock;
  auto t0 = clock::now();
  RunReport out{sc.name, sc.kind, sc.order, sc.expect_pass, {}, 0};
  out.checks.resize(sc.checks.size());
  for (std::size_t i = 0; i < sc.checks.size(); ++i) out.checks[i].report.name = sc.checks[i];

  std::optional<ScenarioContext> cx;
  try {
    cx = build_context(sc);
  } catch (const std::exception& e) {
    for (auto& c : out.checks) c.report.error = std::string("building the instance: ") + e.what();
  }
  if (cx) {
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t i = next++; i < sc.checks.size(); i = next++) {
        auto s = clock::now();
        CheckResult& res = out.checks[i];
        try {
          res.report = detail::run_check(sc.checks[i], *cx);
        } catch (const std::exception& e) {
          res.report = CheckReport{};
          res.report.error = e.what();
        }
        res.report.name = sc.checks[i];
        res.millis = std::chrono::duration<double, std::milli>(clock::now() - s).count();
      }
    };
    std::size_t n = std::min(std::max<std::size_t>(workers, 1), sc.checks.size());
    std::vector<std::thread> pool;
    for (std::size_t i = 1; i < n; ++i) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
  }
  out.total_millis = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
  return out;
}

/// Canonical machine report; timings only appear in a separate "timing"
/// section when asked for.
inline nlohmann::ordered_json machine_report(const RunReport& r, bool timing = false) {
  nlohmann::ordered_json j;
  j["scenario"] = r.scenario;
  j["kind"] = r.kind;
  j["order"] = r.order;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json e;
    e["name"] = c.report.name;
    e["status"] = c.status();
    e["probes"] = c.report.probes;
    e["failures"] = c.report.failures.size();
    e["max_residual"] = c.report.max_residual();
    if (const ProbeResidual* f = c.report.max_failure()) e["at"] = f->probe;
    j["checks"].push_back(e);
  }
  j["verdict"] = r.passed() ? "pass" : "fail";
  j["expected"] = r.expect_pass ? "pass" : "fail";
  j["expectation_met"] = r.expectation_met();
  if (timing) {
    nlohmann::ordered_json t;
    t["total_millis"] = static_cast<long long>(r.total_millis);
    for (const auto& c : r.checks) t["checks"][c.report.name] = static_cast<long long>(c.millis);
    j["timing"] = t;
  }
  return j;
}

inline std::string text_report(const RunReport& r, bool timing = false) {
  std::ostringstream o;
  o << "scenario " << r.scenario << " (" << r.kind << ", order " << r.order << ")\n";
  std::size_t w = 0;
  for (const auto& c : r.checks) w = std::max(w, c.report.name.size());
  for (const auto& c : r.checks) {
    std::string st = c.status();
    for (auto& ch : st) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    o << "  " << st << std::string(7 - st.size(), ' ') << c.report.name << std::string(w + 2 - c.report.name.size(), ' ')
      << c.report.probes << " probes";
    if (timing) o << ", " << static_cast<long long>(c.millis) << " ms";
    o << "\n";
    if (!c.report.error.empty()) {
      o << "         " << c.report.error << "\n";
    } else if (const ProbeResidual* f = c.report.max_failure()) {
      o << "         " << c.report.failures.size() << " nonzero; largest at " << f->probe << ":\n";
      o << "         " << f->residual << "\n";
    }
  }
  o << "verdict: " << (r.passed() ? "pass" : "fail") << ", expected " << (r.expect_pass ? "pass" : "fail")
    << (r.expectation_met() ? " (met)" : " (VIOLATED)");
  if (timing) o << ", " << static_cast<long long>(r.total_millis) << " ms";
  o << "\n";
  return o.str();
}

}  // namespace qgroupoid
