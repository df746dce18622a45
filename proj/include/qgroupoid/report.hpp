#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace qgroupoid {

/// One nonzero residual, tagged with the probe that produced it.
struct ProbeResidual {
  std::string probe;
  std::string residual;
  std::size_t terms = 0;
};

/// Outcome of one checker over its probe set. Residuals are exact printed
/// values, kept in probe order.
struct CheckReport {
  std::string name;
  std::size_t probes = 0;
  std::vector<ProbeResidual> failures;
  std::string error;  // set when the checker threw

  bool passed() const { return failures.empty() && error.empty(); }

  /// Nonzero residual with the most terms (first in probe order on ties), or "0".
  std::string max_residual() const {
    if (!error.empty()) return "error: " + error;
    const ProbeResidual* best = nullptr;
    for (const auto& f : failures)
      if (!best || f.terms > best->terms) best = &f;
    return best ? best->residual : "0";
  }
  const ProbeResidual* max_failure() const {
    const ProbeResidual* best = nullptr;
    for (const auto& f : failures)
      if (!best || f.terms > best->terms) best = &f;
    return best;
  }

  /// Records a residual; zero residuals only bump the probe count.
  template <class T, class Str>
  void record(const std::string& probe, const T& residual, Str&& to_str) {
    ++probes;
    if (residual.is_zero()) return;
    failures.push_back({probe, to_str(residual), residual.size()});
  }
  void record_flag(const std::string& probe, bool ok, const std::string& detail) {
    ++probes;
    if (!ok) failures.push_back({probe, detail, 1});
  }

  void merge(const CheckReport& o) {
    probes += o.probes;
    failures.insert(failures.end(), o.failures.begin(), o.failures.end());
    if (error.empty()) error = o.error;
  }
};

}  // namespace qgroupoid
