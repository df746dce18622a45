#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qgroupoid/errors.hpp"
#include "qgroupoid/poly.hpp"

namespace qgroupoid {

using RatMatrix = std::vector<std::vector<Rational>>;

inline void require_antisymmetric(const RatMatrix& m, std::size_t n, const char* where) {
  if (m.size() != n) throw invalid_structure_error(std::string(where) + ": matrix must be " + std::to_string(n) + "x" + std::to_string(n));
  for (const auto& row : m)
    if (row.size() != n) throw invalid_structure_error(std::string(where) + ": matrix rows must have length " + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m[i][j] != -m[j][i]) throw invalid_structure_error(std::string(where) + ": matrix is not antisymmetric");
}

/// Bivector field pi^{ij}(x) d_i ^ d_j on R^n, stored as the full
/// antisymmetric matrix of brackets {x_i, x_j}.
struct PoissonBivector {
  Vars vars;
  std::vector<std::vector<Poly>> pi;

  static PoissonBivector zero(const Vars& vars) {
    const std::size_t n = var_count(vars);
    return {vars, std::vector<std::vector<Poly>>(n, std::vector<Poly>(n, Poly(vars)))};
  }
  static PoissonBivector constant(const Vars& vars, const RatMatrix& m) {
    require_antisymmetric(m, var_count(vars), "PoissonBivector");
    PoissonBivector b = zero(vars);
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j) b.pi[i][j] = Poly::constant(vars, m[i][j]);
    return b;
  }

  std::size_t dim() const { return pi.size(); }

  /// {f, g} = pi^{ij} d_i f d_j g.
  Poly bracket(const Poly& f, const Poly& g) const {
    Poly out(vars);
    for (std::size_t i = 0; i < dim(); ++i) {
      Poly fi = f.partial(i);
      if (fi.is_zero()) continue;
      for (std::size_t j = 0; j < dim(); ++j)
        if (!pi[i][j].is_zero()) out += pi[i][j] * fi * g.partial(j);
    }
    return out;
  }

  /// Jacobiator on coordinate triples i < j < k:
  /// pi^{il} d_l pi^{jk} + pi^{jl} d_l pi^{ki} + pi^{kl} d_l pi^{ij}.
  std::vector<Poly> jacobi_residuals() const {
    std::vector<Poly> out;
    const std::size_t n = dim();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
          Poly r(vars);
          for (std::size_t l = 0; l < n; ++l)
            r += pi[i][l] * pi[j][k].partial(l) + pi[j][l] * pi[k][i].partial(l) + pi[k][l] * pi[i][j].partial(l);
          out.push_back(r);
        }
    return out;
  }
  bool is_poisson() const {
    for (const auto& r : jacobi_residuals())
      if (!r.is_zero()) return false;
    return true;
  }
  bool is_antisymmetric() const {
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j)
        if (!(pi[i][j] == -pi[j][i])) return false;
    return true;
  }

  friend bool operator==(const PoissonBivector& a, const PoissonBivector& b) { return a.pi == b.pi; }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = i + 1; j < dim(); ++j) {
        if (pi[i][j].is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += "(" + pi[i][j].to_string() + ")*d" + (*vars)[i] + "^d" + (*vars)[j];
      }
    return out.empty() ? "0" : out;
  }
};

}  // namespace qgroupoid
