#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qgroupoid/errors.hpp"
#include "qgroupoid/rational.hpp"

namespace qgroupoid {

/// Finite-dimensional Lie algebra over Q given by structure constants
/// [x_i, x_j] = sum_k c[i][j][k] x_k, plus a chosen abelian (Cartan) subset.
class LieAlgebraData {
 public:
  using Vec = std::vector<Rational>;

  LieAlgebraData() = default;

  /// brackets lists [x_i, x_j] for some i < j or i > j; the rest follows by
  /// antisymmetry. Throws invalid_structure_error on inconsistent input or
  /// a Jacobi failure.
  LieAlgebraData(std::vector<std::string> basis, const std::map<std::pair<std::size_t, std::size_t>, Vec>& brackets,
                 std::vector<std::size_t> cartan = {})
      : basis_(std::move(basis)), cartan_(std::move(cartan)) {
    const std::size_t n = basis_.size();
    if (n == 0) throw invalid_structure_error("LieAlgebraData: empty basis");
    c_.assign(n, std::vector<Vec>(n, Vec(n, Rational(0))));
    std::vector<std::vector<bool>> given(n, std::vector<bool>(n, false));
    for (const auto& [ij, v] : brackets) {
      auto [i, j] = ij;
      if (i >= n || j >= n || v.size() != n) throw invalid_structure_error("LieAlgebraData: bracket index or length");
      if (i == j) {
        for (const auto& q : v)
          if (!is_zero(q)) throw invalid_structure_error("LieAlgebraData: [x,x] must vanish");
        continue;
      }
      Vec neg(n);
      for (std::size_t k = 0; k < n; ++k) neg[k] = -v[k];
      if (given[j][i] && c_[j][i] != neg)
        throw invalid_structure_error("LieAlgebraData: bracket is not antisymmetric for " + basis_[i] + ", " + basis_[j]);
      c_[i][j] = v;
      c_[j][i] = neg;
      given[i][j] = given[j][i] = true;
    }
    for (auto h : cartan_)
      if (h >= n) throw invalid_structure_error("LieAlgebraData: cartan index out of range");
    validate();
  }

  std::size_t dim() const { return basis_.size(); }
  const std::vector<std::string>& basis() const { return basis_; }
  const std::vector<std::size_t>& cartan() const { return cartan_; }
  const Vec& structure(std::size_t i, std::size_t j) const { return c_.at(i).at(j); }

  std::size_t index(const std::string& name) const {
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i] == name) return i;
    throw structural_error("LieAlgebraData: unknown basis element " + name);
  }

  Vec basis_vector(std::size_t i) const {
    Vec v(dim(), Rational(0));
    v.at(i) = 1;
    return v;
  }

  Vec bracket(const Vec& u, const Vec& v) const {
    Vec out(dim(), Rational(0));
    for (std::size_t i = 0; i < dim(); ++i) {
      if (is_zero(u[i])) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (is_zero(v[j])) continue;
        Rational s = u[i] * v[j];
        for (std::size_t k = 0; k < dim(); ++k) out[k] += s * c_[i][j][k];
      }
    }
    return out;
  }

  /// Antisymmetry, Jacobi on basis triples, and commutativity of the Cartan set.
  void validate() const {
    const std::size_t n = dim();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (c_[i][j][k] != -c_[j][i][k]) throw invalid_structure_error("LieAlgebraData: bracket not antisymmetric");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
          Vec xi = basis_vector(i), xj = basis_vector(j), xk = basis_vector(k);
          Vec a = bracket(xi, bracket(xj, xk));
          Vec b = bracket(xj, bracket(xk, xi));
          Vec c = bracket(xk, bracket(xi, xj));
          for (std::size_t m = 0; m < n; ++m)
            if (!is_zero(a[m] + b[m] + c[m]))
              throw invalid_structure_error("LieAlgebraData: Jacobi identity fails on (" + basis_[i] + ", " +
                                            basis_[j] + ", " + basis_[k] + ")");
        }
    for (auto a : cartan_)
      for (auto b : cartan_)
        for (const auto& q : c_[a][b])
          if (!is_zero(q)) throw invalid_structure_error("LieAlgebraData: cartan elements do not commute");
  }

 private:
  std::vector<std::string> basis_;
  std::vector<std::vector<Vec>> c_;
  std::vector<std::size_t> cartan_;
};

/// sl_2 with basis (e, f, h): [e,f] = h, [h,e] = 2e, [h,f] = -2f; Cartan {h}.
inline LieAlgebraData sl2() {
  using V = LieAlgebraData::Vec;
  std::map<std::pair<std::size_t, std::size_t>, V> br;
  br[{0, 1}] = V{0, 0, 1};
  br[{2, 0}] = V{2, 0, 0};
  br[{2, 1}] = V{0, -2, 0};
  return LieAlgebraData({"e", "f", "h"}, br, {2});
}

}  // namespace qgroupoid
