#pragma once

// Seeded generators for property-style tests.

#include <random>
#include <vector>

#include "qgroupoid/diffop.hpp"
#include "qgroupoid/poly.hpp"
#include "qgroupoid/ratfun.hpp"

namespace qgroupoid::probe {

class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Rational rational() {
    int num = integer(-5, 5);
    int den = integer(1, 3);
    return make_rational(num, den);
  }

  Exponents exponents(std::size_t n, std::uint32_t max_total) {
    Exponents e(n, 0);
    std::uint32_t left = static_cast<std::uint32_t>(integer(0, static_cast<int>(max_total)));
    for (std::size_t i = 0; i < n && left > 0; ++i) {
      std::uint32_t take = (i + 1 == n) ? left : static_cast<std::uint32_t>(integer(0, static_cast<int>(left)));
      e[i] = take;
      left -= take;
    }
    return e;
  }

  Poly poly(const Vars& vars, std::uint32_t max_degree, int max_terms = 4) {
    Poly p(vars);
    int terms = integer(0, max_terms);
    for (int t = 0; t < terms; ++t) p.add_term(exponents(var_count(vars), max_degree), rational());
    return p;
  }

  Poly nonzero_poly(const Vars& vars, std::uint32_t max_degree, int max_terms = 4) {
    for (;;) {
      Poly p = poly(vars, max_degree, max_terms);
      if (!p.is_zero()) return p;
    }
  }

  RatFun ratfun(const Vars& vars, std::uint32_t max_degree) {
    return RatFun(poly(vars, max_degree, 3), nonzero_poly(vars, max_degree, 2));
  }

  PolyDiffOp diffop(const Vars& vars, std::size_t arity, std::uint32_t max_coef_degree, std::uint32_t max_order,
                    int max_terms = 3) {
    PolyDiffOp d(vars, arity);
    int terms = integer(1, max_terms);
    for (int t = 0; t < terms; ++t) {
      std::vector<Exponents> slots;
      for (std::size_t s = 0; s < arity; ++s) slots.push_back(exponents(var_count(vars), max_order));
      d += PolyDiffOp::term(nonzero_poly(vars, max_coef_degree, 2), slots);
    }
    return d;
  }

 private:
  std::mt19937 rng_;
};

}  // namespace qgroupoid::probe
