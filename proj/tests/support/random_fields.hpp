#pragma once

// Seeded generators for property-style tests.

#include <random>

#include "poincare/polynomial.hpp"
#include "poincare/vector_field.hpp"

namespace testgen {

inline poincare::Polynomial3 random_polynomial(std::mt19937& rng, int max_degree, int terms) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<int> coeff(-9, 9);
  std::uniform_int_distribution<int> denom(1, 7);
  poincare::Polynomial3 f;
  for (int t = 0; t < terms; ++t) {
    const int d = deg(rng);
    std::uniform_int_distribution<int> part(0, d);
    const int p = part(rng);
    std::uniform_int_distribution<int> part2(0, d - p);
    const int q = part2(rng);
    const int c = coeff(rng);
    if (c == 0) continue;
    f += poincare::Polynomial3::monomial(
        poincare::MultiIndex{std::uint16_t(p), std::uint16_t(q), std::uint16_t(d - p - q)},
        poincare::Rational(c, denom(rng)));
  }
  return f;
}

inline poincare::VectorField random_field(std::mt19937& rng, int max_degree, int terms) {
  return poincare::VectorField(random_polynomial(rng, max_degree, terms),
                               random_polynomial(rng, max_degree, terms),
                               random_polynomial(rng, max_degree, terms));
}

} // namespace testgen
