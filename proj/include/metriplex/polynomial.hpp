#pragma once

#include <map>
#include <random>
#include <vector>

#include "metriplex/core.hpp"

namespace metriplex {

/// Sparse multivariate polynomial with real coefficients. Used as the source
/// of random test functions for bracket-law verification: products are formed
/// by expanding monomials, so the gradient of a product is computed from the
/// product itself rather than by the product rule.
class Polynomial {
 public:
  using Exponents = std::vector<int>;

  explicit Polynomial(int variables) : variables_(variables) {}

  static Polynomial constant(int variables, double c);
  /// Sum of `terms` random monomials of total degree <= max_degree with
  /// coefficients uniform in [-1, 1].
  static Polynomial random(int variables, int max_degree, int terms, std::mt19937_64& rng);

  int variables() const { return variables_; }
  std::size_t term_count() const { return terms_.size(); }

  void add_term(const Exponents& exps, double coeff);

  double eval(const Vector& z) const;
  Vector gradient(const Vector& z) const;

  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator+(const Polynomial& other) const;

  /// The same polynomial as a function of `total` variables, with variable
  /// v renamed to v + offset.
  Polynomial embed(int total, int offset) const;

 private:
  int variables_;
  std::map<Exponents, double> terms_;
};

/// Wraps a polynomial in 2n variables, laid out as (x̃¹..x̃ⁿ, x¹..xⁿ), as a
/// ScalarField on R^n x R^n.
ScalarField as_product_field(const Polynomial& poly, int dimension);

/// Wraps a polynomial in n variables as a function of the current state.
ScalarField as_current_field(const Polynomial& poly, int dimension);

}  // namespace metriplex
