#include "metriplex/polynomial.hpp"

#include <cmath>

namespace metriplex {

Polynomial Polynomial::constant(int variables, double c) {
  Polynomial p(variables);
  p.add_term(Exponents(variables, 0), c);
  return p;
}

Polynomial Polynomial::random(int variables, int max_degree, int terms, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::uniform_int_distribution<int> degree(0, max_degree);
  std::uniform_int_distribution<int> var(0, variables - 1);
  Polynomial p(variables);
  for (int t = 0; t < terms; ++t) {
    Exponents e(variables, 0);
    const int d = degree(rng);
    for (int k = 0; k < d; ++k) ++e[var(rng)];
    p.add_term(e, coeff(rng));
  }
  return p;
}

void Polynomial::add_term(const Exponents& exps, double coeff) {
  if (static_cast<int>(exps.size()) != variables_) throw DimensionError("monomial arity mismatch");
  terms_[exps] += coeff;
}

double Polynomial::eval(const Vector& z) const {
  if (z.size() != variables_) throw DimensionError("polynomial evaluated at wrong arity");
  double sum = 0.0;
  for (const auto& [exps, c] : terms_) {
    double m = c;
    for (int v = 0; v < variables_; ++v) {
      if (exps[v] > 0) m *= std::pow(z[v], exps[v]);
    }
    sum += m;
  }
  return sum;
}

Vector Polynomial::gradient(const Vector& z) const {
  if (z.size() != variables_) throw DimensionError("polynomial evaluated at wrong arity");
  Vector g = Vector::Zero(variables_);
  for (const auto& [exps, c] : terms_) {
    for (int d = 0; d < variables_; ++d) {
      if (exps[d] == 0) continue;
      double m = c * exps[d];
      for (int v = 0; v < variables_; ++v) {
        const int e = v == d ? exps[v] - 1 : exps[v];
        if (e > 0) m *= std::pow(z[v], e);
      }
      g[d] += m;
    }
  }
  return g;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (other.variables_ != variables_) throw DimensionError("polynomial arity mismatch");
  Polynomial out(variables_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : other.terms_) {
      Exponents e(variables_);
      for (int v = 0; v < variables_; ++v) e[v] = ea[v] + eb[v];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  if (other.variables_ != variables_) throw DimensionError("polynomial arity mismatch");
  Polynomial out = *this;
  for (const auto& [e, c] : other.terms_) out.add_term(e, c);
  return out;
}

Polynomial Polynomial::embed(int total, int offset) const {
  if (offset < 0 || offset + variables_ > total) throw DimensionError("embedding out of range");
  Polynomial out(total);
  for (const auto& [e, c] : terms_) {
    Exponents wide(total, 0);
    for (int v = 0; v < variables_; ++v) wide[v + offset] = e[v];
    out.add_term(wide, c);
  }
  return out;
}

namespace {

Vector stack(const DelayPair& p) {
  const Eigen::Index n = p.dimension();
  Vector z(2 * n);
  z.head(n) = p.delayed;
  z.tail(n) = p.current;
  return z;
}

}  // namespace

ScalarField as_product_field(const Polynomial& poly, int dimension) {
  if (poly.variables() != 2 * dimension) throw DimensionError("product field needs 2n variables");
  return ScalarField(
      "poly", dimension, FieldKind::full, [poly](const DelayPair& p) { return poly.eval(stack(p)); },
      [poly, dimension](const DelayPair& p) { return poly.gradient(stack(p)).tail(dimension).eval(); },
      [poly, dimension](const DelayPair& p) { return poly.gradient(stack(p)).head(dimension).eval(); });
}

ScalarField as_current_field(const Polynomial& poly, int dimension) {
  if (poly.variables() != dimension) throw DimensionError("current field needs n variables");
  return ScalarField::on_current(
      "poly", dimension, [poly](const Vector& x) { return poly.eval(x); },
      [poly](const Vector& x) { return poly.gradient(x); });
}

}  // namespace metriplex
