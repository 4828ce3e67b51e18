#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "metriplex/core.hpp"

namespace metriplex {

/// How the tensors and Hamiltonians of a VectorFieldSpec are contracted.
///
///   static_leibniz  Xⁱ = (Pⁱʲ + gⁱʲ) ∂h/∂xʲ            (h1 == h2 == h)
///   static_almost   Xⁱ = Pⁱʲ ∂h1/∂xʲ + gⁱʲ ∂h2/∂xʲ
///   delay_almost    Xⁱ = Pⁱʲ ∂h2/∂xʲ + gⁱʲ ∂h1/∂x̃ʲ
///
/// In the delay wiring P pairs with h2 and g pairs with the delayed-slot
/// gradient of h1. The field never has a ∂/∂x̃ component: x̃ is read-only.
enum class Wiring { static_leibniz, static_almost, delay_almost };

std::string to_string(Wiring w);

struct VectorFieldSpec {
  int dimension;
  TensorField P;
  TensorField g;
  ScalarField h1;
  ScalarField h2;
  Wiring wiring;

  static VectorFieldSpec leibniz(TensorField P, TensorField g, const ScalarField& h);
  static VectorFieldSpec almost(TensorField P, TensorField g, ScalarField h1, ScalarField h2);
  static VectorFieldSpec delay(TensorField P, TensorField g, ScalarField h1, ScalarField h2);

  /// Throws DimensionError on dimension or slot-signature mismatch.
  void validate() const;

  Vector operator()(const DelayPair& p) const;
};

using FieldFn = std::function<Vector(const DelayPair&)>;

/// Σᵢⱼ (∂f/∂xⁱ) gⁱʲ (∂h/∂xʲ) with current-slot gradients.
double pseudometric_bracket(const TensorField& g, const ScalarField& f, const ScalarField& h,
                            const DelayPair& p);

Vector leibniz_vector_field(const VectorFieldSpec& spec, const DelayPair& p);
Vector almost_leibniz_vector_field(const VectorFieldSpec& spec, const DelayPair& p);
Vector delay_vector_field(const VectorFieldSpec& spec, const DelayPair& p);

/// Dispatches on spec.wiring.
Vector evaluate_field(const VectorFieldSpec& spec, const DelayPair& p);

/// A spec as a plain callable; the spec is copied into the closure.
FieldFn as_field_fn(const VectorFieldSpec& spec);

// ---------------------------------------------------------------------------
// Numerical verification of the bracket identities.

/// Planted violations used to confirm the checks can fail.
enum class LawFault { none, drop_metric_term };

struct LawCheckOptions {
  int trials = 200;
  double tol = 1e-8;
  std::uint64_t seed = kDefaultSeed;
  LawFault fault = LawFault::none;
};

struct LawReport {
  double residual_product_rule = 0.0;    // (a)
  double residual_scaled_pair = 0.0;     // (b)
  double residual_diagonal_pair = 0.0;   // (c)
  double max_residual = 0.0;
  bool pass = true;
};

/// Checks, with random polynomial test functions of degree <= 3 at random
/// points, the three derivation identities of the two-Hamiltonian bracket
///
///   (a) [f k, (h1,h2)] = [f,(h1,h2)] k + f [k,(h1,h2)]
///   (b) [f, h (h1,h2)] = h [f,(h1,h2)] + h1 P(f,h) + h2 g(f,h)     (static)
///       [f, h (h1,h2)] = h [f,(h1,h2)] + h2 P(f,h) + h1 g(f,h)     (delay)
///   (c) [f, l (h,h)]   = l [f,(h,h)] + h [f,(l,l)]
///
/// where h (h1,h2) means the pair (h h1, h h2). The setting is taken from
/// g's slot signature. Residuals are relative to max(1, sum of |terms|).
LawReport verify_bracket_laws(const TensorField& P, const TensorField& g,
                              const LawCheckOptions& options = {});

struct EquivalenceReport {
  double hypothesis_residual = 0.0;
  double equivalence_residual = 0.0;
  bool hypothesis_ok = true;
  bool equivalence_ok = true;
  bool pass = true;
};

/// Checks that the pair (h1, h2) and the single Hamiltonian h = h1 + h2
/// generate the same field, together with the hypotheses that make this
/// true: P·∇h2 = 0 and g·∇h1 = 0 statically, or P·∇ₓh1 = 0 and g·∇ₓ̃h2 = 0
/// in the delay setting.
EquivalenceReport verify_equivalence(const TensorField& P, const TensorField& g,
                                     const ScalarField& h1, const ScalarField& h2, int trials,
                                     double tol, std::uint64_t seed = kDefaultSeed);

}  // namespace metriplex
