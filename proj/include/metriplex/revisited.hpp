#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "metriplex/bracket.hpp"
#include "metriplex/core.hpp"

namespace metriplex {

/// annihilator: the general particular solution g^{ij} = a_i b_j (i != j),
///   g^{ii} = -Σ_{k≠i} a_k b_k built from two gradients; not symmetric in
///   general.
/// outer_product: g = ∇h ∇hᵀ - |∇h|² I built from a single function, the
///   form every worked example uses; symmetric in the static setting.
enum class Variant { annihilator, outer_product };

enum class Mode { static_mode, delay_mode };

std::string to_string(Variant v);
std::string to_string(Mode m);

/// Static mode: g^{ij} = h1_i h2_j (i != j), g^{ii} = -Σ_{k≠i} h1_k h2_k with
/// current-slot gradients, so that Σ_j g^{ij} h1_j = 0.
/// Delay mode: g^{ij} = H_{j1} H_{i2} (i != j), g^{ii} = -Σ_{k≠i} H_{k1} H_{k2}
/// where H_{i1} = ∂h1/∂xⁱ, H_{i2} = ∂h2/∂xⁱ, so that Σ_j g^{ij} H_{j2} = 0.
TensorField build_annihilator_metric(const ScalarField& h1, const ScalarField& h2, Mode mode);

/// Static mode: g^{ij} = h_i h_j - δ^{ij} |∇h|², so g·∇h = 0 and g ⪯ 0.
/// Delay mode: with G = ∂h/∂x at (x̃, x̃) and H = ∂h/∂x at (x, x),
///   g^{ij} = G_i H_j (i != j),  g^{ii} = -Σ_{k≠i} G_k H_k.
/// Then g·G = 0 and Hᵀ·g = 0; on the diagonal x̃ = x it reduces to the
/// static tensor.
TensorField build_outer_product_metric(const ScalarField& h, Mode mode);

struct RevisitOptions {
  bool strict_casimir = false;  // throw ConstraintError instead of warning
  double tol = 1e-10;
  int samples = 100;
  std::uint64_t seed = kDefaultSeed;
};

/// A revisited system together with what its dissipation tensor annihilates.
struct RevisitedSystem {
  VectorFieldSpec spec;
  Variant variant;
  Mode mode;
  /// Covector v(p) with Σ_j g^{ij}(p) v_j(p) = 0.
  GradientFn annihilated;
  /// Covector w(p) with Σ_i w_i(p) g^{ij}(p) = 0, when the construction has
  /// one (symmetric static tensors and the delay outer-product tensor).
  GradientFn left_annihilated;
  /// Max relative residual of the Casimir-type hypothesis on P.
  double casimir_residual = 0.0;
  std::vector<std::string> diagnostics;
};

/// Static mode: X = P·∇h1 + g·∇h2 with g built to annihilate ∇h1; h2 is
/// expected to be a Casimir of P (P·∇h2 = 0).
/// Delay mode: X = P·∇ₓh2 + g·∇ₓ̃h1 with g built to annihilate the current
/// gradient of h2; P·∇ₓh1 = 0 is expected.
/// A failed hypothesis is reported as a diagnostic unless
/// options.strict_casimir is set.
RevisitedSystem build_revisited_system(const TensorField& P, const ScalarField& h1,
                                       const ScalarField& h2, Variant variant, Mode mode,
                                       const RevisitOptions& options = {});

struct AnnihilationReport {
  double max_residual = 0.0;       // relative, right contraction
  double max_left_residual = 0.0;  // relative, left contraction (0 if none)
  bool pass = true;
};

/// Σ_j g^{ij} v_j relative to |g|_inf |v|_inf, maximised over random points.
AnnihilationReport check_annihilation(const RevisitedSystem& system, int samples, double tol,
                                      std::uint64_t seed = kDefaultSeed);

}  // namespace metriplex
