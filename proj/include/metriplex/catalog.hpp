#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "metriplex/bracket.hpp"
#include "metriplex/core.hpp"
#include "metriplex/revisited.hpp"

namespace metriplex {

struct Parameter {
  std::string name;
  double value;
};

/// A function expected to be preserved. first_integral = true means constant
/// along solutions; false means only the pointwise identity Σ Xⁱ ∂h/∂xⁱ = 0
/// holds (the delayed argument is frozen), which does not make
/// h(x(t-τ), x(t)) constant along a delay solution.
struct Invariant {
  std::string label;
  ScalarField field;
  bool first_integral;
};

/// A quantity worth monitoring that is not preserved.
struct DiagnosticQuantity {
  std::string label;
  ScalarField field;
};

/// A named pointwise residual. Informational checks compare against closed
/// forms that are known to disagree with the construction; they are
/// reported but never fail a check run.
struct StructuralCheck {
  std::string name;
  std::function<double(const DelayPair&)> residual;
  bool informational = false;
};

/// Data for building a revisited system from an entry: the skew tensor and
/// the (h1, h2) pair in the wiring of `mode`, plus closed forms to diff the
/// construction against.
struct RevisitInputs {
  Mode mode;
  TensorField P;
  ScalarField h1;
  ScalarField h2;
  std::optional<TensorField> reference_g;
  FieldFn reference_field;
};

struct CatalogEntry {
  CatalogEntry(std::string name, std::string description, VectorFieldSpec spec);

  std::string name;
  std::string description;
  int dimension;
  VectorFieldSpec spec;
  std::vector<Parameter> parameters;
  std::vector<Invariant> invariants;
  std::vector<DiagnosticQuantity> diagnostic_quantities;
  std::vector<StructuralCheck> structural_checks;
  std::optional<std::string> static_counterpart;
  /// The closed form as printed, when it differs from the construction.
  FieldFn literal_field;
  std::vector<RevisitInputs> revisit_inputs;
  /// Set for entries produced by the revisited builder.
  std::optional<RevisitedSystem> revisited;
  std::vector<std::string> warnings;

  bool is_delay() const { return spec.wiring == Wiring::delay_almost; }
  Vector field(const DelayPair& p) const { return evaluate_field(spec, p); }
  double parameter(const std::string& name) const;
};

using ParameterMap = std::map<std::string, double>;
using Triple = std::array<double, 3>;

/// Names addressable from the CLI, in listing order.
const std::vector<std::string>& catalog_names();
ParameterMap default_parameters(const std::string& name);

/// Builds a named entry; unknown names throw UnknownNameError, unknown
/// parameter keys and constraint violations throw ConstraintError.
CatalogEntry make_entry(const std::string& name, const ParameterMap& overrides = {});

/// Default rigid-body moments (0.6, 0.4, 0.2).
inline constexpr Triple kDefaultMoments{0.6, 0.4, 0.2};
inline constexpr Triple kDefaultSigns{1.0, 1.0, 1.0};
inline constexpr Triple kDefaultGammas{1.0, 1.0, -2.0};

CatalogEntry three_wave(const Triple& s = kDefaultSigns, const Triple& gamma = kDefaultGammas);
CatalogEntry rigid_body(const Triple& a = kDefaultMoments);
CatalogEntry landau_lifschitz(double gamma = 1.0, double lambda = 0.1,
                              const Triple& B = {0.0, 0.0, 1.0});
CatalogEntry revisited_rigid_body(const Triple& a = kDefaultMoments);
CatalogEntry rigid_body_delay_one_direction(const Triple& a = kDefaultMoments);
CatalogEntry rigid_body_delay_all_directions(const Triple& a = kDefaultMoments);
/// `perturbation` scales the first coefficient of the closed-form
/// comparison by (1 + perturbation); nonzero values are a test fixture.
CatalogEntry three_wave_delay(const Triple& s = kDefaultSigns, const Triple& gamma = kDefaultGammas,
                              double perturbation = 0.0);
CatalogEntry revisited_rigid_body_delay(const Triple& a = kDefaultMoments);
CatalogEntry example_4_5(const Triple& a = kDefaultMoments);
CatalogEntry revisited_example_4_5(const Triple& a = kDefaultMoments);

/// Tensors and closed forms used by the entries and by the reproduction
/// tests.
namespace forms {

/// Rows (0, x³, -x²), (-x³, 0, x¹), (x², -x¹, 0): P v = v × x.
Matrix cross_matrix(const Vector& x);
/// The rigid-body matrix with x² replaced by x̃².
Matrix mixed_cross_matrix(const DelayPair& p);

ScalarField rigid_body_hamiltonian(const Triple& a);
ScalarField rigid_body_casimir();

/// Closed forms for the rigid-body family, as printed.
Vector rigid_body_field(const Triple& a, const Vector& x);
Matrix rigid_body_g_table(const Triple& a, const Vector& x);
Vector revisited_rigid_body_printed(const Triple& a, const Vector& x);
Matrix delay_rigid_body_g_printed(const Triple& a, const DelayPair& p);
Vector revisited_rigid_body_delay_printed(const Triple& a, const DelayPair& p);
Vector example_4_5_field(const Triple& a, const DelayPair& p);
Matrix example_4_5_g_printed(const Triple& a, const DelayPair& p);
Vector revisited_example_4_5_printed(const Triple& a, const DelayPair& p);

TensorField delay_rigid_body_g_printed_tensor(const Triple& a);

}  // namespace forms

}  // namespace metriplex
