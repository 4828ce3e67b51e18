#include "metriplex/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace metriplex {

CatalogEntry::CatalogEntry(std::string name_, std::string description_, VectorFieldSpec spec_)
    : name(std::move(name_)),
      description(std::move(description_)),
      dimension(spec_.dimension),
      spec(std::move(spec_)) {}

double CatalogEntry::parameter(const std::string& key) const {
  for (const auto& p : parameters) {
    if (p.name == key) return p.value;
  }
  throw UnknownNameError("entry '" + name + "' has no parameter '" + key + "'");
}

namespace forms {

Matrix cross_matrix(const Vector& x) {
  Matrix P(3, 3);
  P << 0.0, x[2], -x[1],
      -x[2], 0.0, x[0],
      x[1], -x[0], 0.0;
  return P;
}

Matrix mixed_cross_matrix(const DelayPair& p) {
  const Vector& x = p.current;
  const double xd2 = p.delayed[1];
  Matrix P(3, 3);
  P << 0.0, x[2], -xd2,
      -x[2], 0.0, x[0],
      xd2, -x[0], 0.0;
  return P;
}

ScalarField rigid_body_hamiltonian(const Triple& a) {
  return ScalarField::on_current(
      "H", 3,
      [a](const Vector& x) {
        return 0.5 * (a[0] * x[0] * x[0] + a[1] * x[1] * x[1] + a[2] * x[2] * x[2]);
      },
      [a](const Vector& x) {
        Vector g(3);
        g << a[0] * x[0], a[1] * x[1], a[2] * x[2];
        return g;
      });
}

ScalarField rigid_body_casimir() {
  return ScalarField::on_current(
      "C", 3, [](const Vector& x) { return 0.5 * x.squaredNorm(); },
      [](const Vector& x) { return x; });
}

Vector rigid_body_field(const Triple& a, const Vector& x) {
  Vector X(3);
  X << (a[1] - a[2]) * x[1] * x[2], (a[2] - a[0]) * x[0] * x[2], (a[0] - a[1]) * x[0] * x[1];
  return X;
}

Matrix rigid_body_g_table(const Triple& a, const Vector& x) {
  const double y1 = a[0] * x[0], y2 = a[1] * x[1], y3 = a[2] * x[2];
  Matrix g(3, 3);
  g << -y2 * y2 - y3 * y3, y1 * y2, y1 * y3,
      y1 * y2, -y1 * y1 - y3 * y3, y2 * y3,
      y1 * y3, y2 * y3, -y1 * y1 - y2 * y2;
  return g;
}

Vector revisited_rigid_body_printed(const Triple& a, const Vector& x) {
  const double a1 = a[0], a2 = a[1], a3 = a[2];
  const double x1 = x[0], x2 = x[1], x3 = x[2];
  Vector X(3);
  X << (a2 - a3) * x2 * x3 + a2 * (a1 - a2) * x1 * x2 * x2 + a3 * (a1 - a3) * x1 * x3 * x3,
      (a3 - a1) * x1 * x3 + a3 * (a2 - a3) * x2 * x3 * x3 + a1 * (a2 - a1) * x2 * x1 * x1,
      // The last coefficient reads a2(a3 - a1) as printed; the construction
      // gives a2(a3 - a2).
      (a1 - a2) * x1 * x2 + a1 * (a3 - a1) * x3 * x1 * x1 + a2 * (a3 - a1) * x3 * x2 * x2;
  return X;
}

Matrix delay_rigid_body_g_printed(const Triple& a, const DelayPair& p) {
  const double a1 = a[0], a2 = a[1], a3 = a[2];
  const Vector& x = p.current;
  const Vector& d = p.delayed;
  Matrix g(3, 3);
  g << -a2 * a2 * x[1] * d[1] - a3 * a3 * x[2] * d[2], a1 * a2 * d[0] * x[1], a1 * a3 * d[0] * x[2],
      a1 * a2 * d[0] * x[1], -a1 * a1 * x[0] * d[0] - a3 * a3 * x[2] * d[2], a2 * a3 * d[1] * x[2],
      a1 * a3 * d[0] * x[2], a2 * a3 * d[1] * x[2], -a1 * a1 * d[0] * x[0] - a2 * a2 * d[1] * x[1];
  return g;
}

TensorField delay_rigid_body_g_printed_tensor(const Triple& a) {
  return TensorField(
      "printed-g", 3, [a](const DelayPair& p) { return delay_rigid_body_g_printed(a, p); },
      Symmetry::symmetric, SlotSignature::delayed_current);
}

Vector revisited_rigid_body_delay_printed(const Triple& a, const DelayPair& p) {
  const double a1 = a[0], a2 = a[1], a3 = a[2];
  const Vector& x = p.current;
  const Vector& d = p.delayed;
  Vector X(3);
  X << (a2 - a3) * x[1] * x[2] + a2 * (a1 - a2) * d[0] * d[1] * x[1] +
           a3 * (a1 - a3) * d[0] * d[2] * x[2],
      (a3 - a1) * x[0] * x[2] + a3 * (a2 - a1) * d[1] * d[2] * x[2] +
          a1 * (a2 - a1) * d[1] * d[0] * x[0],
      (a1 - a2) * x[0] * x[1] + a1 * (a3 - a1) * d[2] * d[0] * x[0] +
          a2 * (a3 - a2) * d[2] * d[1] * x[1];
  return X;
}

Vector example_4_5_field(const Triple& a, const DelayPair& p) {
  const Vector& x = p.current;
  const Vector& d = p.delayed;
  Vector X(3);
  X << a[1] * d[1] * x[2] - a[2] * d[1] * d[2],
      a[2] * x[0] * d[2] - a[0] * d[0] * x[2],
      a[0] * d[0] * d[1] - a[1] * x[0] * d[1];
  return X;
}

Matrix example_4_5_g_printed(const Triple& a, const DelayPair& p) {
  const double a1 = a[0], a2 = a[1], a3 = a[2];
  const Vector& x = p.current;
  const Vector& d = p.delayed;
  Matrix g(3, 3);
  g << -a2 * a2 * x[1] * d[1] - a3 * x[2] * d[2], a1 * a2 * d[0] * x[1], a1 * a3 * d[0] * x[2],
      a1 * a2 * d[0] * x[1], -a1 * a1 * x[0] * d[0] - a3 * x[2] * d[2], a2 * a3 * d[1] * x[2],
      a1 * a3 * d[0] * x[1], a2 * a3 * d[1] * x[2], -a1 * a1 * x[0] * d[0] - a2 * a2 * x[1] * d[1];
  return g;
}

Vector revisited_example_4_5_printed(const Triple& a, const DelayPair& p) {
  const Vector& x = p.current;
  const Vector& d = p.delayed;
  Vector X = example_4_5_field(a, p);
  X[1] += -a[0] * a[0] * x[0] * d[0] * x[1] - a[2] * a[2] * x[1] * x[2] * d[2];
  return X;
}

}  // namespace forms

namespace {

double sup(const Vector& v) { return v.lpNorm<Eigen::Infinity>(); }
double sup(const Matrix& m) { return m.lpNorm<Eigen::Infinity>(); }

std::vector<std::string> require_moments(const Triple& a) {
  for (double v : a) {
    if (!std::isfinite(v)) throw ConstraintError("moments a1, a2, a3 must be finite");
  }
  if (a[0] == a[1] || a[1] == a[2] || a[0] == a[2]) {
    return {"warning: moments are not distinct; the rigid body degenerates"};
  }
  return {};
}

std::vector<Parameter> moment_parameters(const Triple& a) {
  return {{"a1", a[0]}, {"a2", a[1]}, {"a3", a[2]}};
}

void require_wave_data(const Triple& s, const Triple& gamma) {
  for (int i = 0; i < 3; ++i) {
    if (s[i] != 1.0 && s[i] != -1.0) throw ConstraintError("signs s1, s2, s3 must be +1 or -1");
    if (!std::isfinite(gamma[i]) || gamma[i] == 0.0) {
      throw ConstraintError("coupling constants gamma1, gamma2, gamma3 must be finite and nonzero");
    }
  }
  const double sum = gamma[0] + gamma[1] + gamma[2];
  if (std::abs(sum) > 1e-12) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "coupling constants must sum to zero (gamma1 + gamma2 + gamma3 = " << sum << ")";
    throw ConstraintError(msg.str());
  }
}

std::vector<Parameter> wave_parameters(const Triple& s, const Triple& gamma) {
  return {{"s1", s[0]},         {"s2", s[1]},         {"s3", s[2]},
          {"gamma1", gamma[0]}, {"gamma2", gamma[1]}, {"gamma3", gamma[2]}};
}

TensorField wave_metric(const Triple& s, const Triple& gamma, SlotSignature sig) {
  const Vector diag = (Vector(3) << s[0] * gamma[0], s[1] * gamma[1], s[2] * gamma[2]).finished();
  return TensorField(
      "diag(s gamma)", 3, [diag](const DelayPair&) { return Matrix(diag.asDiagonal()); },
      Symmetry::symmetric, sig);
}

Vector wave_field(const Triple& s, const Triple& gamma, const Vector& y) {
  Vector X(3);
  X << s[0] * gamma[0] * y[1] * y[2], s[1] * gamma[1] * y[0] * y[2], s[2] * gamma[2] * y[0] * y[1];
  return X;
}

ScalarField triple_product_current() {
  return ScalarField::on_current(
      "x1 x2 x3", 3, [](const Vector& x) { return x[0] * x[1] * x[2]; },
      [](const Vector& x) {
        Vector g(3);
        g << x[1] * x[2], x[0] * x[2], x[0] * x[1];
        return g;
      });
}

// x_i^2 / (s_i γ_i) - x_j^2 / (s_j γ_j)
ScalarField manley_rowe(const Triple& s, const Triple& gamma, int i, int j) {
  const double ci = 1.0 / (s[i] * gamma[i]);
  const double cj = 1.0 / (s[j] * gamma[j]);
  const std::string label = "I" + std::to_string(i + 1) + std::to_string(j + 1);
  return ScalarField::on_current(
      label, 3, [=](const Vector& x) { return ci * x[i] * x[i] - cj * x[j] * x[j]; },
      [=](const Vector& x) {
        Vector g = Vector::Zero(3);
        g[i] = 2.0 * ci * x[i];
        g[j] = -2.0 * cj * x[j];
        return g;
      });
}

TensorField rigid_body_tensor() {
  return TensorField(
      "P_rb(x)", 3, [](const DelayPair& p) { return forms::cross_matrix(p.current); },
      Symmetry::skew, SlotSignature::current_current);
}

TensorField mixed_rigid_body_tensor() {
  return TensorField(
      "P_rb(x; x~2)", 3, [](const DelayPair& p) { return forms::mixed_cross_matrix(p); },
      Symmetry::skew, SlotSignature::current_current);
}

TensorField delayed_rigid_body_tensor() {
  return TensorField(
      "P_rb(x~)", 3, [](const DelayPair& p) { return forms::cross_matrix(p.delayed); },
      Symmetry::skew, SlotSignature::current_current);
}

// ½ a1 x1² + a2 x2 x̃2 + ½ a3 x3²; with a = (1, 1, 1) the Casimir partner.
ScalarField mixed_quadratic(const std::string& name, const Triple& a) {
  return ScalarField(
      name, 3, FieldKind::full,
      [a](const DelayPair& p) {
        const Vector& x = p.current;
        return 0.5 * a[0] * x[0] * x[0] + a[1] * x[1] * p.delayed[1] + 0.5 * a[2] * x[2] * x[2];
      },
      [a](const DelayPair& p) {
        Vector g(3);
        g << a[0] * p.current[0], a[1] * p.delayed[1], a[2] * p.current[2];
        return g;
      },
      [a](const DelayPair& p) {
        Vector g = Vector::Zero(3);
        g[1] = a[1] * p.current[1];
        return g;
      });
}

// Σ a_i x̃ⁱ xⁱ
ScalarField delayed_pairing(const Triple& a) {
  const Vector av = (Vector(3) << a[0], a[1], a[2]).finished();
  return ScalarField(
      "sum a x~ x", 3, FieldKind::full,
      [av](const DelayPair& p) { return (av.array() * p.delayed.array() * p.current.array()).sum(); },
      [av](const DelayPair& p) { return Vector(av.array() * p.delayed.array()); },
      [av](const DelayPair& p) { return Vector(av.array() * p.current.array()); });
}

// α = Σ xⁱ Xⁱ for the rigid body with delay in every direction.
ScalarField alpha_field(const Triple& a) {
  const double a1 = a[0], a2 = a[1], a3 = a[2];
  return ScalarField(
      "alpha", 3, FieldKind::full,
      [=](const DelayPair& p) {
        const Vector& x = p.current;
        const Vector& d = p.delayed;
        return a1 * x[0] * (d[1] * x[2] - d[2] * x[1]) + a2 * x[1] * (d[2] * x[0] - d[0] * x[2]) +
               a3 * x[2] * (d[0] * x[1] - d[1] * x[0]);
      },
      [=](const DelayPair& p) {
        const Vector& x = p.current;
        const Vector& d = p.delayed;
        Vector g(3);
        g << a1 * (d[1] * x[2] - d[2] * x[1]) + a2 * x[1] * d[2] - a3 * x[2] * d[1],
            -a1 * x[0] * d[2] + a2 * (d[2] * x[0] - d[0] * x[2]) + a3 * x[2] * d[0],
            a1 * x[0] * d[1] - a2 * x[1] * d[0] + a3 * (d[0] * x[1] - d[1] * x[0]);
        return g;
      },
      [=](const DelayPair& p) {
        const Vector& x = p.current;
        Vector g(3);
        g << (a3 - a2) * x[1] * x[2], (a1 - a3) * x[0] * x[2], (a2 - a1) * x[0] * x[1];
        return g;
      });
}

ScalarField half_square_delayed() {
  return ScalarField::on_delayed(
      "C(x~)", 3, [](const Vector& x) { return 0.5 * x.squaredNorm(); },
      [](const Vector& x) { return x; });
}

StructuralCheck field_matches(const std::string& name, const VectorFieldSpec& spec, FieldFn closed,
                              bool informational = false) {
  return {name,
          [spec, closed = std::move(closed)](const DelayPair& p) {
            return sup(Vector(evaluate_field(spec, p) - closed(p)));
          },
          informational};
}

// On x̃ = x a delay entry must reproduce its static counterpart.
StructuralCheck diagonal_reduction(const VectorFieldSpec& spec, const VectorFieldSpec& counterpart) {
  return {"diagonal-reduction", [spec, counterpart](const DelayPair& p) {
            const DelayPair d = DelayPair::diagonal(p.current);
            return sup(Vector(evaluate_field(spec, d) - evaluate_field(counterpart, d)));
          }};
}

StructuralCheck annihilation_check(const RevisitedSystem& rs) {
  return {"g-annihilation", [g = rs.spec.g, v = rs.annihilated, w = rs.left_annihilated](
                                const DelayPair& p) {
            const Matrix gm = g(p);
            double r = sup(Vector(gm * v(p)));
            if (w) r = std::max(r, sup(Vector(gm.transpose() * w(p))));
            return r;
          }};
}

// Pointwise Σ Xⁱ ∂h/∂xⁱ for every listed invariant.
void add_invariant_checks(CatalogEntry& e) {
  for (const auto& inv : e.invariants) {
    e.structural_checks.push_back(
        {"preserves:" + inv.label, [spec = e.spec, f = inv.field](const DelayPair& p) {
           return std::abs(f.grad_current(p).dot(evaluate_field(spec, p)));
         }});
  }
}

}  // namespace

// ---------------------------------------------------------------------------

CatalogEntry three_wave(const Triple& s, const Triple& gamma) {
  require_wave_data(s, gamma);
  CatalogEntry e("three-wave", "three-wave interaction, symmetric Leibniz system X = g grad(x1 x2 x3)",
                 VectorFieldSpec::leibniz(TensorField::zero(3, SlotSignature::current_current),
                                          wave_metric(s, gamma, SlotSignature::current_current),
                                          triple_product_current()));
  e.parameters = wave_parameters(s, gamma);
  e.invariants = {{"I12", manley_rowe(s, gamma, 0, 1), true},
                  {"I23", manley_rowe(s, gamma, 1, 2), true}};
  e.structural_checks.push_back(field_matches(
      "closed-form", e.spec, [s, gamma](const DelayPair& p) { return wave_field(s, gamma, p.current); }));
  add_invariant_checks(e);
  return e;
}

CatalogEntry rigid_body(const Triple& a) {
  auto warnings = require_moments(a);
  const ScalarField H = forms::rigid_body_hamiltonian(a);
  const ScalarField C = forms::rigid_body_casimir();
  CatalogEntry e("rigid-body", "free rigid body, Poisson system X = P_rb grad H",
                 VectorFieldSpec::leibniz(rigid_body_tensor(),
                                          TensorField::zero(3, SlotSignature::current_current), H));
  e.warnings = std::move(warnings);
  e.parameters = moment_parameters(a);
  e.invariants = {{"H", H, true}, {"C", C, true}};
  e.structural_checks.push_back(field_matches(
      "closed-form", e.spec, [a](const DelayPair& p) { return forms::rigid_body_field(a, p.current); }));
  e.structural_checks.push_back({"casimir", [](const DelayPair& p) {
                                   return sup(Vector(forms::cross_matrix(p.current) * p.current));
                                 }});
  add_invariant_checks(e);

  e.revisit_inputs.push_back(
      {Mode::static_mode, rigid_body_tensor(), H, C,
       TensorField("g-table", 3,
                   [a](const DelayPair& p) { return forms::rigid_body_g_table(a, p.current); },
                   Symmetry::symmetric, SlotSignature::current_current),
       [a](const DelayPair& p) { return forms::revisited_rigid_body_printed(a, p.current); }});
  e.revisit_inputs.push_back(
      {Mode::delay_mode, rigid_body_tensor(), half_square_delayed(), H,
       forms::delay_rigid_body_g_printed_tensor(a),
       [a](const DelayPair& p) { return forms::revisited_rigid_body_delay_printed(a, p); }});
  return e;
}

CatalogEntry landau_lifschitz(double gamma, double lambda, const Triple& B) {
  if (!std::isfinite(gamma) || gamma == 0.0) throw ConstraintError("gamma must be finite and nonzero");
  if (!std::isfinite(lambda)) throw ConstraintError("lambda must be finite");
  for (double b : B) {
    if (!std::isfinite(b)) throw ConstraintError("field B must be finite");
  }
  const Vector Bv = (Vector(3) << B[0], B[1], B[2]).finished();
  const ScalarField h = ScalarField::on_current(
      "-gamma B.x", 3, [gamma, Bv](const Vector& x) { return -gamma * Bv.dot(x); },
      [gamma, Bv](const Vector&) { return Vector(-gamma * Bv); });
  const TensorField g(
      "damping", 3,
      [gamma, lambda](const DelayPair& p) {
        const Vector& x = p.current;
        const double r2 = x.squaredNorm();
        if (r2 == 0.0) throw EvaluationError("damping tensor is singular at x = 0");
        Matrix m = r2 * Matrix::Identity(3, 3) - x * x.transpose();
        return Matrix((lambda / (gamma * r2)) * m);
      },
      Symmetry::symmetric, SlotSignature::current_current);
  CatalogEntry e("landau-lifschitz",
                 "Landau-Lifschitz magnetization dynamics, almost-Leibniz with h = -gamma B.x",
                 VectorFieldSpec::almost(rigid_body_tensor(), g, h, h));
  e.parameters = {{"gamma", gamma}, {"lambda", lambda}, {"B1", B[0]}, {"B2", B[1]}, {"B3", B[2]}};
  e.invariants = {{"C", forms::rigid_body_casimir(), true}};
  e.structural_checks.push_back(field_matches(
      "closed-form", e.spec, [gamma, lambda, Bv](const DelayPair& p) {
        const Eigen::Vector3d x = p.current;
        const Eigen::Vector3d b = Bv;
        const Eigen::Vector3d xb = x.cross(b);
        return Vector(gamma * xb + (lambda / x.squaredNorm()) * x.cross(xb));
      }));
  add_invariant_checks(e);
  return e;
}

CatalogEntry revisited_rigid_body(const Triple& a) {
  auto warnings = require_moments(a);
  const ScalarField H = forms::rigid_body_hamiltonian(a);
  const ScalarField C = forms::rigid_body_casimir();
  RevisitedSystem rs =
      build_revisited_system(rigid_body_tensor(), H, C, Variant::outer_product, Mode::static_mode);
  CatalogEntry e("revisited-rigid-body",
                 "rigid body with an outer-product dissipation tensor that preserves H", rs.spec);
  e.warnings = std::move(warnings);
  e.parameters = moment_parameters(a);
  e.invariants = {{"H", H, true}};
  e.diagnostic_quantities = {{"C", C}};
  e.structural_checks.push_back(annihilation_check(rs));
  e.structural_checks.push_back(
      {"g-table", [g = rs.spec.g, a](const DelayPair& p) {
         return sup(Matrix(g(p) - forms::rigid_body_g_table(a, p.current)));
       }});
  e.literal_field = [a](const DelayPair& p) { return forms::revisited_rigid_body_printed(a, p.current); };
  e.structural_checks.push_back(field_matches("printed-form", e.spec, e.literal_field, true));
  add_invariant_checks(e);
  for (const auto& d : rs.diagnostics) e.warnings.push_back(d);
  e.revisited = std::move(rs);
  return e;
}

CatalogEntry rigid_body_delay_one_direction(const Triple& a) {
  auto warnings = require_moments(a);
  const ScalarField h1 = mixed_quadratic("h1", {1.0, 1.0, 1.0});
  const ScalarField h2 = mixed_quadratic("h2", a);
  CatalogEntry e("rigid-body-delay-1d", "rigid body with delay in the second direction only",
                 VectorFieldSpec::delay(mixed_rigid_body_tensor(),
                                        TensorField::zero(3, SlotSignature::delayed_current), h1, h2));
  e.warnings = std::move(warnings);
  e.parameters = moment_parameters(a);
  // Pointwise only: the delayed argument moves along solutions.
  e.invariants = {{"h1", h1, false}, {"h2", h2, false}};
  e.static_counterpart = "rigid-body";
  e.structural_checks.push_back(field_matches("closed-form", e.spec, [a](const DelayPair& p) {
    const Vector& x = p.current;
    const double d2 = p.delayed[1];
    Vector X(3);
    X << (a[1] - a[2]) * d2 * x[2], (a[2] - a[0]) * x[0] * x[2], (a[0] - a[1]) * x[0] * d2;
    return X;
  }));
  e.structural_checks.push_back(diagonal_reduction(e.spec, rigid_body(a).spec));
  add_invariant_checks(e);
  return e;
}

CatalogEntry rigid_body_delay_all_directions(const Triple& a) {
  auto warnings = require_moments(a);
  const ScalarField H = forms::rigid_body_hamiltonian(a);
  CatalogEntry e("rigid-body-delay-3d", "rigid body with P_rb evaluated at the delayed state",
                 VectorFieldSpec::delay(delayed_rigid_body_tensor(),
                                        TensorField::zero(3, SlotSignature::delayed_current),
                                        ScalarField::constant(3, 0.0), H));
  e.warnings = std::move(warnings);
  e.parameters = moment_parameters(a);
  e.invariants = {{"H", H, true}};
  const ScalarField alpha = alpha_field(a);
  e.diagnostic_quantities = {{"alpha", alpha}, {"C", forms::rigid_body_casimir()}};
  e.static_counterpart = "rigid-body";
  e.structural_checks.push_back(field_matches("closed-form", e.spec, [a](const DelayPair& p) {
    const Vector& x = p.current;
    const Vector& d = p.delayed;
    Vector X(3);
    X << a[1] * d[2] * x[1] - a[2] * d[1] * x[2], a[2] * d[0] * x[2] - a[0] * d[2] * x[0],
        a[0] * d[1] * x[0] - a[1] * d[0] * x[1];
    return X;
  }));
  e.structural_checks.push_back(
      {"alpha-identity", [spec = e.spec, alpha](const DelayPair& p) {
         return std::abs(alpha(p) - p.current.dot(evaluate_field(spec, p)));
       }});
  e.structural_checks.push_back(diagonal_reduction(e.spec, rigid_body(a).spec));
  add_invariant_checks(e);
  return e;
}

CatalogEntry three_wave_delay(const Triple& s, const Triple& gamma, double perturbation) {
  require_wave_data(s, gamma);
  const ScalarField h1 = ScalarField::on_delayed(
      "x~1 x~2 x~3", 3, [](const Vector& d) { return d[0] * d[1] * d[2]; },
      [](const Vector& d) {
        Vector g(3);
        g << d[1] * d[2], d[0] * d[2], d[0] * d[1];
        return g;
      });
  CatalogEntry e(perturbation == 0.0 ? "three-wave-delay" : "three-wave-delay[perturbed]",
                 "three-wave interaction with every product delayed, X = g grad_x~(x~1 x~2 x~3)",
                 VectorFieldSpec::delay(TensorField::zero(3, SlotSignature::current_current),
                                        wave_metric(s, gamma, SlotSignature::delayed_current), h1,
                                        ScalarField::constant(3, 0.0)));
  e.parameters = wave_parameters(s, gamma);
  e.static_counterpart = "three-wave";
  Triple gamma_display = gamma;
  gamma_display[0] *= 1.0 + perturbation;
  e.structural_checks.push_back(field_matches(
      "closed-form", e.spec,
      [s, gamma_display](const DelayPair& p) { return wave_field(s, gamma_display, p.delayed); }));
  e.structural_checks.push_back(diagonal_reduction(e.spec, three_wave(s, gamma).spec));
  return e;
}

CatalogEntry revisited_rigid_body_delay(const Triple& a) {
  auto warnings = require_moments(a);
  const ScalarField H = forms::rigid_body_hamiltonian(a);
  RevisitedSystem rs = build_revisited_system(rigid_body_tensor(), half_square_delayed(), H,
                                              Variant::outer_product, Mode::delay_mode);
  CatalogEntry e("revisited-rigid-body-delay",
                 "rigid body with a delayed outer-product dissipation tensor", rs.spec);
  e.warnings = std::move(warnings);
  e.parameters = moment_parameters(a);
  e.invariants = {{"H", H, true}};
  e.diagnostic_quantities = {{"C", forms::rigid_body_casimir()}};
  e.static_counterpart = "revisited-rigid-body";
  e.structural_checks.push_back(annihilation_check(rs));
  e.literal_field = [a](const DelayPair& p) { return forms::revisited_rigid_body_delay_printed(a, p); };
  e.structural_checks.push_back(field_matches("printed-form", e.spec, e.literal_field, true));
  e.structural_checks.push_back(
      {"printed-g",
       [g = rs.spec.g, a](const DelayPair& p) {
         return sup(Matrix(g(p) - forms::delay_rigid_body_g_printed(a, p)));
       },
       true});
  e.structural_checks.push_back(diagonal_reduction(e.spec, revisited_rigid_body(a).spec));
  add_invariant_checks(e);
  for (const auto& d : rs.diagnostics) e.warnings.push_back(d);
  e.revisited = std::move(rs);
  return e;
}

CatalogEntry example_4_5(const Triple& a) {
  auto warnings = require_moments(a);
  const ScalarField c = mixed_quadratic("c", {1.0, 1.0, 1.0});
  const ScalarField H = delayed_pairing(a);
  CatalogEntry e("example-4-5", "mixed rigid-body tensor with the delayed pairing sum a x~ x",
                 VectorFieldSpec::delay(mixed_rigid_body_tensor(),
                                        TensorField::zero(3, SlotSignature::delayed_current), c, H));
  e.warnings = std::move(warnings);
  e.parameters = moment_parameters(a);
  e.invariants = {{"H", H, false}, {"c", c, false}};
  e.static_counterpart = "rigid-body";
  e.structural_checks.push_back(field_matches(
      "closed-form", e.spec, [a](const DelayPair& p) { return forms::example_4_5_field(a, p); }));
  e.structural_checks.push_back({"casimir", [P = e.spec.P, c](const DelayPair& p) {
                                   return sup(Vector(P(p) * c.grad_current(p)));
                                 }});
  e.structural_checks.push_back(diagonal_reduction(e.spec, rigid_body(a).spec));
  add_invariant_checks(e);
  e.revisit_inputs.push_back(
      {Mode::delay_mode, mixed_rigid_body_tensor(), c, H,
       TensorField("printed-g", 3,
                   [a](const DelayPair& p) { return forms::example_4_5_g_printed(a, p); },
                   Symmetry::general, SlotSignature::delayed_current),
       [a](const DelayPair& p) { return forms::revisited_example_4_5_printed(a, p); }});
  return e;
}

CatalogEntry revisited_example_4_5(const Triple& a) {
  auto warnings = require_moments(a);
  const ScalarField c = mixed_quadratic("c", {1.0, 1.0, 1.0});
  const ScalarField H = delayed_pairing(a);
  RevisitedSystem rs = build_revisited_system(mixed_rigid_body_tensor(), c, H,
                                              Variant::outer_product, Mode::delay_mode);
  CatalogEntry e("revisited-example-4-5", "delayed outer-product dissipation added to example-4-5",
                 rs.spec);
  e.warnings = std::move(warnings);
  e.parameters = moment_parameters(a);
  e.diagnostic_quantities = {{"H", H}, {"c", c}};
  e.structural_checks.push_back(annihilation_check(rs));
  e.literal_field = [a](const DelayPair& p) { return forms::revisited_example_4_5_printed(a, p); };
  e.structural_checks.push_back(field_matches("printed-form", e.spec, e.literal_field, true));
  e.structural_checks.push_back(
      {"printed-g",
       [g = rs.spec.g, a](const DelayPair& p) {
         return sup(Matrix(g(p) - forms::example_4_5_g_printed(a, p)));
       },
       true});
  for (const auto& d : rs.diagnostics) e.warnings.push_back(d);
  e.revisited = std::move(rs);
  return e;
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {
      "three-wave",          "rigid-body",          "landau-lifschitz",
      "revisited-rigid-body", "rigid-body-delay-1d", "rigid-body-delay-3d",
      "three-wave-delay",    "revisited-rigid-body-delay", "example-4-5",
      "revisited-example-4-5"};
  return names;
}

namespace {

bool is_wave(const std::string& name) { return name == "three-wave" || name == "three-wave-delay"; }

void require_known(const std::string& name) {
  const auto& names = catalog_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    std::string msg = "unknown system '" + name + "'; known systems:";
    for (const auto& n : names) msg += " " + n;
    throw UnknownNameError(msg);
  }
}

}  // namespace

ParameterMap default_parameters(const std::string& name) {
  require_known(name);
  if (is_wave(name)) {
    return {{"s1", 1.0}, {"s2", 1.0}, {"s3", 1.0}, {"gamma1", 1.0}, {"gamma2", 1.0}, {"gamma3", -2.0}};
  }
  if (name == "landau-lifschitz") {
    return {{"gamma", 1.0}, {"lambda", 0.1}, {"B1", 0.0}, {"B2", 0.0}, {"B3", 1.0}};
  }
  return {{"a1", kDefaultMoments[0]}, {"a2", kDefaultMoments[1]}, {"a3", kDefaultMoments[2]}};
}

CatalogEntry make_entry(const std::string& name, const ParameterMap& overrides) {
  ParameterMap params = default_parameters(name);
  for (const auto& [key, value] : overrides) {
    if (!params.count(key)) {
      std::string msg = "system '" + name + "' has no parameter '" + key + "'; parameters:";
      for (const auto& [k, v] : params) msg += " " + k;
      throw ConstraintError(msg);
    }
    params[key] = value;
  }
  auto triple = [&](const char* a, const char* b, const char* c) {
    return Triple{params.at(a), params.at(b), params.at(c)};
  };
  if (name == "three-wave") return three_wave(triple("s1", "s2", "s3"), triple("gamma1", "gamma2", "gamma3"));
  if (name == "three-wave-delay") {
    return three_wave_delay(triple("s1", "s2", "s3"), triple("gamma1", "gamma2", "gamma3"));
  }
  if (name == "landau-lifschitz") {
    return landau_lifschitz(params.at("gamma"), params.at("lambda"), triple("B1", "B2", "B3"));
  }
  const Triple a = triple("a1", "a2", "a3");
  if (name == "rigid-body") return rigid_body(a);
  if (name == "revisited-rigid-body") return revisited_rigid_body(a);
  if (name == "rigid-body-delay-1d") return rigid_body_delay_one_direction(a);
  if (name == "rigid-body-delay-3d") return rigid_body_delay_all_directions(a);
  if (name == "revisited-rigid-body-delay") return revisited_rigid_body_delay(a);
  if (name == "example-4-5") return example_4_5(a);
  return revisited_example_4_5(a);
}

}  // namespace metriplex
