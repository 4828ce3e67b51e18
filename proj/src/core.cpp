#include "metriplex/core.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace metriplex {

PhaseState::PhaseState(Vector coords) : coords_(std::move(coords)) {
  if (coords_.size() < 1) throw DimensionError("phase state must have at least one coordinate");
  if (!coords_.allFinite()) throw EvaluationError("phase state has non-finite coordinates");
}

DelayPair::DelayPair(Vector delayed_state, Vector current_state)
    : delayed(std::move(delayed_state)), current(std::move(current_state)) {
  if (delayed.size() != current.size()) {
    throw DimensionError("delayed and current states differ in dimension (" +
                         std::to_string(delayed.size()) + " vs " +
                         std::to_string(current.size()) + ")");
  }
}

ScalarField::ScalarField(std::string name, int dimension, FieldKind kind, ScalarFn value,
                         GradientFn grad_current, GradientFn grad_delayed)
    : name_(std::move(name)),
      dimension_(dimension),
      kind_(kind),
      value_(std::move(value)),
      grad_current_(std::move(grad_current)),
      grad_delayed_(std::move(grad_delayed)) {
  if (dimension_ < 1) throw DimensionError("scalar field '" + name_ + "' needs dimension >= 1");
}

ScalarField ScalarField::on_current(std::string name, int dimension,
                                    std::function<double(const Vector&)> fn,
                                    std::function<Vector(const Vector&)> grad) {
  return ScalarField(
      std::move(name), dimension, FieldKind::current_only,
      [fn](const DelayPair& p) { return fn(p.current); },
      [grad](const DelayPair& p) { return grad(p.current); }, nullptr);
}

ScalarField ScalarField::on_delayed(std::string name, int dimension,
                                    std::function<double(const Vector&)> fn,
                                    std::function<Vector(const Vector&)> grad) {
  return ScalarField(
      std::move(name), dimension, FieldKind::delayed_only,
      [fn](const DelayPair& p) { return fn(p.delayed); }, nullptr,
      [grad](const DelayPair& p) { return grad(p.delayed); });
}

ScalarField ScalarField::constant(int dimension, double c, std::string name) {
  return ScalarField(
      std::move(name), dimension, FieldKind::full, [c](const DelayPair&) { return c; },
      [dimension](const DelayPair&) { return Vector::Zero(dimension).eval(); },
      [dimension](const DelayPair&) { return Vector::Zero(dimension).eval(); });
}

double ScalarField::operator()(const DelayPair& p) const {
  if (p.dimension() != dimension_) {
    throw DimensionError("scalar field '" + name_ + "' has dimension " +
                         std::to_string(dimension_) + ", point has " +
                         std::to_string(p.dimension()));
  }
  return value_(p);
}

Vector ScalarField::grad_current(const DelayPair& p) const {
  if (!grad_current_ || kind_ == FieldKind::delayed_only) return Vector::Zero(dimension_);
  Vector g = grad_current_(p);
  if (g.size() != dimension_) throw DimensionError("gradient of '" + name_ + "' has wrong length");
  return g;
}

Vector ScalarField::grad_delayed(const DelayPair& p) const {
  if (!grad_delayed_ || kind_ == FieldKind::current_only) return Vector::Zero(dimension_);
  Vector g = grad_delayed_(p);
  if (g.size() != dimension_) throw DimensionError("gradient of '" + name_ + "' has wrong length");
  return g;
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  if (a.dimension() != b.dimension()) throw DimensionError("cannot add fields of different dimension");
  FieldKind kind = a.kind() == b.kind() ? a.kind() : FieldKind::full;
  return ScalarField(
      a.name() + "+" + b.name(), a.dimension(), kind,
      [a, b](const DelayPair& p) { return a(p) + b(p); },
      [a, b](const DelayPair& p) { return (a.grad_current(p) + b.grad_current(p)).eval(); },
      [a, b](const DelayPair& p) { return (a.grad_delayed(p) + b.grad_delayed(p)).eval(); });
}

std::string to_string(Symmetry s) {
  switch (s) {
    case Symmetry::skew: return "skew";
    case Symmetry::symmetric: return "symmetric";
    case Symmetry::mixed_t11: return "mixed-t11";
    case Symmetry::general: return "general";
  }
  return "?";
}

std::string to_string(SlotSignature s) {
  return s == SlotSignature::current_current ? "current-current" : "delayed-current";
}

TensorField::TensorField(std::string name, int dimension, MatrixFn eval, Symmetry symmetry,
                         SlotSignature signature)
    : name_(std::move(name)),
      dimension_(dimension),
      eval_(std::move(eval)),
      symmetry_(symmetry),
      signature_(signature) {
  if (dimension_ < 1) throw DimensionError("tensor field '" + name_ + "' needs dimension >= 1");
}

TensorField TensorField::zero(int dimension, SlotSignature signature) {
  return TensorField(
      "zero", dimension, [dimension](const DelayPair&) { return Matrix::Zero(dimension, dimension).eval(); },
      Symmetry::symmetric, signature);
}

Matrix TensorField::operator()(const DelayPair& p) const {
  if (p.dimension() != dimension_) {
    throw DimensionError("tensor field '" + name_ + "' has dimension " +
                         std::to_string(dimension_) + ", point has " +
                         std::to_string(p.dimension()));
  }
  Matrix m = eval_(p);
  if (m.rows() != dimension_ || m.cols() != dimension_) {
    throw DimensionError("tensor field '" + name_ + "' returned a matrix of the wrong shape");
  }
  if (!m.allFinite()) throw EvaluationError("tensor field '" + name_ + "' is not finite here");
  return m;
}

DelayPair random_pair(int dimension, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(kSampleLow, kSampleHigh);
  Vector delayed(dimension);
  Vector current(dimension);
  for (int i = 0; i < dimension; ++i) delayed[i] = u(rng);
  for (int i = 0; i < dimension; ++i) current[i] = u(rng);
  return DelayPair(std::move(delayed), std::move(current));
}

Vector finite_diff_gradient(const ScalarFn& f, const DelayPair& p, Slot slot,
                            std::optional<double> step) {
  if (step && !(*step > 0.0)) throw ConstraintError("finite-difference step must be positive");
  if (!p.delayed.allFinite() || !p.current.allFinite()) {
    throw EvaluationError("finite-difference base point is not finite");
  }
  const Eigen::Index n = p.dimension();
  Vector grad(n);
  DelayPair probe = p;
  Vector& coords = slot == Slot::current ? probe.current : probe.delayed;
  const char* slot_name = slot == Slot::current ? "x" : "x~";
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x0 = coords[i];
    const double h = step ? *step : 1e-5 * std::max(1.0, std::abs(x0));
    coords[i] = x0 + h;
    const double up = f(probe);
    coords[i] = x0 - h;
    const double down = f(probe);
    coords[i] = x0;
    if (!std::isfinite(up) || !std::isfinite(down)) {
      throw EvaluationError("non-finite function value probing coordinate " +
                            std::string(slot_name) + std::to_string(i + 1));
    }
    grad[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

GradientCheckReport check_gradient(const ScalarField& f, int samples, double tol,
                                   std::uint64_t seed) {
  if (samples < 1) throw ConstraintError("check_gradient needs at least one sample");
  std::mt19937_64 rng(seed);
  GradientCheckReport report;
  for (int s = 0; s < samples; ++s) {
    const DelayPair p = random_pair(f.dimension(), rng);
    for (Slot slot : {Slot::current, Slot::delayed}) {
      const Vector analytic = f.gradient(slot, p);
      const Vector numeric = finite_diff_gradient(f.value_fn(), p, slot);
      const double scale = std::max(1.0, numeric.lpNorm<Eigen::Infinity>());
      const double rel = (analytic - numeric).lpNorm<Eigen::Infinity>() / scale;
      report.max_rel_error = std::max(report.max_rel_error, rel);
    }
  }
  report.pass = report.max_rel_error <= tol;
  return report;
}

SymmetryReport check_symmetry(const TensorField& t, int samples, double tol,
                              std::uint64_t seed) {
  if (samples < 1) throw ConstraintError("check_symmetry needs at least one sample");
  std::mt19937_64 rng(seed);
  SymmetryReport report;
  report.declared = t.symmetry();
  for (int s = 0; s < samples; ++s) {
    DelayPair p = random_pair(t.dimension(), rng);
    if (t.symmetry() == Symmetry::mixed_t11) p = DelayPair::diagonal(p.current);
    const Matrix m = t(p);
    double defect = 0.0;
    switch (t.symmetry()) {
      case Symmetry::skew:
        defect = (m + m.transpose()).cwiseAbs().maxCoeff();
        break;
      case Symmetry::symmetric:
      case Symmetry::mixed_t11:
        defect = (m - m.transpose()).cwiseAbs().maxCoeff();
        break;
      case Symmetry::general:
        break;
    }
    report.max_defect = std::max(report.max_defect, defect);
  }
  report.pass = report.max_defect <= tol;
  return report;
}

}  // namespace metriplex
