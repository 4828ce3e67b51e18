#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace metriplex {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Error hierarchy. The CLI maps each leaf onto an exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class EvaluationError : public Error {
 public:
  using Error::Error;
};

class ConstraintError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class UnknownNameError : public Error {
 public:
  using Error::Error;
};

class BlowUpError : public Error {
 public:
  BlowUpError(double time, const std::string& what) : Error(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

/// A point of R^n with finite coordinates.
class PhaseState {
 public:
  explicit PhaseState(Vector coords);

  const Vector& coords() const { return coords_; }
  Eigen::Index size() const { return coords_.size(); }
  double operator[](Eigen::Index i) const { return coords_[i]; }

 private:
  Vector coords_;
};

/// A point (x̃, x) of R^n x R^n: the delayed state and the current state.
struct DelayPair {
  Vector delayed;
  Vector current;

  DelayPair(Vector delayed_state, Vector current_state);

  /// The point (x, x) on the diagonal.
  static DelayPair diagonal(const Vector& x) { return DelayPair(x, x); }

  Eigen::Index dimension() const { return current.size(); }
  DelayPair swapped() const { return DelayPair(current, delayed); }
};

enum class Slot { current, delayed };

enum class FieldKind { current_only, delayed_only, full };

using ScalarFn = std::function<double(const DelayPair&)>;
using GradientFn = std::function<Vector(const DelayPair&)>;
using MatrixFn = std::function<Matrix(const DelayPair&)>;

/// A smooth function on R^n x R^n together with its analytic partial
/// gradients in each slot. Functions on R^n are embedded with kind
/// current_only (or delayed_only); the vanishing slot gradient is supplied
/// automatically.
class ScalarField {
 public:
  ScalarField(std::string name, int dimension, FieldKind kind, ScalarFn value,
              GradientFn grad_current, GradientFn grad_delayed);

  /// f(x̃, x) = fn(x).
  static ScalarField on_current(std::string name, int dimension,
                                std::function<double(const Vector&)> fn,
                                std::function<Vector(const Vector&)> grad);
  /// f(x̃, x) = fn(x̃).
  static ScalarField on_delayed(std::string name, int dimension,
                                std::function<double(const Vector&)> fn,
                                std::function<Vector(const Vector&)> grad);
  static ScalarField constant(int dimension, double c, std::string name = "constant");

  const std::string& name() const { return name_; }
  int dimension() const { return dimension_; }
  FieldKind kind() const { return kind_; }

  double operator()(const DelayPair& p) const;
  Vector grad_current(const DelayPair& p) const;
  Vector grad_delayed(const DelayPair& p) const;
  Vector gradient(Slot slot, const DelayPair& p) const {
    return slot == Slot::current ? grad_current(p) : grad_delayed(p);
  }

  const ScalarFn& value_fn() const { return value_; }

 private:
  std::string name_;
  int dimension_;
  FieldKind kind_;
  ScalarFn value_;
  GradientFn grad_current_;
  GradientFn grad_delayed_;
};

/// Pointwise sum of two fields of the same dimension.
ScalarField operator+(const ScalarField& a, const ScalarField& b);

enum class Symmetry { skew, symmetric, mixed_t11, general };

/// Which coordinate covectors the tensor pairs. current_current tensors only
/// act on ∂/∂x covectors (the T⁰² class); delayed_current tensors pair a
/// ∂/∂x covector on the left with a ∂/∂x̃ covector on the right (T¹¹).
enum class SlotSignature { current_current, delayed_current };

std::string to_string(Symmetry s);
std::string to_string(SlotSignature s);

/// An n x n component-matrix-valued function of a DelayPair.
class TensorField {
 public:
  TensorField(std::string name, int dimension, MatrixFn eval, Symmetry symmetry,
              SlotSignature signature);

  static TensorField zero(int dimension, SlotSignature signature);

  const std::string& name() const { return name_; }
  int dimension() const { return dimension_; }
  Symmetry symmetry() const { return symmetry_; }
  SlotSignature signature() const { return signature_; }

  /// Throws EvaluationError if any component is not finite.
  Matrix operator()(const DelayPair& p) const;

 private:
  std::string name_;
  int dimension_;
  MatrixFn eval_;
  Symmetry symmetry_;
  SlotSignature signature_;
};

// ---------------------------------------------------------------------------
// Random sampling and derivative checks.

inline constexpr std::uint64_t kDefaultSeed = 20061127;
inline constexpr double kSampleLow = -2.0;
inline constexpr double kSampleHigh = 2.0;

/// Uniform point of [-2, 2]^n x [-2, 2]^n.
DelayPair random_pair(int dimension, std::mt19937_64& rng);

/// Central differences in one slot. Without an explicit step each coordinate
/// uses 1e-5 * max(1, |coordinate|).
Vector finite_diff_gradient(const ScalarFn& f, const DelayPair& p, Slot slot,
                            std::optional<double> step = std::nullopt);

struct GradientCheckReport {
  double max_rel_error = 0.0;
  bool pass = true;
};

/// Compares analytic and central-difference gradients in both slots.
/// Relative error per sample is |analytic - fd|_inf / max(1, |fd|_inf).
GradientCheckReport check_gradient(const ScalarField& f, int samples, double tol,
                                   std::uint64_t seed = kDefaultSeed);

struct SymmetryReport {
  Symmetry declared = Symmetry::general;
  double max_defect = 0.0;
  bool pass = true;
};

/// Verifies the declared symmetry class at random points. mixed_t11 tensors
/// are checked for symmetry on the diagonal x̃ = x.
SymmetryReport check_symmetry(const TensorField& t, int samples, double tol,
                              std::uint64_t seed = kDefaultSeed);

}  // namespace metriplex
