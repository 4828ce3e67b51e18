#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "metriplex/bracket.hpp"
#include "metriplex/core.hpp"

namespace metriplex {

/// Initial data x(θ) = φ(θ) on [-τ, 0].
class HistoryFunction {
 public:
  HistoryFunction(int dimension, double tau, std::function<Vector(double)> fn,
                  std::string description);

  static HistoryFunction constant(const Vector& x0, double tau);
  /// Coordinate i is Σ_k coeffs[i][k] θ^k.
  static HistoryFunction polynomial(const std::vector<std::vector<double>>& coeffs, double tau);

  int dimension() const { return dimension_; }
  double tau() const { return tau_; }
  const std::string& description() const { return description_; }

  /// Throws RangeError outside [-τ, 0] and EvaluationError on non-finite
  /// output.
  Vector operator()(double theta) const;

 private:
  int dimension_;
  double tau_;
  std::function<Vector(double)> fn_;
  std::string description_;
};

struct IntegrationConfig {
  double tau = 0.0;          // constant delay; 0 integrates a plain ODE
  double t_end = 1.0;
  int steps_per_delay = 1;   // h = tau / steps_per_delay when tau > 0
  double step = 1e-2;        // h when tau == 0
  int record_every = 1;

  void validate() const;
  double step_size() const { return tau > 0.0 ? tau / steps_per_delay : step; }
};

/// Uniform-grid solution with cubic Hermite dense output. Knot k sits at
/// t = k h; times before 0 are served by the history function.
class DenseTrajectory {
 public:
  DenseTrajectory(HistoryFunction history, double tau, double step);

  double tau() const { return tau_; }
  double step() const { return step_; }
  int dimension() const { return history_.dimension(); }
  const HistoryFunction& history() const { return history_; }

  std::size_t knot_count() const { return states_.size(); }
  double knot_time(std::size_t k) const { return static_cast<double>(k) * step_; }
  const Vector& state(std::size_t k) const { return states_[k]; }
  const Vector& derivative(std::size_t k) const { return derivs_[k]; }
  double t_last() const { return knot_time(states_.size() - 1); }

  /// x(t) for t in [-τ, t_last]: history for t <= 0, otherwise the Hermite
  /// cubic of the containing interval (exact at knots).
  Vector eval(double t) const;

  /// Hermite value on interval [k h, (k+1) h] at fraction c in [0, 1].
  Vector eval_interval(std::size_t k, double c) const;

  /// Indices of knots kept for output: every record_every-th and the last.
  std::vector<std::size_t> recorded_indices(int record_every) const;

 private:
  friend DenseTrajectory integrate(const FieldFn&, const HistoryFunction&,
                                   const IntegrationConfig&);
  HistoryFunction history_;
  double tau_;
  double step_;
  std::vector<Vector> states_;
  std::vector<Vector> derivs_;
};

/// Classical RK4 by the method of steps for ẋ(t) = X(x(t-τ), x(t)). The step
/// divides τ, so the delayed argument of every stage falls on a completed
/// interval (or the history) and the breaking points kτ are knots. With
/// τ = 0 the field is evaluated with delayed = current.
DenseTrajectory integrate(const FieldFn& field, const HistoryFunction& phi,
                          const IntegrationConfig& cfg);
DenseTrajectory integrate(const VectorFieldSpec& spec, const HistoryFunction& phi,
                          const IntegrationConfig& cfg);

/// Free-function form of DenseTrajectory::eval.
PhaseState eval_trajectory(const DenseTrajectory& traj, double t);

struct ConvergenceReport {
  std::vector<double> steps;
  std::vector<double> errors;
  /// Least-squares slope of log(error) against log(step); empty when some
  /// error is zero.
  std::optional<double> order;
};

using ReferenceFn = std::function<Vector(double)>;

/// Integrates with each config and measures the sup-norm error at t_end.
/// Without a reference the finest config serves as reference. Needs at
/// least three configs whose step sizes form a geometric progression.
ConvergenceReport convergence_order(const FieldFn& field, const HistoryFunction& phi,
                                    std::span<const IntegrationConfig> configs,
                                    const ReferenceFn& reference = {});

}  // namespace metriplex
