#include "metriplex/dde.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace metriplex {

HistoryFunction::HistoryFunction(int dimension, double tau, std::function<Vector(double)> fn,
                                 std::string description)
    : dimension_(dimension), tau_(tau), fn_(std::move(fn)), description_(std::move(description)) {
  if (dimension_ < 1) throw DimensionError("history needs dimension >= 1");
  if (!(tau_ >= 0.0) || !std::isfinite(tau_)) throw ConstraintError("history needs a finite tau >= 0");
}

HistoryFunction HistoryFunction::constant(const Vector& x0, double tau) {
  std::ostringstream desc;
  desc << "constant (";
  for (Eigen::Index i = 0; i < x0.size(); ++i) desc << (i ? ", " : "") << x0[i];
  desc << ")";
  PhaseState checked(x0);
  return HistoryFunction(static_cast<int>(x0.size()), tau, [x0](double) { return x0; },
                         desc.str());
}

HistoryFunction HistoryFunction::polynomial(const std::vector<std::vector<double>>& coeffs,
                                            double tau) {
  if (coeffs.empty()) throw DimensionError("polynomial history needs at least one coordinate");
  std::ostringstream desc;
  desc << "polynomial [";
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].empty()) throw ConstraintError("polynomial history coordinate has no coefficients");
    desc << (i ? "; " : "");
    for (std::size_t k = 0; k < coeffs[i].size(); ++k) desc << (k ? ", " : "") << coeffs[i][k];
  }
  desc << "] in theta";
  return HistoryFunction(static_cast<int>(coeffs.size()), tau,
                         [coeffs](double theta) {
                           Vector x(static_cast<Eigen::Index>(coeffs.size()));
                           for (std::size_t i = 0; i < coeffs.size(); ++i) {
                             double acc = 0.0;
                             for (auto it = coeffs[i].rbegin(); it != coeffs[i].rend(); ++it) {
                               acc = acc * theta + *it;
                             }
                             x[static_cast<Eigen::Index>(i)] = acc;
                           }
                           return x;
                         },
                         desc.str());
}

Vector HistoryFunction::operator()(double theta) const {
  const double slack = 1e-12 * std::max(1.0, tau_);
  if (theta > slack || theta < -tau_ - slack) {
    std::ostringstream msg;
    msg << "history evaluated at " << theta << ", outside [" << -tau_ << ", 0]";
    throw RangeError(msg.str());
  }
  Vector x = fn_(std::clamp(theta, -tau_, 0.0));
  if (x.size() != dimension_) throw DimensionError("history returned a state of the wrong dimension");
  if (!x.allFinite()) throw EvaluationError("history is not finite at theta = " + std::to_string(theta));
  return x;
}

void IntegrationConfig::validate() const {
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw ConstraintError("tau must be finite and >= 0");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ConstraintError("t_end must be > 0");
  if (tau > 0.0 && steps_per_delay < 1) throw ConstraintError("steps_per_delay must be >= 1");
  if (tau == 0.0 && !(step > 0.0)) throw ConstraintError("step must be > 0");
  if (record_every < 1) throw ConstraintError("record_every must be >= 1");
}

DenseTrajectory::DenseTrajectory(HistoryFunction history, double tau, double step)
    : history_(std::move(history)), tau_(tau), step_(step) {}

Vector DenseTrajectory::eval_interval(std::size_t k, double c) const {
  if (k + 1 >= states_.size()) {
    throw RangeError("interval " + std::to_string(k) + " is not complete");
  }
  if (c == 0.0) return states_[k];
  if (c == 1.0) return states_[k + 1];
  if (k + 1 >= derivs_.size()) {
    throw RangeError("interval " + std::to_string(k) + " has no end derivative yet");
  }
  const double c2 = c * c;
  const double c3 = c2 * c;
  const double h00 = 2.0 * c3 - 3.0 * c2 + 1.0;
  const double h10 = c3 - 2.0 * c2 + c;
  const double h01 = -2.0 * c3 + 3.0 * c2;
  const double h11 = c3 - c2;
  return h00 * states_[k] + (h10 * step_) * derivs_[k] + h01 * states_[k + 1] +
         (h11 * step_) * derivs_[k + 1];
}

Vector DenseTrajectory::eval(double t) const {
  const double slack = 1e-12 * std::max(1.0, std::abs(t));
  if (t < -tau_ - slack || t > t_last() + slack || std::isnan(t)) {
    std::ostringstream msg;
    msg << "trajectory evaluated at t = " << t << ", outside [" << -tau_ << ", " << t_last() << "]";
    throw RangeError(msg.str());
  }
  if (t <= 0.0) return tau_ > 0.0 ? history_(t) : states_.front();
  const std::size_t last = states_.size() - 1;
  const auto nearest = static_cast<std::size_t>(std::llround(t / step_));
  if (nearest <= last && knot_time(nearest) == t) return states_[nearest];
  auto k = static_cast<std::size_t>(std::floor(t / step_));
  if (k >= last) k = last - 1;
  const double c = std::clamp((t - knot_time(k)) / step_, 0.0, 1.0);
  return eval_interval(k, c);
}

std::vector<std::size_t> DenseTrajectory::recorded_indices(int record_every) const {
  if (record_every < 1) throw ConstraintError("record_every must be >= 1");
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < states_.size(); k += static_cast<std::size_t>(record_every)) {
    idx.push_back(k);
  }
  if (idx.back() != states_.size() - 1) idx.push_back(states_.size() - 1);
  return idx;
}

DenseTrajectory integrate(const FieldFn& field, const HistoryFunction& phi,
                          const IntegrationConfig& cfg) {
  cfg.validate();
  if (cfg.tau > 0.0 && std::abs(phi.tau() - cfg.tau) > 1e-12 * cfg.tau) {
    throw ConstraintError("history domain does not match the configured delay");
  }
  const double h = cfg.step_size();
  const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(cfg.t_end / h - 1e-9)));
  const std::size_t m = cfg.tau > 0.0 ? static_cast<std::size_t>(cfg.steps_per_delay) : 0;
  const Eigen::Index n = phi.dimension();

  DenseTrajectory traj(phi, cfg.tau, h);
  traj.states_.reserve(steps + 1);
  traj.derivs_.reserve(steps + 1);
  traj.states_.push_back(phi(0.0));

  auto eval_field = [&](const Vector& delayed, const Vector& current) {
    Vector dx = field(DelayPair(delayed, current));
    if (dx.size() != n) {
      throw DimensionError("field returned " + std::to_string(dx.size()) +
                           " components, history has " + std::to_string(n));
    }
    if (!dx.allFinite()) throw EvaluationError("field value is not finite");
    return dx;
  };
  // x(t_k + c h - τ). With h = τ/m this is interval k - m at the same
  // fraction, which is complete whenever m >= 1.
  auto delayed_state = [&](std::size_t k, double c, const Vector& stage) -> Vector {
    if (m == 0) return stage;
    if (k >= m) return traj.eval_interval(k - m, c);
    const double theta = (static_cast<double>(k) - static_cast<double>(m) + c) * h;
    return phi(std::clamp(theta, -cfg.tau, 0.0));
  };

  auto blow_up = [&](std::size_t k, const std::string& cause) {
    const double t = traj.knot_time(k + 1);
    std::ostringstream msg;
    msg << "solution blew up at t = " << t << " (" << cause << ")";
    return BlowUpError(t, msg.str());
  };

  for (std::size_t k = 0; k < steps; ++k) {
    const Vector& x = traj.states_[k];
    Vector next;
    try {
      const Vector k1 = eval_field(delayed_state(k, 0.0, x), x);
      traj.derivs_.push_back(k1);
      const Vector x2 = x + (0.5 * h) * k1;
      const Vector k2 = eval_field(delayed_state(k, 0.5, x2), x2);
      const Vector x3 = x + (0.5 * h) * k2;
      const Vector k3 = eval_field(delayed_state(k, 0.5, x3), x3);
      const Vector x4 = x + h * k3;
      const Vector k4 = eval_field(delayed_state(k, 1.0, x4), x4);
      next = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    } catch (const EvaluationError& e) {
      // Overflow inside a stage: the state is finite but the field is not.
      throw blow_up(k, e.what());
    }
    if (!next.allFinite()) throw blow_up(k, "non-finite state");
    traj.states_.push_back(std::move(next));
  }
  const Vector& x_last = traj.states_.back();
  traj.derivs_.push_back(eval_field(delayed_state(steps, 0.0, x_last), x_last));
  return traj;
}

DenseTrajectory integrate(const VectorFieldSpec& spec, const HistoryFunction& phi,
                          const IntegrationConfig& cfg) {
  if (spec.dimension != phi.dimension()) {
    throw DimensionError("field and history differ in dimension");
  }
  return integrate(as_field_fn(spec), phi, cfg);
}

PhaseState eval_trajectory(const DenseTrajectory& traj, double t) { return PhaseState(traj.eval(t)); }

ConvergenceReport convergence_order(const FieldFn& field, const HistoryFunction& phi,
                                    std::span<const IntegrationConfig> configs,
                                    const ReferenceFn& reference) {
  if (configs.size() < 3) throw ConstraintError("convergence study needs at least 3 configurations");
  std::vector<IntegrationConfig> sorted(configs.begin(), configs.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return a.step_size() > b.step_size();
  });
  const double ratio = sorted[0].step_size() / sorted[1].step_size();
  for (std::size_t i = 1; i + 1 < sorted.size(); ++i) {
    const double r = sorted[i].step_size() / sorted[i + 1].step_size();
    if (!(ratio > 1.0) || std::abs(r - ratio) > 1e-6 * ratio) {
      throw ConstraintError("convergence study step sizes are not a geometric progression");
    }
  }
  const double t_end = sorted.front().t_end;

  ReferenceFn ref = reference;
  std::size_t measured = sorted.size();
  if (!ref) {
    const DenseTrajectory finest = integrate(field, phi, sorted.back());
    const Vector x_ref = finest.eval(t_end);
    ref = [x_ref](double) { return x_ref; };
    measured = sorted.size() - 1;
  }

  ConvergenceReport report;
  for (std::size_t i = 0; i < measured; ++i) {
    const DenseTrajectory traj = integrate(field, phi, sorted[i]);
    report.steps.push_back(sorted[i].step_size());
    report.errors.push_back((traj.eval(t_end) - ref(t_end)).lpNorm<Eigen::Infinity>());
  }
  const bool resolvable = std::all_of(report.errors.begin(), report.errors.end(),
                                      [](double e) { return e > 0.0 && std::isfinite(e); });
  if (resolvable && report.errors.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto count = static_cast<double>(report.errors.size());
    for (std::size_t i = 0; i < report.errors.size(); ++i) {
      const double x = std::log(report.steps[i]);
      const double y = std::log(report.errors[i]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    report.order = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  }
  return report;
}

}  // namespace metriplex
