#include "metriplex/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace metriplex {

std::string to_string(Trend t) {
  switch (t) {
    case Trend::conserved: return "conserved";
    case Trend::decreasing: return "decreasing";
    case Trend::increasing: return "increasing";
    case Trend::mixed: return "mixed";
  }
  return "mixed";
}

namespace {

void require_dimension(const DenseTrajectory& traj, const ScalarField& f) {
  if (traj.dimension() != f.dimension()) {
    throw DimensionError("function '" + f.name() + "' has dimension " + std::to_string(f.dimension()) +
                         ", trajectory has " + std::to_string(traj.dimension()));
  }
}

// f(x(t_k - τ), x(t_k)). With τ a multiple of the step the delayed point is
// a knot (or the history).
double value_at_knot(const DenseTrajectory& traj, const ScalarField& f, double tau, std::size_t k) {
  const Vector& x = traj.state(k);
  if (tau == 0.0) return f(DelayPair::diagonal(x));
  const auto lag = static_cast<std::size_t>(std::llround(tau / traj.step()));
  const bool on_grid = std::abs(static_cast<double>(lag) * traj.step() - tau) <= 1e-12 * tau;
  Vector delayed;
  if (on_grid && k >= lag) {
    delayed = traj.state(k - lag);
  } else {
    delayed = traj.eval(traj.knot_time(k) - tau);
  }
  return f(DelayPair(delayed, x));
}

}  // namespace

DriftReport first_integral_drift(const DenseTrajectory& traj, const ScalarField& f, double tau) {
  require_dimension(traj, f);
  if (tau < 0.0) throw ConstraintError("tau must be >= 0");
  DriftReport report;
  report.times.reserve(traj.knot_count());
  report.values.reserve(traj.knot_count());
  for (std::size_t k = 0; k < traj.knot_count(); ++k) {
    report.times.push_back(traj.knot_time(k));
    report.values.push_back(value_at_knot(traj, f, tau, k));
    report.max_drift = std::max(report.max_drift, std::abs(report.values.back() - report.values.front()));
  }
  return report;
}

DissipationReport dissipation_monitor(const DenseTrajectory& traj, const ScalarField& h, double tau,
                                      double flat_tol) {
  require_dimension(traj, h);
  DissipationReport report;
  const std::size_t n = traj.knot_count();
  std::vector<double> v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = value_at_knot(traj, h, tau, k);
  const double dt = traj.step();
  report.times.reserve(n);
  report.rates.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    double rate = 0.0;
    if (n >= 2) {
      if (k == 0) {
        rate = (v[1] - v[0]) / dt;
      } else if (k + 1 == n) {
        rate = (v[k] - v[k - 1]) / dt;
      } else {
        rate = (v[k + 1] - v[k - 1]) / (2.0 * dt);
      }
    }
    report.times.push_back(traj.knot_time(k));
    report.rates.push_back(rate);
    report.max_abs_rate = std::max(report.max_abs_rate, std::abs(rate));
  }
  const bool any_neg = std::any_of(report.rates.begin(), report.rates.end(),
                                   [&](double r) { return r < -flat_tol; });
  const bool any_pos = std::any_of(report.rates.begin(), report.rates.end(),
                                   [&](double r) { return r > flat_tol; });
  if (any_neg && any_pos) {
    report.trend = Trend::mixed;
  } else if (any_neg) {
    report.trend = Trend::decreasing;
  } else if (any_pos) {
    report.trend = Trend::increasing;
  }
  return report;
}

StructuralReport structural_residual(const CatalogEntry& entry, int samples, std::uint64_t seed,
                                     double tol) {
  if (samples < 1) throw ConstraintError("structural_residual needs at least one sample");
  StructuralReport report;
  std::mt19937_64 rng(seed);
  std::vector<DelayPair> points;
  points.reserve(static_cast<std::size_t>(samples));
  for (int s = 0; s < samples; ++s) points.push_back(random_pair(entry.dimension, rng));
  for (const auto& check : entry.structural_checks) {
    CheckResidual r{check.name, 0.0, check.informational, true};
    for (const auto& p : points) r.max_residual = std::max(r.max_residual, check.residual(p));
    r.pass = r.informational || r.max_residual <= tol;
    report.pass = report.pass && r.pass;
    report.checks.push_back(std::move(r));
  }
  return report;
}

}  // namespace metriplex
