#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "metriplex/catalog.hpp"
#include "metriplex/core.hpp"
#include "metriplex/dde.hpp"

namespace metriplex {

struct DriftReport {
  double max_drift = 0.0;
  std::vector<double> times;
  std::vector<double> values;  // f(x(t - τ), x(t)) at each knot
};

/// Evaluates f(x(t - τ), x(t)) at the knots and measures max |f(t) - f(0)|.
/// Knots only: dense-output error would pollute refinement studies.
DriftReport first_integral_drift(const DenseTrajectory& traj, const ScalarField& f, double tau);

enum class Trend { conserved, decreasing, increasing, mixed };
std::string to_string(Trend t);

struct DissipationReport {
  std::vector<double> times;
  std::vector<double> rates;  // dh/dt estimates
  double max_abs_rate = 0.0;
  Trend trend = Trend::conserved;
};

/// dh/dt along the trajectory by centered differences over knots
/// (one-sided at the ends). Rates below `flat_tol` in magnitude count as
/// zero when classifying the trend.
DissipationReport dissipation_monitor(const DenseTrajectory& traj, const ScalarField& h, double tau,
                                      double flat_tol = 1e-10);

struct CheckResidual {
  std::string name;
  double max_residual = 0.0;
  bool informational = false;
  bool pass = true;
};

struct StructuralReport {
  std::vector<CheckResidual> checks;
  bool pass = true;  // informational checks never fail the report
};

inline constexpr double kStructuralTolerance = 1e-12;

/// Max residual of every structural check of `entry` over seeded random
/// points of [-2, 2]^n x [-2, 2]^n.
StructuralReport structural_residual(const CatalogEntry& entry, int samples,
                                     std::uint64_t seed = kDefaultSeed,
                                     double tol = kStructuralTolerance);

}  // namespace metriplex
