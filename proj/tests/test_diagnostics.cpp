#include <cmath>

#include <gtest/gtest.h>

#include "metriplex/catalog.hpp"
#include "metriplex/diagnostics.hpp"

using namespace metriplex;

namespace {

Vector v3(double a, double b, double c) { return (Vector(3) << a, b, c).finished(); }

const ScalarField& invariant(const CatalogEntry& e, const std::string& label) {
  for (const auto& inv : e.invariants) {
    if (inv.label == label) return inv.field;
  }
  for (const auto& d : e.diagnostic_quantities) {
    if (d.label == label) return d.field;
  }
  throw std::runtime_error("no quantity " + label);
}

DenseTrajectory run(const CatalogEntry& e, const Vector& x0, double tau, double t_end, int m) {
  IntegrationConfig cfg;
  cfg.tau = tau;
  cfg.t_end = t_end;
  cfg.steps_per_delay = m;
  cfg.step = 1e-2;
  return integrate(e.spec, HistoryFunction::constant(x0, tau), cfg);
}

}  // namespace

TEST(Drift, ZeroFieldHasZeroDrift) {
  const FieldFn zero = [](const DelayPair& p) { return Vector(Vector::Zero(p.current.size())); };
  IntegrationConfig cfg;
  cfg.t_end = 2.0;
  const DenseTrajectory traj = integrate(zero, HistoryFunction::constant(v3(1, 2, 3), 0.0), cfg);
  const DriftReport r = first_integral_drift(traj, forms::rigid_body_casimir(), 0.0);
  EXPECT_EQ(r.max_drift, 0.0);
  EXPECT_EQ(r.times.size(), traj.knot_count());
  EXPECT_THROW(first_integral_drift(traj, ScalarField::constant(2, 0.0), 0.0), DimensionError);
}

TEST(Drift, RigidBodyCasimirStaysPut) {
  const CatalogEntry e = rigid_body();
  const DenseTrajectory traj = run(e, v3(0.5, 0.5, 1.0), 0.0, 50.0, 1);
  EXPECT_LE(first_integral_drift(traj, invariant(e, "C"), 0.0).max_drift, 1e-8);
  EXPECT_LE(first_integral_drift(traj, invariant(e, "H"), 0.0).max_drift, 1e-8);
}

TEST(Drift, DelayedWeightedSquareConvergesAtFourthOrder) {
  // Large amplitude keeps the drift well above roundoff.
  const CatalogEntry e = rigid_body_delay_all_directions();
  const ScalarField& h = invariant(e, "H");
  const double coarse = first_integral_drift(run(e, v3(2, 2, 4), 0.5, 20.0, 25), h, 0.5).max_drift;
  const double fine = first_integral_drift(run(e, v3(2, 2, 4), 0.5, 20.0, 50), h, 0.5).max_drift;
  EXPECT_GT(fine, 0.0);
  EXPECT_GE(coarse / fine, 12.0);
}

TEST(Drift, DefaultHistoryKeepsTheWeightedSquareTight) {
  const CatalogEntry e = rigid_body_delay_all_directions();
  const DenseTrajectory traj = run(e, v3(0.5, 0.5, 1.0), 0.5, 20.0, 50);
  EXPECT_LE(first_integral_drift(traj, invariant(e, "H"), 0.5).max_drift, 1e-6);
  // The unweighted pairing is not preserved.
  EXPECT_GT(first_integral_drift(traj, invariant(e, "alpha"), 0.5).max_drift, 1e-3);
}

TEST(Dissipation, PoissonFlowIsConserved) {
  const CatalogEntry e = rigid_body();
  const DenseTrajectory traj = run(e, v3(0.5, 0.5, 1.0), 0.0, 10.0, 1);
  const DissipationReport r = dissipation_monitor(traj, invariant(e, "H"), 0.0, 1e-8);
  EXPECT_EQ(r.trend, Trend::conserved);
  EXPECT_LE(r.max_abs_rate, 1e-8);
  EXPECT_EQ(r.rates.size(), traj.knot_count());
}

TEST(Dissipation, RevisitedFlowDecreasesTheCasimir) {
  // ∇C · g ∇C <= 0 because the constructed tensor is negative semidefinite.
  const CatalogEntry e = revisited_rigid_body();
  const DenseTrajectory traj = run(e, v3(0.5, 0.5, 1.0), 0.0, 5.0, 1);
  const DissipationReport r = dissipation_monitor(traj, invariant(e, "C"), 0.0, 1e-8);
  EXPECT_EQ(r.trend, Trend::decreasing) << to_string(r.trend);
  EXPECT_GT(r.max_abs_rate, 1e-4);
  EXPECT_LE(first_integral_drift(traj, invariant(e, "H"), 0.0).max_drift, 1e-8);
}

TEST(Dissipation, ZeroFieldHasZeroRates) {
  const FieldFn zero = [](const DelayPair& p) { return Vector(Vector::Zero(p.current.size())); };
  IntegrationConfig cfg;
  cfg.t_end = 1.0;
  const DenseTrajectory traj = integrate(zero, HistoryFunction::constant(v3(1, 0, 0), 0.0), cfg);
  const DissipationReport r = dissipation_monitor(traj, forms::rigid_body_casimir(), 0.0);
  EXPECT_EQ(r.max_abs_rate, 0.0);
  EXPECT_EQ(r.trend, Trend::conserved);
}

TEST(Structural, ReportNamesEveryCheck) {
  const CatalogEntry e = revisited_rigid_body_delay();
  const StructuralReport r = structural_residual(e, 20);
  EXPECT_EQ(r.checks.size(), e.structural_checks.size());
  EXPECT_TRUE(r.pass);
  bool informational_seen = false;
  for (const auto& c : r.checks) informational_seen = informational_seen || c.informational;
  EXPECT_TRUE(informational_seen);
  EXPECT_THROW(structural_residual(e, 0), ConstraintError);
}

TEST(Structural, SeedMakesReportsReproducible) {
  const CatalogEntry e = example_4_5();
  const StructuralReport a = structural_residual(e, 30, 99);
  const StructuralReport b = structural_residual(e, 30, 99);
  ASSERT_EQ(a.checks.size(), b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) EXPECT_EQ(a.checks[i].max_residual, b.checks[i].max_residual);
}
