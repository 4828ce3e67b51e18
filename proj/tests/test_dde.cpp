#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "metriplex/dde.hpp"

using namespace metriplex;

namespace {

// Exact solution of x'(t) = -x(t - 1), x = 1 on [-1, 0], by the method of
// steps: on [k, k+1], x(k + s) = x(k) - ∫₀ˢ x(k - 1 + u) du, kept as
// polynomials in s.
class LinearDelayOracle {
 public:
  explicit LinearDelayOracle(int intervals) {
    std::vector<double> prev{1.0};  // history
    for (int k = 0; k < intervals; ++k) {
      const double start = eval_poly(prev, k == 0 ? 0.0 : 1.0);
      std::vector<double> next(prev.size() + 1, 0.0);
      next[0] = start;
      for (std::size_t i = 0; i < prev.size(); ++i) next[i + 1] = -prev[i] / static_cast<double>(i + 1);
      pieces_.push_back(next);
      prev = next;
    }
  }

  double operator()(double t) const {
    if (t <= 0.0) return 1.0;
    auto k = static_cast<std::size_t>(std::floor(t));
    if (k >= pieces_.size()) k = pieces_.size() - 1;
    return eval_poly(pieces_[k], t - static_cast<double>(k));
  }

 private:
  static double eval_poly(const std::vector<double>& c, double s) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * s + *it;
    return acc;
  }
  std::vector<std::vector<double>> pieces_;
};

const FieldFn kNegativeDelayed = [](const DelayPair& p) { return Vector(-p.delayed); };

Vector one(double v) { return Vector::Constant(1, v); }

IntegrationConfig delay_config(double tau, double t_end, int m) {
  IntegrationConfig cfg;
  cfg.tau = tau;
  cfg.t_end = t_end;
  cfg.steps_per_delay = m;
  return cfg;
}

}  // namespace

TEST(Oracle, KnownValues) {
  const LinearDelayOracle x(6);
  EXPECT_DOUBLE_EQ(x(1.0), 0.0);
  EXPECT_DOUBLE_EQ(x(2.0), -0.5);
  // x(3) = 1 - 3 + 2²/2 - 1/6
  EXPECT_NEAR(x(3.0), 1.0 - 3.0 + 2.0 - 1.0 / 6.0, 1e-15);
}

TEST(Integrator, LinearDelayEquationAtTwo) {
  const auto phi = HistoryFunction::constant(one(1.0), 1.0);
  const DenseTrajectory traj = integrate(kNegativeDelayed, phi, delay_config(1.0, 2.0, 100));
  EXPECT_NEAR(traj.eval(2.0)[0], -0.5, 1e-10);
}

TEST(Integrator, FourthOrderAgainstTheOracle) {
  const LinearDelayOracle exact(12);
  const auto phi = HistoryFunction::constant(one(1.0), 1.0);
  std::vector<IntegrationConfig> configs;
  for (int m : {10, 20, 40, 80}) configs.push_back(delay_config(1.0, 10.0, m));
  const ConvergenceReport r =
      convergence_order(kNegativeDelayed, phi, configs, [&](double t) { return one(exact(t)); });
  ASSERT_TRUE(r.order.has_value());
  EXPECT_GE(*r.order, 3.5);
  EXPECT_LE(*r.order, 4.5);
  for (std::size_t i = 1; i < r.errors.size(); ++i) EXPECT_LT(r.errors[i], r.errors[i - 1]);
}

TEST(Integrator, PolynomialSolutionsAreExactOnTheFirstIntervals) {
  // x'(t) = x(t - 1) with x(θ) = θ: x(t) = t²/2 - t on [0, 1].
  const auto phi = HistoryFunction::polynomial({{0.0, 1.0}}, 1.0);
  const FieldFn f = [](const DelayPair& p) { return p.delayed; };
  const DenseTrajectory traj = integrate(f, phi, delay_config(1.0, 1.0, 4));
  EXPECT_NEAR(traj.eval(1.0)[0], -0.5, 1e-15);
  EXPECT_NEAR(traj.eval(0.3)[0], 0.045 - 0.3, 1e-15);
  EXPECT_NEAR(traj.eval(-0.25)[0], -0.25, 0.0);
}

TEST(Integrator, ZeroDelayIsAnOrdinaryRungeKutta) {
  const FieldFn f = [](const DelayPair& p) {
    EXPECT_EQ(p.delayed, p.current);
    return Vector(-p.current);
  };
  const auto phi = HistoryFunction::constant(one(1.0), 0.0);
  std::vector<IntegrationConfig> configs;
  for (double h : {0.2, 0.1, 0.05, 0.025}) {
    IntegrationConfig c;
    c.t_end = 2.0;
    c.step = h;
    configs.push_back(c);
  }
  const ConvergenceReport r =
      convergence_order(f, phi, configs, [](double t) { return one(std::exp(-t)); });
  ASSERT_TRUE(r.order.has_value());
  EXPECT_NEAR(*r.order, 4.0, 0.2);
}

TEST(Integrator, DenseOutputIsExactAtKnotsAndFourthOrderBetween) {
  const auto phi = HistoryFunction::constant(one(1.0), 0.0);
  IntegrationConfig c;
  c.t_end = 1.0;
  c.step = 0.1;
  const FieldFn f = [](const DelayPair& p) { return Vector(-p.current); };
  const DenseTrajectory traj = integrate(f, phi, c);
  EXPECT_EQ(traj.knot_count(), 11u);
  EXPECT_EQ(traj.eval(traj.knot_time(3)), traj.state(3));
  EXPECT_NEAR(traj.eval(0.35)[0], std::exp(-0.35), 1e-6);
  EXPECT_THROW(traj.eval(1.5), RangeError);
}

TEST(Integrator, BlowUpReportsTheTime) {
  // x' = x² from x(0) = 1 escapes at t = 1.
  const FieldFn f = [](const DelayPair& p) { return Vector(p.current.array().square()); };
  const auto phi = HistoryFunction::constant(one(1.0), 0.0);
  IntegrationConfig c;
  c.t_end = 3.0;
  c.step = 0.01;
  try {
    integrate(f, phi, c);
    FAIL() << "expected BlowUpError";
  } catch (const BlowUpError& e) {
    EXPECT_GT(e.time(), 0.99);
    EXPECT_LT(e.time(), 3.0);
  }
}

TEST(Integrator, ValidatesConfiguration) {
  const auto phi = HistoryFunction::constant(one(1.0), 1.0);
  EXPECT_THROW(integrate(kNegativeDelayed, phi, delay_config(1.0, 0.0, 10)), ConstraintError);
  EXPECT_THROW(integrate(kNegativeDelayed, phi, delay_config(1.0, 1.0, 0)), ConstraintError);
  EXPECT_THROW(integrate(kNegativeDelayed, phi, delay_config(0.5, 1.0, 10)), ConstraintError);
  const FieldFn wrong = [](const DelayPair&) { return Vector::Zero(2).eval(); };
  EXPECT_THROW(integrate(wrong, phi, delay_config(1.0, 1.0, 10)), DimensionError);
}

TEST(History, DomainAndEvaluation) {
  const auto phi = HistoryFunction::polynomial({{1.0, 2.0, 3.0}, {0.5}}, 2.0);
  EXPECT_EQ(phi.dimension(), 2);
  EXPECT_DOUBLE_EQ(phi(-1.0)[0], 1.0 - 2.0 + 3.0);
  EXPECT_DOUBLE_EQ(phi(-1.0)[1], 0.5);
  EXPECT_THROW(phi(0.1), RangeError);
  EXPECT_THROW(phi(-2.5), RangeError);
  EXPECT_THROW(HistoryFunction::constant(one(1.0), -1.0), ConstraintError);
  EXPECT_THROW(HistoryFunction::polynomial({}, 1.0), DimensionError);
}

TEST(Convergence, NeedsAGeometricProgression) {
  const auto phi = HistoryFunction::constant(one(1.0), 1.0);
  std::vector<IntegrationConfig> two{delay_config(1.0, 2.0, 10), delay_config(1.0, 2.0, 20)};
  EXPECT_THROW(convergence_order(kNegativeDelayed, phi, two), ConstraintError);
  std::vector<IntegrationConfig> uneven{delay_config(1.0, 2.0, 10), delay_config(1.0, 2.0, 20),
                                        delay_config(1.0, 2.0, 30)};
  EXPECT_THROW(convergence_order(kNegativeDelayed, phi, uneven), ConstraintError);
}

TEST(Convergence, LowDegreeSolutionsAreReproducedToRoundoff) {
  // Every step size reproduces the piecewise quadratic on [0, 2].
  const auto phi = HistoryFunction::constant(one(1.0), 1.0);
  std::vector<IntegrationConfig> configs;
  for (int m : {10, 20, 40}) configs.push_back(delay_config(1.0, 2.0, m));
  const LinearDelayOracle exact(3);
  const ConvergenceReport r =
      convergence_order(kNegativeDelayed, phi, configs, [&](double t) { return one(exact(t)); });
  for (double e : r.errors) EXPECT_LE(e, 1e-13);
}
