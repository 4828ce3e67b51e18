#include "metriplex/bracket.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "metriplex/polynomial.hpp"

namespace metriplex {

std::string to_string(Wiring w) {
  switch (w) {
    case Wiring::static_leibniz: return "static-leibniz";
    case Wiring::static_almost: return "static-almost";
    case Wiring::delay_almost: return "delay-almost";
  }
  return "?";
}

VectorFieldSpec VectorFieldSpec::leibniz(TensorField P, TensorField g, const ScalarField& h) {
  VectorFieldSpec spec{h.dimension(), std::move(P), std::move(g), h, h, Wiring::static_leibniz};
  spec.validate();
  return spec;
}

VectorFieldSpec VectorFieldSpec::almost(TensorField P, TensorField g, ScalarField h1,
                                        ScalarField h2) {
  const int n = h1.dimension();
  VectorFieldSpec spec{n, std::move(P), std::move(g), std::move(h1), std::move(h2),
                       Wiring::static_almost};
  spec.validate();
  return spec;
}

VectorFieldSpec VectorFieldSpec::delay(TensorField P, TensorField g, ScalarField h1,
                                       ScalarField h2) {
  const int n = h1.dimension();
  VectorFieldSpec spec{n, std::move(P), std::move(g), std::move(h1), std::move(h2),
                       Wiring::delay_almost};
  spec.validate();
  return spec;
}

void VectorFieldSpec::validate() const {
  for (int d : {P.dimension(), g.dimension(), h1.dimension(), h2.dimension()}) {
    if (d != dimension) {
      throw DimensionError("vector field components disagree on dimension (" +
                           std::to_string(d) + " vs " + std::to_string(dimension) + ")");
    }
  }
  if (wiring == Wiring::delay_almost) {
    if (P.signature() != SlotSignature::current_current) {
      throw DimensionError("delay wiring needs P with current-current slots");
    }
    if (g.signature() != SlotSignature::delayed_current) {
      throw DimensionError("delay wiring needs g with delayed-current slots");
    }
  } else if (P.signature() != SlotSignature::current_current ||
             g.signature() != SlotSignature::current_current) {
    throw DimensionError("static wiring needs current-current tensors");
  }
}

Vector VectorFieldSpec::operator()(const DelayPair& p) const { return evaluate_field(*this, p); }

double pseudometric_bracket(const TensorField& g, const ScalarField& f, const ScalarField& h,
                            const DelayPair& p) {
  if (f.dimension() != g.dimension() || h.dimension() != g.dimension()) {
    throw DimensionError("pseudometric bracket: dimension mismatch");
  }
  return f.grad_current(p).dot(g(p) * h.grad_current(p));
}

namespace {

void require(const VectorFieldSpec& spec, Wiring w, const DelayPair& p) {
  if (spec.wiring != w) {
    throw DimensionError("field evaluated with wiring " + to_string(w) + " but spec is " +
                         to_string(spec.wiring));
  }
  if (p.dimension() != spec.dimension) throw DimensionError("point dimension mismatch");
}

}  // namespace

Vector leibniz_vector_field(const VectorFieldSpec& spec, const DelayPair& p) {
  require(spec, Wiring::static_leibniz, p);
  return (spec.P(p) + spec.g(p)) * spec.h1.grad_current(p);
}

Vector almost_leibniz_vector_field(const VectorFieldSpec& spec, const DelayPair& p) {
  require(spec, Wiring::static_almost, p);
  return spec.P(p) * spec.h1.grad_current(p) + spec.g(p) * spec.h2.grad_current(p);
}

Vector delay_vector_field(const VectorFieldSpec& spec, const DelayPair& p) {
  require(spec, Wiring::delay_almost, p);
  return spec.P(p) * spec.h2.grad_current(p) + spec.g(p) * spec.h1.grad_delayed(p);
}

Vector evaluate_field(const VectorFieldSpec& spec, const DelayPair& p) {
  switch (spec.wiring) {
    case Wiring::static_leibniz: return leibniz_vector_field(spec, p);
    case Wiring::static_almost: return almost_leibniz_vector_field(spec, p);
    case Wiring::delay_almost: return delay_vector_field(spec, p);
  }
  throw DimensionError("unknown wiring");
}

FieldFn as_field_fn(const VectorFieldSpec& spec) {
  return [spec](const DelayPair& p) { return evaluate_field(spec, p); };
}

// ---------------------------------------------------------------------------

namespace {

// Test function together with its gradients at the current sample point.
struct Probe {
  double value;
  Vector dx;   // ∂/∂x
  Vector dxt;  // ∂/∂x̃
};

class LawContext {
 public:
  LawContext(const Matrix& P, const Matrix& g, bool delay) : P_(P), g_(g), delay_(delay) {}

  double p_form(const Probe& f, const Probe& h) const { return f.dx.dot(P_ * h.dx); }
  double g_form(const Probe& f, const Probe& h) const {
    return f.dx.dot(g_ * (delay_ ? h.dxt : h.dx));
  }
  // [f, (h1, h2)]
  double bracket(const Probe& f, const Probe& h1, const Probe& h2) const {
    return delay_ ? p_form(f, h2) + g_form(f, h1) : p_form(f, h1) + g_form(f, h2);
  }

 private:
  const Matrix& P_;
  const Matrix& g_;
  bool delay_;
};

double relative(double residual, std::initializer_list<double> terms) {
  double scale = 1.0;
  for (double t : terms) scale += std::abs(t);
  return std::abs(residual) / scale;
}

}  // namespace

LawReport verify_bracket_laws(const TensorField& P, const TensorField& g,
                              const LawCheckOptions& options) {
  if (options.trials < 1) throw ConstraintError("verify_bracket_laws needs at least one trial");
  if (P.dimension() != g.dimension()) throw DimensionError("P and g differ in dimension");
  const int n = P.dimension();
  const bool delay = g.signature() == SlotSignature::delayed_current;
  // Functions on the base space act through the current coordinates; in the
  // delay setting Hamiltonians live on the product space.
  const int nv = delay ? 2 * n : n;
  const int offset = delay ? n : 0;
  constexpr int kDegree = 3;
  constexpr int kTerms = 5;

  std::mt19937_64 rng(options.seed);
  LawReport report;

  auto probe = [&](const Polynomial& poly, const DelayPair& pt) {
    Vector z(nv);
    if (delay) {
      z.head(n) = pt.delayed;
      z.tail(n) = pt.current;
    } else {
      z = pt.current;
    }
    const Vector grad = poly.gradient(z);
    Probe pr{poly.eval(z), grad.tail(n), delay ? Vector(grad.head(n)) : Vector::Zero(n).eval()};
    return pr;
  };
  auto base_function = [&]() {
    return Polynomial::random(n, kDegree, kTerms, rng).embed(nv, offset);
  };
  auto hamiltonian = [&]() { return Polynomial::random(nv, kDegree, kTerms, rng); };

  for (int t = 0; t < options.trials; ++t) {
    const Polynomial f = base_function();
    const Polynomial k = base_function();
    const Polynomial h = hamiltonian();
    const Polynomial l = hamiltonian();
    const Polynomial h1 = hamiltonian();
    const Polynomial h2 = hamiltonian();
    const DelayPair pt = random_pair(n, rng);
    const Matrix Pm = P(pt);
    const Matrix gm = g(pt);
    const LawContext ctx(Pm, gm, delay);

    const Probe F = probe(f, pt), K = probe(k, pt), H = probe(h, pt), L = probe(l, pt);
    const Probe H1 = probe(h1, pt), H2 = probe(h2, pt);

    // (a)
    {
      const Probe FK = probe(f * k, pt);
      const double lhs = ctx.bracket(FK, H1, H2);
      const double t1 = ctx.bracket(F, H1, H2) * K.value;
      const double t2 = F.value * ctx.bracket(K, H1, H2);
      report.residual_product_rule =
          std::max(report.residual_product_rule, relative(lhs - t1 - t2, {lhs, t1, t2}));
    }
    // (b)
    {
      const Probe HH1 = probe(h * h1, pt);
      const Probe HH2 = probe(h * h2, pt);
      const double lhs = ctx.bracket(F, HH1, HH2);
      const double t1 = H.value * ctx.bracket(F, H1, H2);
      const double p_term = (delay ? H2.value : H1.value) * ctx.p_form(F, H);
      double g_term = (delay ? H1.value : H2.value) * ctx.g_form(F, H);
      if (options.fault == LawFault::drop_metric_term) g_term = 0.0;
      report.residual_scaled_pair = std::max(
          report.residual_scaled_pair, relative(lhs - t1 - p_term - g_term, {lhs, t1, p_term, g_term}));
    }
    // (c)
    {
      const Probe LH = probe(l * h, pt);
      const double lhs = ctx.bracket(F, LH, LH);
      const double t1 = L.value * ctx.bracket(F, H, H);
      const double t2 = H.value * ctx.bracket(F, L, L);
      report.residual_diagonal_pair =
          std::max(report.residual_diagonal_pair, relative(lhs - t1 - t2, {lhs, t1, t2}));
    }
  }
  report.max_residual = std::max({report.residual_product_rule, report.residual_scaled_pair,
                                  report.residual_diagonal_pair});
  report.pass = report.max_residual <= options.tol;
  return report;
}

EquivalenceReport verify_equivalence(const TensorField& P, const TensorField& g,
                                     const ScalarField& h1, const ScalarField& h2, int trials,
                                     double tol, std::uint64_t seed) {
  if (trials < 1) throw ConstraintError("verify_equivalence needs at least one trial");
  const int n = P.dimension();
  for (int d : {g.dimension(), h1.dimension(), h2.dimension()}) {
    if (d != n) throw DimensionError("verify_equivalence: dimension mismatch");
  }
  const bool delay = g.signature() == SlotSignature::delayed_current;
  const ScalarField h = h1 + h2;
  std::mt19937_64 rng(seed);
  EquivalenceReport report;
  for (int t = 0; t < trials; ++t) {
    const DelayPair p = random_pair(n, rng);
    const Matrix Pm = P(p);
    const Matrix gm = g(p);
    Vector hyp_p, hyp_g, pair_field, single_field;
    if (delay) {
      hyp_p = Pm * h1.grad_current(p);
      hyp_g = gm * h2.grad_delayed(p);
      pair_field = Pm * h2.grad_current(p) + gm * h1.grad_delayed(p);
      single_field = Pm * h.grad_current(p) + gm * h.grad_delayed(p);
    } else {
      hyp_p = Pm * h2.grad_current(p);
      hyp_g = gm * h1.grad_current(p);
      pair_field = Pm * h1.grad_current(p) + gm * h2.grad_current(p);
      single_field = (Pm + gm) * h.grad_current(p);
    }
    const double scale =
        1.0 + pair_field.lpNorm<Eigen::Infinity>() + single_field.lpNorm<Eigen::Infinity>();
    report.hypothesis_residual =
        std::max({report.hypothesis_residual, hyp_p.lpNorm<Eigen::Infinity>() / scale,
                  hyp_g.lpNorm<Eigen::Infinity>() / scale});
    report.equivalence_residual = std::max(
        report.equivalence_residual, (pair_field - single_field).lpNorm<Eigen::Infinity>() / scale);
  }
  report.hypothesis_ok = report.hypothesis_residual <= tol;
  report.equivalence_ok = report.equivalence_residual <= tol;
  report.pass = report.hypothesis_ok && report.equivalence_ok;
  return report;
}

}  // namespace metriplex
