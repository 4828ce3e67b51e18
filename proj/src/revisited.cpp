#include "metriplex/revisited.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace metriplex {

std::string to_string(Variant v) {
  return v == Variant::annihilator ? "annihilator" : "outer-product";
}

std::string to_string(Mode m) { return m == Mode::static_mode ? "static" : "delay"; }

namespace {

// g^{ij} = row_i col_j off the diagonal, g^{ii} = -Σ_{k≠i} row_k col_k.
// Right contraction with `row` and left contraction with `col` both vanish.
Matrix telescoping(const Vector& row, const Vector& col) {
  const Eigen::Index n = row.size();
  Matrix g = row * col.transpose();
  const double total = row.dot(col);
  for (Eigen::Index i = 0; i < n; ++i) g(i, i) = -(total - row[i] * col[i]);
  return g;
}

void require_same_dimension(const ScalarField& a, const ScalarField& b) {
  if (a.dimension() != b.dimension()) {
    throw DimensionError("'" + a.name() + "' and '" + b.name() + "' differ in dimension");
  }
}

}  // namespace

TensorField build_annihilator_metric(const ScalarField& h1, const ScalarField& h2, Mode mode) {
  require_same_dimension(h1, h2);
  const int n = h1.dimension();
  if (mode == Mode::static_mode) {
    // Σ_j g^{ij} h1_j = h1_i (Σ_{j≠i} h2_j h1_j - Σ_{k≠i} h1_k h2_k) = 0.
    return TensorField(
        "annihilator(" + h1.name() + "," + h2.name() + ")", n,
        [h1, h2](const DelayPair& p) { return telescoping(h1.grad_current(p), h2.grad_current(p)); },
        Symmetry::general, SlotSignature::current_current);
  }
  return TensorField(
      "annihilator-delay(" + h1.name() + "," + h2.name() + ")", n,
      [h1, h2](const DelayPair& p) {
        const Vector H1 = h1.grad_current(p);
        const Vector H2 = h2.grad_current(p);
        // g^{ij} = H_{j1} H_{i2}
        return telescoping(H2, H1);
      },
      Symmetry::general, SlotSignature::delayed_current);
}

TensorField build_outer_product_metric(const ScalarField& h, Mode mode) {
  const int n = h.dimension();
  if (mode == Mode::static_mode) {
    return TensorField(
        "outer(" + h.name() + ")", n,
        [h](const DelayPair& p) {
          const Vector d = h.grad_current(p);
          return telescoping(d, d);
        },
        Symmetry::symmetric, SlotSignature::current_current);
  }
  return TensorField(
      "outer-delay(" + h.name() + ")", n,
      [h](const DelayPair& p) {
        const Vector G = h.grad_current(DelayPair::diagonal(p.delayed));
        const Vector H = h.grad_current(DelayPair::diagonal(p.current));
        return telescoping(G, H);
      },
      Symmetry::mixed_t11, SlotSignature::delayed_current);
}

RevisitedSystem build_revisited_system(const TensorField& P, const ScalarField& h1,
                                       const ScalarField& h2, Variant variant, Mode mode,
                                       const RevisitOptions& options) {
  require_same_dimension(h1, h2);
  if (P.dimension() != h1.dimension()) throw DimensionError("P and Hamiltonians differ in dimension");
  if (P.signature() != SlotSignature::current_current) {
    throw DimensionError("P must act on current-slot covectors");
  }
  if (P.symmetry() != Symmetry::skew) throw ConstraintError("P must be declared skew");

  const bool delay = mode == Mode::delay_mode;
  // The function whose gradient g annihilates, and the Casimir-type function
  // P is expected to annihilate.
  const ScalarField& hamiltonian = delay ? h2 : h1;
  const ScalarField& casimir = delay ? h1 : h2;

  TensorField g = variant == Variant::annihilator ? build_annihilator_metric(h1, h2, mode)
                                                  : build_outer_product_metric(hamiltonian, mode);

  GradientFn annihilated;
  GradientFn left_annihilated;
  if (variant == Variant::annihilator) {
    if (delay) {
      annihilated = [h2](const DelayPair& p) { return h2.grad_current(p); };
      left_annihilated = [h1](const DelayPair& p) { return h1.grad_current(p); };
    } else {
      annihilated = [h1](const DelayPair& p) { return h1.grad_current(p); };
      left_annihilated = [h2](const DelayPair& p) { return h2.grad_current(p); };
    }
  } else if (delay) {
    annihilated = [h2](const DelayPair& p) { return h2.grad_current(DelayPair::diagonal(p.delayed)); };
    left_annihilated = [h2](const DelayPair& p) {
      return h2.grad_current(DelayPair::diagonal(p.current));
    };
  } else {
    annihilated = [h1](const DelayPair& p) { return h1.grad_current(p); };
    left_annihilated = annihilated;
  }

  VectorFieldSpec spec = delay ? VectorFieldSpec::delay(P, g, h1, h2)
                               : VectorFieldSpec::almost(P, g, h1, h2);

  RevisitedSystem out{std::move(spec), variant, mode, std::move(annihilated),
                      std::move(left_annihilated), 0.0, {}};

  std::mt19937_64 rng(options.seed);
  int degenerate = 0;
  int off_domain = 0;
  double asymmetry = 0.0;
  for (int s = 0; s < options.samples; ++s) {
    const DelayPair p = random_pair(P.dimension(), rng);
    const Matrix Pm = P(p);
    const Vector c = casimir.grad_current(p);
    const double scale = 1.0 + Pm.lpNorm<Eigen::Infinity>() * c.lpNorm<Eigen::Infinity>();
    out.casimir_residual =
        std::max(out.casimir_residual, (Pm * c).lpNorm<Eigen::Infinity>() / scale);
    const Vector source = hamiltonian.grad_current(p);
    if (source.lpNorm<Eigen::Infinity>() == 0.0) ++degenerate;
    if (delay && (source.array() == 0.0).any()) ++off_domain;
    if (variant == Variant::annihilator) {
      const Matrix gm = out.spec.g(p);
      asymmetry = std::max(asymmetry, (gm - gm.transpose()).cwiseAbs().maxCoeff());
    }
  }

  const std::string hyp = delay ? "P * grad_x(" + h1.name() + ")" : "P * grad(" + h2.name() + ")";
  if (out.casimir_residual > options.tol) {
    std::ostringstream msg;
    msg << "warning: Casimir hypothesis " << hyp << " = 0 violated (relative residual "
        << out.casimir_residual << ")";
    if (options.strict_casimir) throw ConstraintError(msg.str());
    out.diagnostics.push_back(msg.str());
  }
  if (degenerate == options.samples) {
    out.diagnostics.push_back("warning: gradient of '" + hamiltonian.name() +
                              "' vanishes at every sample; the constructed tensor is zero");
  } else if (off_domain > 0) {
    std::ostringstream msg;
    msg << "note: a component of grad_x(" << hamiltonian.name() << ") vanishes at " << off_domain
        << " of " << options.samples << " samples (outside the nondegenerate domain)";
    out.diagnostics.push_back(msg.str());
  }
  if (variant == Variant::annihilator && asymmetry > options.tol) {
    std::ostringstream msg;
    msg << "note: annihilator tensor is not symmetric (max |g - g^T| = " << asymmetry << ")";
    out.diagnostics.push_back(msg.str());
  }
  return out;
}

AnnihilationReport check_annihilation(const RevisitedSystem& system, int samples, double tol,
                                      std::uint64_t seed) {
  if (samples < 1) throw ConstraintError("check_annihilation needs at least one sample");
  std::mt19937_64 rng(seed);
  AnnihilationReport report;
  for (int s = 0; s < samples; ++s) {
    const DelayPair p = random_pair(system.spec.dimension, rng);
    const Matrix g = system.spec.g(p);
    const double gnorm = g.lpNorm<Eigen::Infinity>();
    const Vector v = system.annihilated(p);
    const double scale = std::max(gnorm * v.lpNorm<Eigen::Infinity>(), 1e-300);
    report.max_residual =
        std::max(report.max_residual, (g * v).lpNorm<Eigen::Infinity>() / scale);
    if (system.left_annihilated) {
      const Vector w = system.left_annihilated(p);
      const double lscale = std::max(gnorm * w.lpNorm<Eigen::Infinity>(), 1e-300);
      report.max_left_residual = std::max(
          report.max_left_residual, (g.transpose() * w).lpNorm<Eigen::Infinity>() / lscale);
    }
  }
  report.pass = report.max_residual <= tol && report.max_left_residual <= tol;
  return report;
}

}  // namespace metriplex
