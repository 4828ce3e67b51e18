// Acceptance driver: `acceptance N` evaluates criterion N and prints one
// PASS/FAIL line per criterion (plus indented detail lines). Exit status is
// 0 on PASS.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "metriplex/bracket.hpp"
#include "metriplex/catalog.hpp"
#include "metriplex/cli.hpp"
#include "metriplex/dde.hpp"
#include "metriplex/diagnostics.hpp"
#include "metriplex/revisited.hpp"

using namespace metriplex;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 20240611;
const Triple kA{0.6, 0.4, 0.2};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

double sup(const Vector& v) { return v.lpNorm<Eigen::Infinity>(); }
double sup(const Matrix& m) { return m.lpNorm<Eigen::Infinity>(); }

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
  void note(const std::string& what) { details.push_back("note " + what); }
};

// ---------------------------------------------------------------------------
// Hand transcriptions of the closed forms, kept independent of the library.

Matrix g_table_oracle(const Vector& x) {
  const double a1 = kA[0], a2 = kA[1], a3 = kA[2];
  const double x1 = x[0], x2 = x[1], x3 = x[2];
  Matrix g(3, 3);
  g(0, 0) = -a2 * a2 * x2 * x2 - a3 * a3 * x3 * x3;
  g(1, 1) = -a1 * a1 * x1 * x1 - a3 * a3 * x3 * x3;
  g(2, 2) = -a1 * a1 * x1 * x1 - a2 * a2 * x2 * x2;
  g(0, 1) = g(1, 0) = a1 * a2 * x1 * x2;
  g(0, 2) = g(2, 0) = a1 * a3 * x1 * x3;
  g(1, 2) = g(2, 1) = a2 * a3 * x2 * x3;
  return g;
}

Vector revisited_display_oracle(const Vector& x) {
  const double a1 = kA[0], a2 = kA[1], a3 = kA[2];
  const double x1 = x[0], x2 = x[1], x3 = x[2];
  Vector X(3);
  X[0] = (a2 - a3) * x2 * x3 + a2 * (a1 - a2) * x1 * x2 * x2 + a3 * (a1 - a3) * x1 * x3 * x3;
  X[1] = (a3 - a1) * x1 * x3 + a3 * (a2 - a3) * x2 * x3 * x3 + a1 * (a2 - a1) * x2 * x1 * x1;
  X[2] = (a1 - a2) * x1 * x2 + a1 * (a3 - a1) * x3 * x1 * x1 + a2 * (a3 - a1) * x3 * x2 * x2;
  return X;
}

// P∇h1 + g∇h2 with g from the table: the same system with every coefficient
// expanded by hand.
Vector revisited_expanded_oracle(const Vector& x) {
  const double a1 = kA[0], a2 = kA[1], a3 = kA[2];
  const double x1 = x[0], x2 = x[1], x3 = x[2];
  Vector X(3);
  X[0] = (a2 - a3) * x2 * x3 + a2 * (a1 - a2) * x1 * x2 * x2 + a3 * (a1 - a3) * x1 * x3 * x3;
  X[1] = (a3 - a1) * x1 * x3 + a3 * (a2 - a3) * x2 * x3 * x3 + a1 * (a2 - a1) * x2 * x1 * x1;
  X[2] = (a1 - a2) * x1 * x2 + a1 * (a3 - a1) * x3 * x1 * x1 + a2 * (a3 - a2) * x3 * x2 * x2;
  return X;
}

// Three-wave with delay: X^i = s_i γ_i x̃^j x̃^k.
Vector three_wave_delay_oracle(const Vector& d) {
  return (Vector(3) << d[1] * d[2], d[0] * d[2], -2.0 * d[0] * d[1]).finished();
}

// x'(t) = -x(t - 1), x = 1 on [-1, 0], by the method of steps in exact
// polynomial arithmetic.
class LinearDelayOracle {
 public:
  explicit LinearDelayOracle(int intervals) {
    std::vector<double> prev{1.0};
    for (int k = 0; k < intervals; ++k) {
      const double start = eval(prev, k == 0 ? 0.0 : 1.0);
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
    return eval(pieces_[k], t - static_cast<double>(k));
  }

 private:
  static double eval(const std::vector<double>& c, double s) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * s + *it;
    return acc;
  }
  std::vector<std::vector<double>> pieces_;
};

std::vector<DelayPair> sample_points(int n, int count) {
  std::mt19937_64 rng(kSeed);
  std::vector<DelayPair> pts;
  for (int i = 0; i < count; ++i) pts.push_back(random_pair(n, rng));
  return pts;
}

// ---------------------------------------------------------------------------

Outcome criterion_1() {
  Outcome o;
  const TensorField P(
      "P", 3, [](const DelayPair& p) { return forms::cross_matrix(p.current); }, Symmetry::skew,
      SlotSignature::current_current);
  const RevisitedSystem rs =
      build_revisited_system(P, forms::rigid_body_hamiltonian(kA), forms::rigid_body_casimir(),
                             Variant::outer_product, Mode::static_mode);
  double dg = 0.0, dx_display = 0.0, dx_expanded = 0.0;
  Vector per_component = Vector::Zero(3);
  for (const auto& p0 : sample_points(3, 100)) {
    const DelayPair p = DelayPair::diagonal(p0.current);
    dg = std::max(dg, sup(Matrix(rs.spec.g(p) - g_table_oracle(p.current))));
    const Vector X = evaluate_field(rs.spec, p);
    const Vector diff = (X - revisited_display_oracle(p.current)).cwiseAbs();
    per_component = per_component.cwiseMax(diff);
    dx_display = std::max(dx_display, sup(diff));
    dx_expanded = std::max(dx_expanded, sup(Vector(X - revisited_expanded_oracle(p.current))));
  }
  o.require(dg <= 1e-12, "g table, max |g - g_table| = " + sci(dg));
  o.require(dx_display <= 1e-12, "revisited system as displayed, max |X - X_display| = " + sci(dx_display) +
                                     " (per component " + sci(per_component[0]) + ", " +
                                     sci(per_component[1]) + ", " + sci(per_component[2]) + ")");
  o.note("with the third coefficient a2(a3 - a2) the deviation is " + sci(dx_expanded));
  return o;
}

Outcome criterion_2() {
  Outcome o;
  struct Case {
    std::string label;
    RevisitInputs in;
  };
  std::vector<Case> cases;
  for (const char* name : {"rigid-body", "example-4-5"}) {
    for (const auto& in : make_entry(name).revisit_inputs) {
      cases.push_back({std::string(name) + " " + to_string(in.mode), in});
    }
  }
  for (const auto& c : cases) {
    for (Variant v : {Variant::outer_product, Variant::annihilator}) {
      const RevisitedSystem rs = build_revisited_system(c.in.P, c.in.h1, c.in.h2, v, c.in.mode);
      const AnnihilationReport r = check_annihilation(rs, 1000, 1e-12, kSeed);
      o.require(r.pass && r.max_residual <= 1e-12 && r.max_left_residual <= 1e-12,
                c.label + " " + to_string(v) + ": right " + sci(r.max_residual) + ", left " +
                    sci(r.max_left_residual));
    }
  }
  return o;
}

Outcome criterion_3() {
  Outcome o;
  LawCheckOptions opt;
  opt.trials = 200;
  opt.tol = 1e-8;
  opt.seed = kSeed;
  for (const auto& name : catalog_names()) {
    const CatalogEntry e = make_entry(name);
    const LawReport r = verify_bracket_laws(e.spec.P, e.spec.g, opt);
    o.require(r.pass && r.max_residual <= 1e-8, name + ": max residual " + sci(r.max_residual));
  }
  LawCheckOptions faulty = opt;
  faulty.fault = LawFault::drop_metric_term;
  const CatalogEntry e = make_entry("revisited-rigid-body");
  const LawReport r = verify_bracket_laws(e.spec.P, e.spec.g, faulty);
  o.require(!r.pass, "planted violation detected, residual " + sci(r.max_residual));
  return o;
}

Outcome criterion_4() {
  Outcome o;
  const FieldFn f = [](const DelayPair& p) { return Vector(-p.delayed); };
  const auto phi = HistoryFunction::constant(Vector::Ones(1), 1.0);
  IntegrationConfig cfg;
  cfg.tau = 1.0;
  cfg.t_end = 2.0;
  cfg.steps_per_delay = 100;
  const double x2 = integrate(f, phi, cfg).eval(2.0)[0];
  o.require(std::abs(x2 + 0.5) <= 1e-10, "x(2) = " + std::to_string(x2) + ", error " + sci(std::abs(x2 + 0.5)));

  const LinearDelayOracle exact(12);
  std::vector<IntegrationConfig> configs;
  for (int m : {10, 20, 40, 80}) {
    IntegrationConfig c;
    c.tau = 1.0;
    c.t_end = 10.0;
    c.steps_per_delay = m;
    configs.push_back(c);
  }
  const ConvergenceReport r =
      convergence_order(f, phi, configs, [&](double t) { return Vector(Vector::Constant(1, exact(t))); });
  std::string errs;
  for (double e : r.errors) errs += " " + sci(e);
  o.require(r.order && *r.order >= 3.5,
            "order over m = 10..80 at t = 10: " + (r.order ? std::to_string(*r.order) : "n/a") + " (errors" +
                errs + ")");
  return o;
}

Outcome criterion_5() {
  Outcome o;
  const auto drift = [](const CatalogEntry& e, const ScalarField& f, int m) {
    IntegrationConfig cfg;
    cfg.tau = 0.5;
    cfg.t_end = 20.0;
    cfg.steps_per_delay = m;
    const auto phi = HistoryFunction::constant((Vector(3) << 0.5, 0.5, 1.0).finished(), cfg.tau);
    return first_integral_drift(integrate(e.spec, phi, cfg), f, cfg.tau).max_drift;
  };
  struct Target {
    std::string system;
    std::string label;
  };
  for (const Target& t : {Target{"rigid-body-delay-1d", "h1"}, Target{"rigid-body-delay-1d", "h2"},
                          Target{"rigid-body-delay-3d", "H"}}) {
    const CatalogEntry e = make_entry(t.system);
    const ScalarField* f = nullptr;
    for (const auto& inv : e.invariants) {
      if (inv.label == t.label) f = &inv.field;
    }
    const double d50 = drift(e, *f, 50);
    const double d100 = drift(e, *f, 100);
    const double ratio = d100 > 0.0 ? d50 / d100 : INFINITY;
    o.require(d50 <= 1e-6, t.system + " " + t.label + ": drift at m = 50 is " + sci(d50));
    o.require(ratio >= 12.0 && ratio <= 20.0,
              t.system + " " + t.label + ": drift ratio m = 50 -> 100 is " + sci(ratio) + " (" + sci(d50) + " / " +
                  sci(d100) + ")");
  }
  // At the default history the weighted square drifts at roundoff level, so
  // the ratio above is noise. A larger history makes the truncation error
  // visible.
  const CatalogEntry e = make_entry("rigid-body-delay-3d");
  const auto big = [&](int m) {
    IntegrationConfig cfg;
    cfg.tau = 0.5;
    cfg.t_end = 20.0;
    cfg.steps_per_delay = m;
    const auto phi = HistoryFunction::constant((Vector(3) << 2.0, 2.0, 4.0).finished(), cfg.tau);
    return first_integral_drift(integrate(e.spec, phi, cfg), e.invariants.front().field, cfg.tau).max_drift;
  };
  const double b50 = big(50), b100 = big(100);
  o.note("rigid-body-delay-3d H from history (2, 2, 4): drift " + sci(b50) + " -> " + sci(b100) + ", ratio " +
         sci(b50 / b100));
  return o;
}

Outcome criterion_6() {
  Outcome o;
  const CatalogEntry wave = make_entry("three-wave-delay");
  const CatalogEntry ex = make_entry("example-4-5");
  double wave_res = 0.0, wave_oracle = 0.0, casimir_res = 0.0;
  for (const auto& p : sample_points(3, 100)) {
    const Vector gh = wave.spec.g(p) * wave.spec.h1.grad_delayed(p);
    wave_res = std::max(wave_res, sup(Vector(wave.field(p) - gh)));
    wave_oracle = std::max(wave_oracle, sup(Vector(gh - three_wave_delay_oracle(p.delayed))));
    // ∇_x of x1²/2 + x̃2 x2 + x3²/2 is (x1, x̃2, x3).
    const Vector grad = (Vector(3) << p.current[0], p.delayed[1], p.current[2]).finished();
    casimir_res = std::max(casimir_res, sup(Vector(ex.spec.P(p) * grad)));
    casimir_res = std::max(casimir_res, sup(Vector(ex.spec.P(p) * ex.spec.h1.grad_current(p))));
  }
  o.require(wave_res <= 1e-12, "three-wave-delay X = g grad~ h: " + sci(wave_res));
  o.require(wave_oracle <= 1e-12, "three-wave-delay g grad~ h against the closed form: " + sci(wave_oracle));
  o.require(casimir_res <= 1e-12, "example-4-5 P(c, f) = 0: " + sci(casimir_res));
  return o;
}

Outcome criterion_7() {
  Outcome o;
  for (const auto& name : catalog_names()) {
    const CatalogEntry e = make_entry(name);
    if (!e.is_delay() || !e.static_counterpart) continue;
    const CatalogEntry s = make_entry(*e.static_counterpart);
    double worst = 0.0;
    for (const auto& p0 : sample_points(3, 100)) {
      const DelayPair d = DelayPair::diagonal(p0.current);
      worst = std::max(worst, sup(Vector(e.field(d) - s.field(d))));
    }
    o.require(worst <= 1e-12, name + " on x~ = x vs " + *e.static_counterpart + ": " + sci(worst));
  }

  const Vector x0 = (Vector(3) << 0.5, 0.5, 1.0).finished();
  const double h = 2.5e-4;
  IntegrationConfig ode;
  ode.t_end = 10.0;
  ode.step = h;
  const DenseTrajectory reference =
      integrate(make_entry("revisited-rigid-body").spec, HistoryFunction::constant(x0, 0.0), ode);
  const CatalogEntry delayed = make_entry("revisited-rigid-body-delay");
  const auto sup_error = [&](double tau) {
    IntegrationConfig cfg;
    cfg.tau = tau;
    cfg.t_end = 10.0;
    cfg.steps_per_delay = static_cast<int>(std::llround(tau / h));
    const DenseTrajectory traj = integrate(delayed.spec, HistoryFunction::constant(x0, tau), cfg);
    double worst = 0.0;
    for (std::size_t k = 0; k < traj.knot_count(); ++k) {
      worst = std::max(worst, sup(Vector(traj.state(k) - reference.state(k))));
    }
    return worst;
  };
  const double e1 = sup_error(1e-3);
  const double e2 = sup_error(5e-4);
  const double ratio = e1 / e2;
  o.require(ratio >= 1.7 && ratio <= 2.3, "sup error on [0, 10]: tau = 1e-3 " + sci(e1) + ", tau = 5e-4 " +
                                              sci(e2) + ", ratio " + sci(ratio));
  return o;
}

struct PipelineResult {
  bool ran = true;
  bool schema = false;
  bool svg = false;
  bool identical = false;
  std::size_t rows = 0;
  std::string error;
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

// Runs `name` twice through cmd_run with the given end time (CLI default
// when empty) and inspects the outputs.
PipelineResult run_pipeline(const std::string& name, std::optional<double> t_end) {
  const fs::path dir = fs::temp_directory_path() / "metriplex_acceptance";
  fs::create_directories(dir);
  PipelineResult res;
  std::string csv[2], svg[2];
  for (int r = 0; r < 2; ++r) {
    cli::RunOptions opt;
    opt.system = name;
    opt.params = {{"a1", 0.6}, {"a2", 0.4}, {"a3", 0.2}};
    opt.t_end = t_end;
    const std::string stem = name + "_" + (t_end ? std::to_string(*t_end) : "default") + "_" + std::to_string(r);
    const fs::path c = dir / (stem + ".csv");
    const fs::path s = dir / (stem + ".svg");
    fs::remove(c);
    fs::remove(s);
    opt.out = c.string();
    opt.svg = s.string();
    std::ostringstream out, err;
    const int code = cli::run_guarded([&] { return cli::cmd_run(opt, out, err); }, err);
    if (code != cli::kOk) {
      res.ran = false;
      res.error = "exit " + std::to_string(code) + ": " + err.str();
      while (!res.error.empty() && res.error.back() == '\n') res.error.pop_back();
      for (char& ch : res.error) {
        if (ch == '\n') ch = ';';
      }
      return res;
    }
    csv[r] = slurp(c);
    svg[r] = slurp(s);
  }

  // '#' metadata, header t,x1,x2,x3, finite rows with increasing t.
  bool schema = csv[0].rfind("# system = " + name + "\n", 0) == 0;
  std::istringstream in(csv[0]);
  cli::CsvTable table;
  try {
    table = cli::read_csv(in);
  } catch (const std::exception&) {
    schema = false;
  }
  schema = schema && table.header == std::vector<std::string>{"t", "x1", "x2", "x3"} && table.rows.size() > 1;
  for (std::size_t i = 0; schema && i < table.rows.size(); ++i) {
    schema = table.rows[i].size() == 4 && (i == 0 || table.rows[i][0] > table.rows[i - 1][0]);
    for (double v : table.rows[i]) schema = schema && std::isfinite(v);
  }
  res.schema = schema;
  res.rows = table.rows.size();
  res.svg = svg[0].find("<svg") != std::string::npos &&
            svg[0].find("xmlns=\"http://www.w3.org/2000/svg\"") != std::string::npos &&
            svg[0].find("<polyline") != std::string::npos && svg[0].size() > 7 &&
            svg[0].compare(svg[0].size() - 7, 7, "</svg>\n") == 0;
  res.identical = csv[0] == csv[1] && svg[0] == svg[1];
  return res;
}

Outcome criterion_8() {
  Outcome o;
  for (const std::string name : {"example-4-5", "revisited-example-4-5"}) {
    const PipelineResult r = run_pipeline(name, std::nullopt);
    o.require(r.ran, name + ": cmd_run with default settings completes" + (r.ran ? "" : " (" + r.error + ")"));
    if (!r.ran) {
      // Shorter horizon, to show the rest of the pipeline in isolation.
      const PipelineResult s = run_pipeline(name, 40.0);
      o.note(name + " at t_end = 40: " + (s.ran ? "completes" : s.error) + ", schema " + (s.schema ? "ok" : "bad") +
             ", svg " + (s.svg ? "ok" : "bad") + ", rerun " + (s.identical ? "identical" : "differs"));
      continue;
    }
    o.require(r.schema, name + ": CSV schema, " + std::to_string(r.rows) + " rows");
    o.require(r.svg, name + ": SVG structure");
    o.require(r.identical, name + ": byte-identical on rerun");
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria{criterion_1, criterion_2, criterion_3, criterion_4,
                                                       criterion_5, criterion_6, criterion_7, criterion_8};
  std::vector<int> which;
  if (argc > 1) {
    which.push_back(std::atoi(argv[1]));
  } else {
    for (int i = 1; i <= 8; ++i) which.push_back(i);
  }
  bool all = true;
  for (int n : which) {
    if (n < 1 || n > 8) {
      std::cerr << "criterion must be 1..8\n";
      return 2;
    }
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[static_cast<std::size_t>(n - 1)]();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %d: %s (%.2f s)\n", n, o.pass ? "PASS" : "FAIL", secs);
    for (const auto& d : o.details) std::printf("    %s\n", d.c_str());
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
