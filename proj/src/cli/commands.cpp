#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include <json.hpp>

#include "metriplex/bracket.hpp"
#include "metriplex/catalog.hpp"
#include "metriplex/cli.hpp"
#include "metriplex/diagnostics.hpp"

namespace metriplex::cli {

namespace {

constexpr double kDefaultTau = 0.5;
constexpr double kDefaultTEnd = 100.0;
constexpr int kDefaultStepsPerDelay = 50;
constexpr double kDefaultStep = 1e-2;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string vec(const Vector& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_number(v[i]);
  return s + ")";
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConstraintError("cannot write '" + path + "'");
  f << content;
  if (!f) throw ConstraintError("failed writing '" + path + "'");
}

std::string default_history_values(int dimension) {
  if (dimension == 3) return "0.5,0.5,1.0";
  std::vector<std::string> ones(static_cast<std::size_t>(dimension), "0.5");
  return join(ones, ",");
}

}  // namespace

// ---------------------------------------------------------------------------

int cmd_list(std::ostream& out, const std::string& filter) {
  std::vector<std::string> names;
  for (const auto& n : catalog_names()) {
    if (n.find(filter) != std::string::npos) names.push_back(n);
  }
  out << std::left << std::setw(28) << "name" << std::setw(5) << "dim" << std::setw(8) << "kind"
      << std::setw(46) << "parameters" << "invariants\n";
  for (const auto& n : names) {
    const CatalogEntry e = make_entry(n);
    std::vector<std::string> params;
    for (const auto& p : e.parameters) {
      std::ostringstream s;
      s << p.name << "=" << p.value;
      params.push_back(s.str());
    }
    std::vector<std::string> inv;
    for (const auto& i : e.invariants) inv.push_back(i.label + (i.first_integral ? "" : " (pointwise)"));
    out << std::left << std::setw(28) << n << std::setw(5) << e.dimension << std::setw(8)
        << (e.is_delay() ? "delay" : "static") << std::setw(46) << join(params, " ")
        << (inv.empty() ? "-" : join(inv, ", ")) << '\n';
  }
  if (names.empty()) out << "(no systems match '" << filter << "')\n";
  return kOk;
}

// ---------------------------------------------------------------------------

int cmd_run(const RunOptions& o, std::ostream& out, std::ostream& err) {
  if (!o.system) throw ConstraintError("no system given (use --system or 'system =' in a config)");
  const CatalogEntry entry = make_entry(*o.system, o.params);
  for (const auto& w : entry.warnings) err << w << '\n';

  std::vector<std::string> meta;
  auto mark = [](bool is_default) { return is_default ? " (default)" : ""; };
  meta.push_back("system = " + entry.name);
  meta.push_back("description = " + entry.description);
  FieldFn field = as_field_fn(entry.spec);
  if (o.literal_display) {
    if (!entry.literal_field) {
      throw ConstraintError("system '" + entry.name + "' has no separate printed closed form");
    }
    field = entry.literal_field;
    meta.push_back("field = printed closed form");
  } else {
    meta.push_back("field = constructed");
  }
  for (const auto& p : entry.parameters) {
    meta.push_back("param." + p.name + " = " + format_number(p.value) + mark(!o.params.count(p.name)));
  }

  IntegrationConfig cfg;
  if (entry.is_delay()) {
    cfg.tau = o.tau.value_or(kDefaultTau);
    meta.push_back("tau = " + format_number(cfg.tau) + mark(!o.tau));
  } else {
    cfg.tau = 0.0;
    meta.push_back(std::string("tau = 0 (static system") + (o.tau ? "; --tau ignored)" : ")"));
  }
  cfg.t_end = o.t_end.value_or(kDefaultTEnd);
  cfg.steps_per_delay = o.steps_per_delay.value_or(kDefaultStepsPerDelay);
  cfg.step = o.step.value_or(kDefaultStep);
  cfg.record_every = o.record_every.value_or(1);
  cfg.validate();

  const std::string kind = o.history_kind.value_or("constant");
  const bool default_history = !o.history_kind && !o.history_values;
  if (o.history_kind && !o.history_values) throw ConstraintError("history.kind given without history.values");
  const std::string values = o.history_values.value_or(default_history_values(entry.dimension));
  const HistoryFunction phi = parse_history(kind, values, entry.dimension, cfg.tau);
  meta.push_back("history = " + phi.description() + mark(default_history));
  meta.push_back("t_end = " + format_number(cfg.t_end) + mark(!o.t_end));
  if (cfg.tau > 0.0) {
    meta.push_back("steps_per_delay = " + std::to_string(cfg.steps_per_delay) + mark(!o.steps_per_delay));
  }
  meta.push_back("step = " + format_number(cfg.step_size()) + mark(cfg.tau > 0.0 ? !o.steps_per_delay : !o.step));
  meta.push_back("record_every = " + std::to_string(cfg.record_every) + mark(!o.record_every));
  meta.push_back("seed = " + std::to_string(o.seed.value_or(kDefaultSeed)) + mark(!o.seed));
  meta.push_back("integrator = RK4, method of steps, cubic Hermite dense output");

  DenseTrajectory traj = [&] {
    try {
      return integrate(field, phi, cfg);
    } catch (const BlowUpError& e) {
      err << "blow-up at t = " << format_number(e.time()) << '\n';
      throw;
    }
  }();

  CsvTable table;
  table.metadata = meta;
  table.header.push_back("t");
  for (int i = 1; i <= entry.dimension; ++i) table.header.push_back("x" + std::to_string(i));
  for (std::size_t k : traj.recorded_indices(cfg.record_every)) {
    std::vector<double> row{traj.knot_time(k)};
    for (Eigen::Index i = 0; i < traj.state(k).size(); ++i) row.push_back(traj.state(k)[i]);
    table.rows.push_back(std::move(row));
  }
  const std::string csv_path = o.out.value_or(entry.name + ".csv");
  {
    std::ostringstream csv;
    write_csv(csv, table);
    write_file(csv_path, csv.str());
  }

  for (const auto& m : meta) out << m << '\n';
  out << "knots = " << traj.knot_count() << ", rows written = " << table.rows.size() << '\n';
  out << "final state = " << vec(traj.state(traj.knot_count() - 1)) << '\n';
  if (!entry.invariants.empty()) {
    out << "invariant drift (max |f(t) - f(0)| at knots):\n";
    for (const auto& inv : entry.invariants) {
      const DriftReport d = first_integral_drift(traj, inv.field, cfg.tau);
      out << "  " << std::left << std::setw(8) << inv.label << std::setw(16)
          << (inv.first_integral ? "first integral" : "pointwise") << sci(d.max_drift) << '\n';
    }
  }
  if (!entry.diagnostic_quantities.empty()) {
    out << "monitored quantities:\n";
    for (const auto& q : entry.diagnostic_quantities) {
      const DriftReport d = first_integral_drift(traj, q.field, cfg.tau);
      const DissipationReport r = dissipation_monitor(traj, q.field, cfg.tau);
      out << "  " << std::left << std::setw(8) << q.label << "drift " << sci(d.max_drift)
          << "  max |d/dt| " << sci(r.max_abs_rate) << "  trend " << to_string(r.trend) << '\n';
    }
  }
  out << "wrote " << csv_path << '\n';

  if (o.svg) {
    const auto axes = parse_axes(o.axes.value_or(entry.dimension >= 3 ? "x1,x2,x3" : "x1,x2"));
    write_file(*o.svg, render_svg(table, axes, entry.name));
    out << "wrote " << *o.svg << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------------------

namespace {

struct CheckLine {
  std::string system;
  std::string check;
  double residual;
  double tolerance;
  bool informational;
  bool pass() const { return informational || residual <= tolerance; }
};

void revisit_checks(const CatalogEntry& entry, const CheckOptions& opt, std::vector<CheckLine>& lines) {
  for (const auto& in : entry.revisit_inputs) {
    for (Variant v : {Variant::outer_product, Variant::annihilator}) {
      RevisitOptions ro;
      ro.seed = opt.seed;
      const RevisitedSystem rs = build_revisited_system(in.P, in.h1, in.h2, v, in.mode, ro);
      const std::string prefix = "revisit:" + to_string(in.mode) + ":" + to_string(v) + ":";
      const AnnihilationReport a = check_annihilation(rs, opt.samples, 1e-12, opt.seed);
      lines.push_back({entry.name, prefix + "annihilation", std::max(a.max_residual, a.max_left_residual),
                       1e-12, false});
      if (v == Variant::outer_product) {
        lines.push_back({entry.name, prefix + "casimir-hypothesis", rs.casimir_residual, 1e-10, false});
        std::mt19937_64 rng(opt.seed);
        double dg = 0.0, dx = 0.0;
        for (int s = 0; s < opt.samples; ++s) {
          const DelayPair p = random_pair(entry.dimension, rng);
          if (in.reference_g) dg = std::max(dg, (rs.spec.g(p) - (*in.reference_g)(p)).lpNorm<Eigen::Infinity>());
          if (in.reference_field) {
            dx = std::max(dx, (evaluate_field(rs.spec, p) - in.reference_field(p)).lpNorm<Eigen::Infinity>());
          }
        }
        if (in.reference_g) lines.push_back({entry.name, prefix + "reference-g", dg, 1e-12, true});
        if (in.reference_field) lines.push_back({entry.name, prefix + "reference-field", dx, 1e-12, true});
      }
    }
  }
}

void entry_checks(const CatalogEntry& entry, const CheckOptions& opt, std::vector<CheckLine>& lines) {
  std::vector<std::pair<std::string, ScalarField>> functions;
  functions.emplace_back("h1", entry.spec.h1);
  functions.emplace_back("h2", entry.spec.h2);
  for (const auto& i : entry.invariants) functions.emplace_back(i.label, i.field);
  for (const auto& q : entry.diagnostic_quantities) functions.emplace_back(q.label, q.field);
  for (const auto& [label, f] : functions) {
    const GradientCheckReport g = check_gradient(f, opt.samples, 1e-6, opt.seed);
    lines.push_back({entry.name, "gradient:" + label, g.max_rel_error, 1e-6, false});
  }
  for (const TensorField* t : {&entry.spec.P, &entry.spec.g}) {
    const SymmetryReport s = check_symmetry(*t, opt.samples, 1e-12, opt.seed);
    lines.push_back({entry.name, std::string("symmetry:") + (t == &entry.spec.P ? "P" : "g") + ":" +
                                     to_string(s.declared),
                     s.max_defect, 1e-12, false});
  }
  LawCheckOptions lo;
  lo.seed = opt.seed;
  lo.fault = opt.fault == PlantedFault::bracket_law ? LawFault::drop_metric_term : LawFault::none;
  const LawReport law = verify_bracket_laws(entry.spec.P, entry.spec.g, lo);
  lines.push_back({entry.name, "bracket-law:product-rule", law.residual_product_rule, lo.tol, false});
  lines.push_back({entry.name, "bracket-law:scaled-pair", law.residual_scaled_pair, lo.tol, false});
  lines.push_back({entry.name, "bracket-law:diagonal-pair", law.residual_diagonal_pair, lo.tol, false});

  const StructuralReport sr = structural_residual(entry, opt.samples, opt.seed);
  for (const auto& c : sr.checks) {
    lines.push_back({entry.name, "structural:" + c.name, c.max_residual, kStructuralTolerance, c.informational});
  }
  if (entry.revisited) {
    const AnnihilationReport a = check_annihilation(*entry.revisited, opt.samples, 1e-12, opt.seed);
    lines.push_back({entry.name, "annihilation", std::max(a.max_residual, a.max_left_residual), 1e-12, false});
  }
  revisit_checks(entry, opt, lines);
}

}  // namespace

int cmd_check(const std::string& scope, std::ostream& out, std::ostream& err, const CheckOptions& opt) {
  std::vector<std::string> names;
  if (scope == "all") {
    names = catalog_names();
  } else {
    make_entry(scope);  // throws UnknownNameError
    names = {scope};
  }
  std::vector<CheckLine> lines;
  for (const auto& n : names) {
    if (opt.fault == PlantedFault::display_typo && n == "three-wave-delay") {
      entry_checks(three_wave_delay(kDefaultSigns, kDefaultGammas, 1e-6), opt, lines);
    } else {
      entry_checks(make_entry(n), opt, lines);
    }
  }

  nlohmann::ordered_json report;
  report["scope"] = scope;
  report["planted_fault"] = opt.fault == PlantedFault::none          ? "none"
                            : opt.fault == PlantedFault::display_typo ? "display-typo"
                                                                      : "bracket-law";
  report["samples"] = opt.samples;
  report["seed"] = opt.seed;
  bool pass = true;
  int failures = 0;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& l : lines) {
    nlohmann::ordered_json j;
    j["system"] = l.system;
    j["check"] = l.check;
    j["residual"] = l.residual;
    j["tolerance"] = l.tolerance;
    j["informational"] = l.informational;
    j["pass"] = l.pass();
    checks.push_back(std::move(j));
    if (!l.pass()) {
      pass = false;
      ++failures;
      err << "FAIL " << l.system << " " << l.check << " residual=" << sci(l.residual)
          << " tolerance=" << sci(l.tolerance) << '\n';
    }
  }
  report["pass"] = pass;
  report["failures"] = failures;
  report["checks"] = std::move(checks);
  out << report.dump(2) << '\n';
  return pass ? kOk : kCheckFailure;
}

// ---------------------------------------------------------------------------

void revisit_report(const std::string& label, const RevisitInputs& in, Variant variant,
                    std::uint64_t seed, std::ostream& out) {
  RevisitOptions ro;
  ro.seed = seed;
  const RevisitedSystem rs = build_revisited_system(in.P, in.h1, in.h2, variant, in.mode, ro);
  const int n = rs.spec.dimension;
  const bool delay = in.mode == Mode::delay_mode;
  out << "revisited system: " << label << " (" << to_string(variant) << ", " << to_string(in.mode) << ")\n";
  out << "P = " << in.P.name() << ", h1 = " << in.h1.name() << ", h2 = " << in.h2.name() << '\n';
  out << "g = " << rs.spec.g.name() << ", declared " << to_string(rs.spec.g.symmetry()) << ", "
      << to_string(rs.spec.g.signature()) << '\n';
  out << "field = " << (delay ? "P grad_x h2 + g grad_x~ h1" : "P grad h1 + g grad h2") << '\n';

  const AnnihilationReport a = check_annihilation(rs, 1000, 1e-12, seed);
  out << "annihilation residual (1000 points, relative): right " << sci(a.max_residual) << ", left "
      << sci(a.max_left_residual) << (a.pass ? "  ok" : "  FAIL") << '\n';
  out << "casimir hypothesis residual: " << sci(rs.casimir_residual) << '\n';

  std::mt19937_64 rng(seed);
  out << "sampled g components:\n";
  for (int s = 0; s < 3; ++s) {
    const DelayPair p = random_pair(n, rng);
    const DelayPair q = delay ? p : DelayPair::diagonal(p.current);
    if (delay) out << "  x~ = " << vec(q.delayed) << ", ";
    else out << "  ";
    out << "x = " << vec(q.current) << '\n';
    const Matrix g = rs.spec.g(q);
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      out << "    [";
      for (Eigen::Index j = 0; j < g.cols(); ++j) out << (j ? ", " : "") << format_number(g(i, j));
      out << "]\n";
    }
  }

  if (in.reference_g || in.reference_field) {
    double dg = 0.0;
    Vector dx = Vector::Zero(n);
    std::mt19937_64 ref_rng(seed);
    for (int s = 0; s < 100; ++s) {
      const DelayPair p0 = random_pair(n, ref_rng);
      const DelayPair p = delay ? p0 : DelayPair::diagonal(p0.current);
      if (in.reference_g) dg = std::max(dg, (rs.spec.g(p) - (*in.reference_g)(p)).lpNorm<Eigen::Infinity>());
      if (in.reference_field) {
        dx = dx.cwiseMax((evaluate_field(rs.spec, p) - in.reference_field(p)).cwiseAbs());
      }
    }
    out << "diff against the printed closed forms (100 points):\n";
    if (in.reference_g) out << "  g: max |g - g_printed| = " << sci(dg) << '\n';
    if (in.reference_field) {
      for (Eigen::Index i = 0; i < dx.size(); ++i) {
        out << "  X" << (i + 1) << ": max |X - X_printed| = " << sci(dx[i]) << '\n';
      }
    }
  }
  if (!rs.diagnostics.empty()) {
    out << "diagnostics:\n";
    for (const auto& d : rs.diagnostics) out << "  " << d << '\n';
  }
}

int cmd_revisit(const RevisitRequest& req, std::ostream& out, std::ostream& err) {
  const CatalogEntry entry = make_entry(req.system, req.params);
  for (const auto& w : entry.warnings) err << w << '\n';
  const RevisitInputs* chosen = nullptr;
  for (const auto& in : entry.revisit_inputs) {
    if (!req.mode || in.mode == *req.mode) {
      chosen = &in;
      break;
    }
  }
  if (!chosen) {
    std::string msg = "system '" + entry.name + "' has no revisit data";
    if (req.mode) msg += " in " + to_string(*req.mode) + " mode";
    throw ConstraintError(msg);
  }
  std::ostringstream report;
  revisit_report(entry.name, *chosen, req.variant, req.seed, report);
  out << report.str();
  if (req.out) {
    write_file(*req.out, report.str());
    out << "wrote " << *req.out << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------------------

int cmd_plot(const std::string& csv_path, const std::string& axes, const std::string& out_path,
             std::ostream& out, std::ostream&) {
  const CsvTable table = read_csv_file(csv_path);
  const auto names = parse_axes(axes);
  std::string title = csv_path;
  for (const auto& m : table.metadata) {
    if (m.rfind("system = ", 0) == 0) title = m.substr(9);
  }
  write_file(out_path, render_svg(table, names, title));
  out << "wrote " << out_path << '\n';
  return kOk;
}

}  // namespace metriplex::cli
