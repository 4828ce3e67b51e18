// Command-line front end: list, run, check, revisit, plot.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "metriplex/cli.hpp"

namespace cli = metriplex::cli;

int main(int argc, char** argv) {
  CLI::App app{"metriplex: Leibniz and almost-metriplectic systems, with and without delay"};
  app.require_subcommand(1);

  // list
  std::string list_filter;
  auto* list = app.add_subcommand("list", "list catalog systems");
  list->add_option("filter", list_filter, "substring of the system name");

  // run
  std::string config_path;
  std::vector<std::string> run_params;
  cli::RunOptions flags;
  std::string system, history_kind, history_values, out, svg, axes;
  double tau = 0, t_end = 0, step = 0;
  int steps_per_delay = 0, record_every = 0;
  std::uint64_t seed = 0;
  auto* run = app.add_subcommand("run", "integrate a catalog system and write CSV");
  run->add_option("--config", config_path, "key = value configuration file");
  auto* o_system = run->add_option("--system,system", system, "catalog name");
  run->add_option("--param", run_params, "parameter override name=value (repeatable)");
  auto* o_tau = run->add_option("--tau", tau, "delay (ignored for static systems)");
  auto* o_hk = run->add_option("--history-kind", history_kind, "constant | polynomial");
  auto* o_hv = run->add_option("--history-values", history_values, "history data");
  auto* o_tend = run->add_option("--t-end", t_end, "final time");
  auto* o_m = run->add_option("--steps-per-delay", steps_per_delay, "steps per delay interval");
  auto* o_step = run->add_option("--step", step, "step size for static systems");
  auto* o_rec = run->add_option("--record-every", record_every, "keep every k-th knot");
  auto* o_seed = run->add_option("--seed", seed, "seed recorded in the metadata");
  auto* o_out = run->add_option("--out", out, "CSV path (default <system>.csv)");
  auto* o_svg = run->add_option("--svg", svg, "also write an orbit SVG");
  auto* o_axes = run->add_option("--axes", axes, "SVG axes, e.g. x1,x2,x3");
  run->add_flag("--literal-display", flags.literal_display, "integrate the printed closed form");

  // check
  std::string check_scope = "all";
  std::string plant_fault = "none";
  int check_samples = 100;
  auto* check = app.add_subcommand("check", "run the property suite");
  check->add_option("scope", check_scope, "'all' or a system name");
  check->add_option("--plant-fault", plant_fault, "none | display-typo | bracket-law");
  check->add_option("--samples", check_samples, "random points per check");

  // revisit
  cli::RevisitRequest revisit_req;
  std::vector<std::string> revisit_params;
  std::string variant = "outer-product", mode, revisit_out;
  auto* revisit = app.add_subcommand("revisit", "build the revisited system of a catalog entry");
  revisit->add_option("system", revisit_req.system, "catalog name")->required();
  revisit->add_option("--variant", variant, "outer-product | annihilator");
  auto* o_mode = revisit->add_option("--mode", mode, "static | delay");
  auto* o_rout = revisit->add_option("--out", revisit_out, "also write the report here");
  revisit->add_option("--param", revisit_params, "parameter override name=value");

  // plot
  std::string plot_csv, plot_axes = "x1,x2", plot_out;
  auto* plot = app.add_subcommand("plot", "project a CSV trajectory to SVG");
  plot->add_option("csv", plot_csv, "trajectory CSV")->required();
  plot->add_option("--axes", plot_axes, "x1,x2 or x1,x2,x3");
  plot->add_option("--out", plot_out, "SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kInvalidArgument;
  }

  std::ostream& err = std::cerr;
  if (list->parsed()) {
    return cli::run_guarded([&] { return cli::cmd_list(std::cout, list_filter); }, err);
  }
  if (run->parsed()) {
    return cli::run_guarded(
        [&] {
          cli::RunOptions base;
          if (!config_path.empty()) base = cli::load_config(config_path);
          if (*o_system) flags.system = system;
          for (const auto& p : run_params) flags.params.insert(cli::parse_assignment(p));
          if (*o_tau) flags.tau = tau;
          if (*o_hk) flags.history_kind = history_kind;
          if (*o_hv) flags.history_values = history_values;
          if (*o_tend) flags.t_end = t_end;
          if (*o_m) flags.steps_per_delay = steps_per_delay;
          if (*o_step) flags.step = step;
          if (*o_rec) flags.record_every = record_every;
          if (*o_seed) flags.seed = seed;
          if (*o_out) flags.out = out;
          if (*o_svg) flags.svg = svg;
          if (*o_axes) flags.axes = axes;
          return cli::cmd_run(cli::merge(base, flags), std::cout, err);
        },
        err);
  }
  if (check->parsed()) {
    return cli::run_guarded(
        [&] {
          cli::CheckOptions opts;
          opts.fault = cli::parse_planted_fault(plant_fault);
          opts.samples = check_samples;
          if (opts.samples < 1) throw metriplex::ConstraintError("--samples must be >= 1");
          return cli::cmd_check(check_scope, std::cout, err, opts);
        },
        err);
  }
  if (revisit->parsed()) {
    return cli::run_guarded(
        [&] {
          revisit_req.variant = cli::parse_variant(variant);
          if (*o_mode) revisit_req.mode = cli::parse_mode(mode);
          if (*o_rout) revisit_req.out = revisit_out;
          for (const auto& p : revisit_params) revisit_req.params.insert(cli::parse_assignment(p));
          return cli::cmd_revisit(revisit_req, std::cout, err);
        },
        err);
  }
  return cli::run_guarded([&] { return cli::cmd_plot(plot_csv, plot_axes, plot_out, std::cout, err); },
                          err);
}
