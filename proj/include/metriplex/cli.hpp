#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "metriplex/catalog.hpp"
#include "metriplex/core.hpp"
#include "metriplex/dde.hpp"
#include "metriplex/revisited.hpp"

namespace metriplex::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailure = 1,
  kUnknownName = 2,
  kInvalidArgument = 3,
  kBlowUp = 4,
  kMalformedInput = 5,
};

/// Unreadable or unparsable input files (config, CSV).
class MalformedInputError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Run configuration: flat key = value file, overridden by flags.

struct RunOptions {
  std::optional<std::string> system;
  ParameterMap params;
  std::optional<double> tau;
  std::optional<std::string> history_kind;    // constant | polynomial
  std::optional<std::string> history_values;  // see parse_history
  std::optional<double> t_end;
  std::optional<int> steps_per_delay;
  std::optional<double> step;
  std::optional<int> record_every;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> svg;
  std::optional<std::string> axes;
  bool literal_display = false;
};

/// Keys: system, param.<name>, tau, history.kind, history.values, t_end,
/// steps_per_delay, step, record_every, seed, out, svg, axes. Blank lines
/// and text after '#' are ignored. Throws MalformedInputError.
RunOptions parse_config(std::istream& in, const std::string& source = "config");
RunOptions load_config(const std::string& path);

/// Fields set in `overrides` replace those in `base`; parameters merge.
RunOptions merge(RunOptions base, const RunOptions& overrides);

/// constant: "a,b,c" (',' or ';' separated).
/// polynomial: coordinates separated by ';', coefficients of θ⁰, θ¹, ...
/// separated by ','; e.g. "1,0.5;0.5;1,0,-0.2".
HistoryFunction parse_history(const std::string& kind, const std::string& values, int dimension,
                              double tau);

/// "key=value" with a numeric value.
std::pair<std::string, double> parse_assignment(const std::string& text);

// ---------------------------------------------------------------------------
// CSV: '#' metadata lines, a header "t,x1,...,xn", one row per knot.

struct CsvTable {
  std::vector<std::string> metadata;  // without the leading "# "
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Index of a column; throws ConstraintError if absent.
  std::size_t column(const std::string& name) const;
};

/// 17 significant digits, so values round-trip exactly.
std::string format_number(double v);
void write_csv(std::ostream& out, const CsvTable& table);
CsvTable read_csv(std::istream& in, const std::string& source = "csv");
CsvTable read_csv_file(const std::string& path);

// ---------------------------------------------------------------------------
// SVG orbit projections.

/// Two axes: polyline of (a, b). Three axes: orthographic projection onto the
/// first two with the third mapped to stroke shade. A single row renders as
/// a circle marker. Equal scaling on both axes.
std::string render_svg(const CsvTable& table, const std::vector<std::string>& axes,
                       const std::string& title);
std::vector<std::string> parse_axes(const std::string& spec);

// ---------------------------------------------------------------------------
// Commands. Each writes its report to `out`, errors to `err`, and returns an
// exit code; library errors are mapped by run_guarded.

int cmd_list(std::ostream& out, const std::string& filter = "");

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err);

enum class PlantedFault { none, display_typo, bracket_law };
PlantedFault parse_planted_fault(const std::string& name);

struct CheckOptions {
  PlantedFault fault = PlantedFault::none;
  int samples = 100;
  std::uint64_t seed = kDefaultSeed;
};

/// Runs the property suite over one system or "all". The JSON report goes to
/// `out`; one line per failure goes to `err`.
int cmd_check(const std::string& scope, std::ostream& out, std::ostream& err,
              const CheckOptions& options = {});

struct RevisitRequest {
  std::string system;
  ParameterMap params;
  Variant variant = Variant::outer_product;
  std::optional<Mode> mode;
  std::optional<std::string> out;
  std::uint64_t seed = kDefaultSeed;
};

int cmd_revisit(const RevisitRequest& request, std::ostream& out, std::ostream& err);

/// Builds and reports a revisited system from explicit inputs.
void revisit_report(const std::string& label, const RevisitInputs& inputs, Variant variant,
                    std::uint64_t seed, std::ostream& out);

int cmd_plot(const std::string& csv_path, const std::string& axes, const std::string& out_path,
             std::ostream& out, std::ostream& err);

Variant parse_variant(const std::string& name);
Mode parse_mode(const std::string& name);

int exit_code_for(const std::exception& e);

/// Calls `fn`, mapping library exceptions onto exit codes with a message on
/// `err`.
template <typename Fn>
int run_guarded(Fn&& fn, std::ostream& err) {
  try {
    return fn();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace metriplex::cli
