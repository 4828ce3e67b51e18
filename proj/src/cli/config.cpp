#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "metriplex/cli.hpp"

namespace metriplex::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) parts.push_back(trim(item));
  if (!s.empty() && s.back() == sep) parts.push_back("");
  return parts;
}

template <typename Err>
double to_double(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  if (t.empty()) throw Err(what + ": expected a number, got an empty value");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || errno == ERANGE) {
    throw Err(what + ": '" + t + "' is not a number");
  }
  return v;
}

template <typename Err>
long long to_integer(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(t.c_str(), &end, 10);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE) {
    throw Err(what + ": '" + t + "' is not an integer");
  }
  return v;
}

}  // namespace

RunOptions parse_config(std::istream& in, const std::string& source) {
  RunOptions opts;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw MalformedInputError(where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string what = where + ": " + key;
    if (key == "system") {
      opts.system = value;
    } else if (key.rfind("param.", 0) == 0 && key.size() > 6) {
      opts.params[key.substr(6)] = to_double<MalformedInputError>(value, what);
    } else if (key == "tau") {
      opts.tau = to_double<MalformedInputError>(value, what);
    } else if (key == "history.kind") {
      opts.history_kind = value;
    } else if (key == "history.values") {
      opts.history_values = value;
    } else if (key == "t_end") {
      opts.t_end = to_double<MalformedInputError>(value, what);
    } else if (key == "steps_per_delay") {
      opts.steps_per_delay = static_cast<int>(to_integer<MalformedInputError>(value, what));
    } else if (key == "step") {
      opts.step = to_double<MalformedInputError>(value, what);
    } else if (key == "record_every") {
      opts.record_every = static_cast<int>(to_integer<MalformedInputError>(value, what));
    } else if (key == "seed") {
      opts.seed = static_cast<std::uint64_t>(to_integer<MalformedInputError>(value, what));
    } else if (key == "out") {
      opts.out = value;
    } else if (key == "svg") {
      opts.svg = value;
    } else if (key == "axes") {
      opts.axes = value;
    } else {
      throw MalformedInputError(where + ": unknown key '" + key + "'");
    }
  }
  return opts;
}

RunOptions load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInputError("cannot read config file '" + path + "'");
  return parse_config(in, path);
}

RunOptions merge(RunOptions base, const RunOptions& o) {
  auto take = [](auto& dst, const auto& src) {
    if (src) dst = src;
  };
  take(base.system, o.system);
  for (const auto& [k, v] : o.params) base.params[k] = v;
  take(base.tau, o.tau);
  take(base.history_kind, o.history_kind);
  take(base.history_values, o.history_values);
  take(base.t_end, o.t_end);
  take(base.steps_per_delay, o.steps_per_delay);
  take(base.step, o.step);
  take(base.record_every, o.record_every);
  take(base.seed, o.seed);
  take(base.out, o.out);
  take(base.svg, o.svg);
  take(base.axes, o.axes);
  base.literal_display = base.literal_display || o.literal_display;
  return base;
}

HistoryFunction parse_history(const std::string& kind, const std::string& values, int dimension,
                              double tau) {
  if (kind == "constant") {
    std::string normalized = values;
    for (char& c : normalized) {
      if (c == ';') c = ',';
    }
    const auto parts = split(normalized, ',');
    if (static_cast<int>(parts.size()) != dimension) {
      throw ConstraintError("constant history needs " + std::to_string(dimension) + " values, got " +
                            std::to_string(parts.size()));
    }
    Vector x0(dimension);
    for (int i = 0; i < dimension; ++i) {
      x0[i] = to_double<ConstraintError>(parts[static_cast<std::size_t>(i)], "history value");
    }
    return HistoryFunction::constant(x0, tau);
  }
  if (kind == "polynomial") {
    const auto coords = split(values, ';');
    if (static_cast<int>(coords.size()) != dimension) {
      throw ConstraintError("polynomial history needs " + std::to_string(dimension) +
                            " ';'-separated coordinates, got " + std::to_string(coords.size()));
    }
    std::vector<std::vector<double>> coeffs;
    for (const auto& c : coords) {
      std::vector<double> row;
      for (const auto& part : split(c, ',')) {
        row.push_back(to_double<ConstraintError>(part, "history coefficient"));
      }
      coeffs.push_back(std::move(row));
    }
    return HistoryFunction::polynomial(coeffs, tau);
  }
  throw ConstraintError("history kind must be 'constant' or 'polynomial', got '" + kind + "'");
}

std::pair<std::string, double> parse_assignment(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ConstraintError("expected name=value, got '" + text + "'");
  const std::string key = trim(text.substr(0, eq));
  if (key.empty()) throw ConstraintError("expected name=value, got '" + text + "'");
  return {key, to_double<ConstraintError>(text.substr(eq + 1), key)};
}

Variant parse_variant(const std::string& name) {
  if (name == "outer-product" || name == "outer") return Variant::outer_product;
  if (name == "annihilator") return Variant::annihilator;
  throw ConstraintError("variant must be 'outer-product' or 'annihilator', got '" + name + "'");
}

Mode parse_mode(const std::string& name) {
  if (name == "static") return Mode::static_mode;
  if (name == "delay") return Mode::delay_mode;
  throw ConstraintError("mode must be 'static' or 'delay', got '" + name + "'");
}

PlantedFault parse_planted_fault(const std::string& name) {
  if (name == "none") return PlantedFault::none;
  if (name == "display-typo") return PlantedFault::display_typo;
  if (name == "bracket-law") return PlantedFault::bracket_law;
  throw ConstraintError("planted fault must be 'none', 'display-typo' or 'bracket-law', got '" + name +
                        "'");
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const UnknownNameError*>(&e)) return kUnknownName;
  if (dynamic_cast<const MalformedInputError*>(&e)) return kMalformedInput;
  if (dynamic_cast<const BlowUpError*>(&e)) return kBlowUp;
  if (dynamic_cast<const EvaluationError*>(&e)) return kBlowUp;
  return kInvalidArgument;
}

}  // namespace metriplex::cli
