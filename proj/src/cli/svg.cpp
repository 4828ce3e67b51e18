#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "metriplex/cli.hpp"

namespace metriplex::cli {

namespace {

constexpr double kCanvas = 600.0;
constexpr double kMargin = 50.0;
constexpr int kDepthBands = 8;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Extent {
  double lo = 0.0;
  double hi = 0.0;
  double span() const { return hi - lo; }
};

Extent extent(const std::vector<std::vector<double>>& rows, std::size_t col) {
  Extent e{rows.front()[col], rows.front()[col]};
  for (const auto& r : rows) {
    e.lo = std::min(e.lo, r[col]);
    e.hi = std::max(e.hi, r[col]);
  }
  return e;
}

}  // namespace

std::vector<std::string> parse_axes(const std::string& spec) {
  std::vector<std::string> axes;
  std::string item;
  std::istringstream in(spec);
  while (std::getline(in, item, ',')) {
    if (item.empty()) throw ConstraintError("empty axis name in '" + spec + "'");
    axes.push_back(item);
  }
  if (axes.size() != 2 && axes.size() != 3) {
    throw ConstraintError("axes must name 2 or 3 columns, got '" + spec + "'");
  }
  return axes;
}

std::string render_svg(const CsvTable& table, const std::vector<std::string>& axes,
                       const std::string& title) {
  if (axes.size() != 2 && axes.size() != 3) throw ConstraintError("axes must name 2 or 3 columns");
  if (table.rows.empty()) throw MalformedInputError("no data rows to plot");
  std::vector<std::size_t> cols;
  for (const auto& a : axes) cols.push_back(table.column(a));
  for (const auto& r : table.rows) {
    for (std::size_t c : cols) {
      if (!std::isfinite(r[c])) throw ConstraintError("cannot plot non-finite values");
    }
  }

  const Extent ex = extent(table.rows, cols[0]);
  const Extent ey = extent(table.rows, cols[1]);
  const double inner = kCanvas - 2.0 * kMargin;
  const double span = std::max(ex.span(), ey.span());
  const double scale = span > 0.0 ? inner / span : 1.0;
  const double cx = 0.5 * (ex.lo + ex.hi);
  const double cy = 0.5 * (ey.lo + ey.hi);
  auto px = [&](double v) { return kCanvas / 2.0 + (v - cx) * scale; };
  auto py = [&](double v) { return kCanvas / 2.0 - (v - cy) * scale; };
  auto point = [&](const std::vector<double>& r) { return fmt(px(r[cols[0]])) + "," + fmt(py(r[cols[1]])); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kCanvas << "\" height=\"" << kCanvas
      << "\" viewBox=\"0 0 " << kCanvas << " " << kCanvas << "\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << kCanvas << "\" height=\"" << kCanvas
      << "\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kCanvas / 2.0 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(title) << "</text>\n";
  svg << "<text x=\"" << kCanvas / 2.0 << "\" y=\"" << kCanvas - 12.0
      << "\" text-anchor=\"middle\" font-size=\"12\">" << escape(axes[0]) << "</text>\n";
  svg << "<text x=\"14\" y=\"" << kCanvas / 2.0 << "\" text-anchor=\"middle\" font-size=\"12\">"
      << escape(axes[1]) << "</text>\n";

  if (table.rows.size() == 1) {
    svg << "<circle class=\"marker\" cx=\"" << fmt(px(table.rows[0][cols[0]])) << "\" cy=\""
        << fmt(py(table.rows[0][cols[1]])) << "\" r=\"4\" fill=\"black\"/>\n";
  } else if (cols.size() == 2) {
    svg << "<polyline class=\"orbit\" fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < table.rows.size(); ++i) svg << (i ? " " : "") << point(table.rows[i]);
    svg << "\"/>\n";
  } else {
    // Depth cue: runs of consecutive points in the same depth band share a
    // shade, darker for larger values of the third coordinate.
    const Extent ez = extent(table.rows, cols[2]);
    auto band = [&](double z) {
      if (ez.span() <= 0.0) return kDepthBands - 1;
      const int b = static_cast<int>(std::floor((z - ez.lo) / ez.span() * kDepthBands));
      return std::clamp(b, 0, kDepthBands - 1);
    };
    std::size_t start = 0;
    while (start + 1 < table.rows.size()) {
      const int b = band(table.rows[start + 1][cols[2]]);
      std::size_t end = start + 1;
      while (end + 1 < table.rows.size() && band(table.rows[end + 1][cols[2]]) == b) ++end;
      const int shade = 200 - (170 * b) / (kDepthBands - 1);
      svg << "<polyline class=\"orbit\" fill=\"none\" stroke=\"rgb(" << shade << "," << shade << ","
          << shade << ")\" stroke-width=\"1\" points=\"";
      for (std::size_t i = start; i <= end; ++i) svg << (i > start ? " " : "") << point(table.rows[i]);
      svg << "\"/>\n";
      start = end;
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace metriplex::cli
