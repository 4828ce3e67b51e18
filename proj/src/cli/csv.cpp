#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "metriplex/cli.hpp"

namespace metriplex::cli {

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  std::string msg = "no column '" + name + "'; columns:";
  for (const auto& h : header) msg += " " + h;
  throw ConstraintError(msg);
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& out, const CsvTable& table) {
  for (const auto& m : table.metadata) out << "# " << m << '\n';
  for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
}

CsvTable read_csv(std::istream& in, const std::string& source) {
  CsvTable table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      table.metadata.push_back(line.size() > 2 && line[1] == ' ' ? line.substr(2) : line.substr(1));
      continue;
    }
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream row(line);
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    const std::string where = source + ":" + std::to_string(line_no);
    if (table.header.empty()) {
      for (const auto& c : cells) {
        if (c.empty()) throw MalformedInputError(where + ": empty column name");
      }
      table.header = std::move(cells);
      continue;
    }
    if (cells.size() != table.header.size()) {
      throw MalformedInputError(where + ": expected " + std::to_string(table.header.size()) +
                                " fields, got " + std::to_string(cells.size()));
    }
    std::vector<double> values;
    values.reserve(cells.size());
    for (const auto& c : cells) {
      errno = 0;
      char* end = nullptr;
      const double v = std::strtod(c.c_str(), &end);
      if (c.empty() || end != c.c_str() + c.size() || errno == ERANGE) {
        throw MalformedInputError(where + ": '" + c + "' is not a number");
      }
      values.push_back(v);
    }
    table.rows.push_back(std::move(values));
  }
  if (table.header.empty()) throw MalformedInputError(source + ": no header line");
  if (table.rows.empty()) throw MalformedInputError(source + ": no data rows");
  return table;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInputError("cannot read CSV file '" + path + "'");
  return read_csv(in, path);
}

}  // namespace metriplex::cli
