#include "cli_support.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>

#include <json.hpp>

#include "mcskit/errors.hpp"

namespace mcskit::cli {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& raw, const std::string& what) {
  const std::string text = trim(raw);
  double value = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw InvalidArgument(what + ": '" + raw + "' is not a finite number");
  }
  return value;
}

long to_count(const std::string& raw, const std::string& what) {
  const double v = to_double(raw, what);
  if (v != std::floor(v) || v < 0 || v > 1e8) {
    throw InvalidArgument(what + ": '" + raw + "' is not a non-negative integer");
  }
  return long(v);
}

}  // namespace

std::complex<double> parse_complex(const std::string& text) {
  if (const auto at = text.find('@'); at != std::string::npos) {
    const double r = to_double(text.substr(0, at), "complex modulus");
    const double deg = to_double(text.substr(at + 1), "complex angle");
    if (r < 0) throw InvalidArgument("complex modulus must be non-negative in '" + text + "'");
    // Exact values on the axes, where polar() would leave 1e-16 residues.
    const double turns = deg / 90;
    if (turns == std::floor(turns)) {
      const long quadrant = ((long(turns) % 4) + 4) % 4;
      const std::complex<double> axis[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      return r * axis[quadrant];
    }
    return std::polar(r, deg * std::numbers::pi / 180);
  }
  const auto parts = split(text, ',');
  if (parts.size() == 1) return {to_double(parts[0], "complex value"), 0};
  if (parts.size() == 2) {
    return {to_double(parts[0], "complex real part"), to_double(parts[1], "complex imaginary part")};
  }
  throw InvalidArgument("complex value '" + text + "' must be re,im or r@degrees");
}

PhaseGrid parse_grid(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 6) {
    throw InvalidArgument("--grid '" + text + "' must have 6 fields qmin,qmax,pmin,pmax,nq,np");
  }
  PhaseGrid g;
  g.q_min = to_double(parts[0], "--grid field 1 (qmin)");
  g.q_max = to_double(parts[1], "--grid field 2 (qmax)");
  g.p_min = to_double(parts[2], "--grid field 3 (pmin)");
  g.p_max = to_double(parts[3], "--grid field 4 (pmax)");
  g.n_q = to_count(parts[4], "--grid field 5 (nq)");
  g.n_p = to_count(parts[5], "--grid field 6 (np)");
  g.validate();
  return g;
}

std::vector<double> Range::values() const {
  std::vector<double> v;
  v.reserve(count);
  for (int i = 0; i < count; ++i) {
    v.push_back(i == count - 1 && count > 1 ? hi : lo + (hi - lo) * i / std::max(count - 1, 1));
  }
  return v;
}

Range parse_range(const std::string& text, const std::string& what) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) throw InvalidArgument(what + " '" + text + "' must be lo,hi,count");
  Range r{to_double(parts[0], what + " field 1 (lo)"), to_double(parts[1], what + " field 2 (hi)"),
          int(to_count(parts[2], what + " field 3 (count)"))};
  if (r.count < 1) throw InvalidArgument(what + " count must be >= 1");
  if (r.count > 1 && !(r.hi > r.lo)) throw InvalidArgument(what + " needs lo < hi");
  return r;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0) return "0";
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, ptr);
}

std::string format_complex(std::complex<double> z) {
  return format_number(z.real()) + "," + format_number(z.imag());
}

void Table::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) throw InvalidArgument("table row width does not match columns");
  rows.push_back(std::move(row));
}

void write_csv(std::ostream& out, const Table& table) {
  for (const auto& [key, value] : table.config) out << "# " << key << " = " << value << '\n';
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out << ',';
    out << table.columns[c].name;
    if (!table.columns[c].unit.empty()) out << " [" << table.columns[c].unit << ']';
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      out << format_number(row[c]);
    }
    out << '\n';
  }
}

void write_json(std::ostream& out, const Table& table) {
  nlohmann::ordered_json doc;
  doc["config"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.config) doc["config"][key] = value;
  doc["columns"] = nlohmann::ordered_json::array();
  for (const auto& c : table.columns) doc["columns"].push_back({{"name", c.name}, {"unit", c.unit}});
  doc["data"] = nlohmann::ordered_json::object();
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    auto column = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
      // JSON has no literal for non-finite numbers.
      if (std::isfinite(row[c])) {
        column.push_back(row[c]);
      } else {
        column.push_back(nullptr);
      }
    }
    doc["data"][table.columns[c].name] = std::move(column);
  }
  out << doc.dump(1) << '\n';
}

void write_table(const Table& table, const std::string& path, const std::string& format) {
  if (format != "csv" && format != "json") {
    throw InvalidArgument("--format must be csv or json (got '" + format + "')");
  }
  const auto emit = [&](std::ostream& os) {
    if (format == "csv") {
      write_csv(os, table);
    } else {
      write_json(os, table);
    }
  };
  if (path.empty() || path == "-") {
    emit(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InvalidArgument("cannot open output file '" + path + "'");
  emit(file);
  if (!file) throw Error("failed writing '" + path + "'");
}

}  // namespace mcskit::cli
