#pragma once

#include <complex>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "mcskit/wigner.hpp"

namespace mcskit::cli {

/// "re,im", "r@theta_degrees" or a plain real number.
std::complex<double> parse_complex(const std::string& text);

/// "qmin,qmax,pmin,pmax,nq,np"
PhaseGrid parse_grid(const std::string& text);

struct Range {
  double lo = 0;
  double hi = 0;
  int count = 0;

  std::vector<double> values() const;
};

/// "lo,hi,count" with count >= 1 (count 1 gives just lo).
Range parse_range(const std::string& text, const std::string& what);

/// Shortest round-trip decimal form; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double value);

std::string format_complex(std::complex<double> z);

struct Column {
  std::string name;
  std::string unit;
};

/// Rectangular table plus the configuration that produced it.
struct Table {
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<Column> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
};

/// '#'-prefixed "key = value" lines, a header row "name [unit]", then one record per line.
void write_csv(std::ostream& out, const Table& table);

/// {"config": {...}, "columns": [{"name", "unit"}...], "data": {name: [...]}}
void write_json(std::ostream& out, const Table& table);

/// Writes to `path` (stdout when empty) in `format` ("csv" or "json").
void write_table(const Table& table, const std::string& path, const std::string& format);

}  // namespace mcskit::cli
