#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace akde {

enum class OutputFormat { csv, json };

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);

// One output value: number, integer, text, or empty.
using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

struct Table {
  std::vector<std::pair<std::string, std::string>> meta;  // ordered key=value
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

// CSV: '#'-prefixed meta lines, a header row, then data rows with RFC-4180
// quoting. JSON: an object with meta, columns, and row arrays. Both render
// doubles with format_double, so a round trip preserves every bit.
void write_table(std::ostream& out, const Table& table, OutputFormat format);

}  // namespace akde
