#include "akde/table.hpp"

#include <charconv>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace akde {

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc()) {
    throw std::runtime_error("format_double: conversion failed");
  }
  return std::string(buf, res.ptr);
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string cell_text(const Cell& cell) {
  if (std::holds_alternative<std::monostate>(cell)) return "";
  if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  return std::get<std::string>(cell);
}

void write_csv(std::ostream& out, const Table& table) {
  for (const auto& [key, value] : table.meta) {
    out << "# " << key << "=" << value << "\n";
  }
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out << ",";
    out << csv_escape(table.columns[c]);
  }
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ",";
      out << csv_escape(cell_text(row[c]));
    }
    out << "\n";
  }
}

void write_json(std::ostream& out, const Table& table) {
  nlohmann::ordered_json j;
  auto& meta = j["meta"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.meta) {
    meta[key] = value;
  }
  j["columns"] = table.columns;
  auto& rows = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (const auto& cell : row) {
      if (std::holds_alternative<std::monostate>(cell)) {
        r.push_back(nullptr);
      } else if (const auto* d = std::get_if<double>(&cell)) {
        r.push_back(*d);
      } else if (const auto* i = std::get_if<std::int64_t>(&cell)) {
        r.push_back(*i);
      } else {
        r.push_back(std::get<std::string>(cell));
      }
    }
    rows.push_back(std::move(r));
  }
  out << j.dump(1) << "\n";
}

}  // namespace

void write_table(std::ostream& out, const Table& table, OutputFormat format) {
  if (format == OutputFormat::csv) {
    write_csv(out, table);
  } else {
    write_json(out, table);
  }
}

}  // namespace akde
