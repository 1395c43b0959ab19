#include "pst/table.hpp"

#include <cmath>
#include <cstdio>
#include <json.hpp>

#include "pst/error.hpp"

namespace pst {

namespace {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

struct CsvCell {
  std::string operator()(std::monostate) const { return {}; }
  std::string operator()(double x) const { return std::isfinite(x) ? format_double(x) : ""; }
  std::string operator()(long long x) const { return std::to_string(x); }
  std::string operator()(bool b) const { return b ? "true" : "false"; }
  std::string operator()(const std::string& s) const { return csv_escape(s); }
};

struct JsonCell {
  nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
  nlohmann::ordered_json operator()(double x) const {
    if (!std::isfinite(x)) return nullptr;
    return x;
  }
  nlohmann::ordered_json operator()(long long x) const { return x; }
  nlohmann::ordered_json operator()(bool b) const { return b; }
  nlohmann::ordered_json operator()(const std::string& s) const { return s; }
};

}  // namespace

std::size_t Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  throw PreconditionError("no column named '" + std::string(name) + "'");
}

std::optional<double> Table::number(std::size_t row, std::string_view name) const {
  const Cell& c = rows.at(row).at(column(name));
  if (const double* d = std::get_if<double>(&c)) {
    if (std::isfinite(*d)) return *d;
    return std::nullopt;
  }
  if (const long long* i = std::get_if<long long>(&c)) return static_cast<double>(*i);
  if (const bool* b = std::get_if<bool>(&c)) return *b ? 1.0 : 0.0;
  return std::nullopt;
}

TableFormat parse_table_format(std::string_view name) {
  if (name == "csv") return TableFormat::Csv;
  if (name == "json") return TableFormat::Json;
  throw PreconditionError("unknown output format '" + std::string(name) + "' (csv, json)");
}

std::string emit_table(const Table& table, TableFormat format) {
  for (const auto& row : table.rows)
    if (row.size() != table.columns.size())
      throw PreconditionError("table row has " + std::to_string(row.size()) + " cells for " +
                              std::to_string(table.columns.size()) + " columns");
  if (format == TableFormat::Json) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
      nlohmann::ordered_json rec = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < row.size(); ++i)
        rec[table.columns[i]] = std::visit(JsonCell{}, row[i]);
      out.push_back(std::move(rec));
    }
    return out.dump(2) + "\n";
  }
  std::string out;
  for (const std::string& c : table.comments) out += "# " + c + "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    out += (i ? "," : "") + csv_escape(table.columns[i]);
  out += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + std::visit(CsvCell{}, row[i]);
    out += "\n";
  }
  return out;
}

}  // namespace pst
