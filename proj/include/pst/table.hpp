#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pst {

/// Table cell. std::monostate marks an invalid or not-applicable value.
using Cell = std::variant<std::monostate, double, long long, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  /// Emitted as "# ..." lines ahead of the CSV header; ignored by JSON.
  std::vector<std::string> comments;

  std::size_t column(std::string_view name) const;  // throws PreconditionError
  /// Numeric view of a cell; nullopt for invalid, string or non-finite cells.
  std::optional<double> number(std::size_t row, std::string_view name) const;
};

enum class TableFormat { Csv, Json };

TableFormat parse_table_format(std::string_view name);

/// CSV: header row then one line per row, doubles at 17 significant digits,
/// invalid cells empty. JSON: array of records, invalid cells null.
std::string emit_table(const Table& table, TableFormat format);

}  // namespace pst
