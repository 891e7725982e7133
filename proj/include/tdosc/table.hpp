#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace tdosc {

/// 17 significant digits; round-trips exactly.
std::string format_double(double v);

using Cell = std::variant<double, std::string>;

/// Fixed-column product table, written as CSV (header row) or JSON {columns, rows}.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

std::string to_csv(const Table& table);
std::string to_json(const Table& table);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace tdosc
