#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace mblab::harness {

using Json = nlohmann::ordered_json;

/// Column header "symbol [unit]".
struct Column {
  std::string symbol;
  std::string unit;
};

/// A numeric table; every row has one value per column.
struct CsvTable {
  std::vector<Column> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
};

/// Shortest round-trip decimal form; "nan" and "inf" for non-finite values.
std::string format_number(double v);

void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(const std::string& path);

void write_json(const std::string& path, const Json& doc);
Json read_json(const std::string& path);

}  // namespace mblab::harness
