#include "mblab/harness/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mblab::harness {

void CsvTable::add_row(std::vector<double> row) {
  if (row.size() != columns.size())
    throw std::logic_error("CSV row width does not match the header");
  rows.push_back(std::move(row));
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_csv(const std::string& path, const CsvTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (std::size_t j = 0; j < table.columns.size(); ++j)
    out << (j ? "," : "") << table.columns[j].symbol << " [" << table.columns[j].unit << "]";
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << format_number(row[j]);
    out << '\n';
  }
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  CsvTable t;
  std::string line, cell;
  if (!std::getline(in, line)) return t;
  std::stringstream hs(line);
  while (std::getline(hs, cell, ',')) {
    const auto open = cell.find(" [");
    if (open == std::string::npos || cell.back() != ']')
      throw std::runtime_error(path + ": header cell '" + cell + "' lacks a unit");
    t.columns.push_back({cell.substr(0, open), cell.substr(open + 2, cell.size() - open - 3)});
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream rs(line);
    while (std::getline(rs, cell, ',')) row.push_back(std::stod(cell));
    t.add_row(std::move(row));
  }
  return t;
}

void write_json(const std::string& path, const Json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << doc.dump(2) << '\n';
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return Json::parse(in);
}

}  // namespace mblab::harness
