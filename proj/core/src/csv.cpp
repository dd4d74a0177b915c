#include "skillgauge/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "skillgauge/errors.hpp"

namespace skillgauge {

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

CsvTable::Row& CsvTable::Row::set(std::size_t col, const std::string& value) {
  cells_.at(col) = value;
  return *this;
}
CsvTable::Row& CsvTable::Row::set(std::size_t col, double value) {
  return set(col, format_number(value));
}
CsvTable::Row& CsvTable::Row::set(std::size_t col, std::int64_t value) {
  return set(col, std::to_string(value));
}
CsvTable::Row& CsvTable::Row::set(std::size_t col, std::uint64_t value) {
  return set(col, std::to_string(value));
}
CsvTable::Row& CsvTable::Row::set(std::size_t col, std::optional<double> value) {
  return set(col, value ? format_number(*value) : std::string("NA"));
}

void CsvTable::append(const CsvTable& other) {
  if (other.header_ != header_) throw ConfigError("cannot merge tables with different headers");
  rows_.insert(rows_.end(), other.rows_.begin(), other.rows_.end());
}

CsvTable::Row& CsvTable::add_row() {
  rows_.emplace_back(header_.size());
  return rows_.back();
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header_.size(); ++i)
    if (header_[i] == name) return i;
  throw ConfigError("unknown CSV column: " + name);
}

std::string CsvTable::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < header_.size(); ++i) out << (i ? "," : "") << header_[i];
  out << '\n';
  for (const Row& row : rows_) {
    const auto& cells = row.cells();
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  }
  return out.str();
}

void CsvTable::write(const std::string& path) const {
  if (rows_.empty()) throw DataError("refusing to write empty result table");
  atomic_write(path, to_string());
}

std::size_t ParsedCsv::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw DataError("missing CSV column: " + name);
}

std::optional<std::size_t> ParsedCsv::find_column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  return std::nullopt;
}

namespace {
std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cell);
      cell.clear();
    } else if (c != '\r') {
      cell.push_back(c);
    }
  }
  cells.push_back(cell);
  return cells;
}
}  // namespace

ParsedCsv read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);
  ParsedCsv csv;
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty CSV file: " + path);
  csv.header = split_line(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split_line(line);
    if (cells.size() != csv.header.size())
      throw DataError("ragged CSV row in " + path);
    csv.rows.push_back(std::move(cells));
  }
  return csv;
}

void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write file: " + tmp);
    out << content;
    if (!out) throw DataError("write failed: " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw DataError("rename failed for " + path + ": " + ec.message());
}

}  // namespace skillgauge
