#pragma once

#include <optional>
#include <string>
#include <vector>

namespace skillgauge {

/// In-memory CSV table with a fixed header. Floats render with 6 significant
/// digits; absent values render as NA.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  class Row {
   public:
    explicit Row(std::size_t width) : cells_(width) {}
    Row& set(std::size_t col, const std::string& value);
    Row& set(std::size_t col, double value);
    Row& set(std::size_t col, std::int64_t value);
    Row& set(std::size_t col, std::uint64_t value);
    Row& set(std::size_t col, std::optional<double> value);
    const std::vector<std::string>& cells() const { return cells_; }

   private:
    std::vector<std::string> cells_;
  };

  Row& add_row();
  /// Appends all rows of another table; headers must match exactly.
  void append(const CsvTable& other);
  std::size_t column(const std::string& name) const;
  std::size_t n_rows() const { return rows_.size(); }
  std::string to_string() const;

  /// Atomic write (temp file + rename). Empty tables are rejected.
  void write(const std::string& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<Row> rows_;
};

/// Formats a double with 6 significant digits (the stable CSV float format).
std::string format_number(double value);

/// Parsed CSV: header plus string cells. Throws DataError on ragged rows.
struct ParsedCsv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;  // throws DataError if missing
  std::optional<std::size_t> find_column(const std::string& name) const;
};

ParsedCsv read_csv(const std::string& path);

/// Writes a file atomically via temp + rename.
void atomic_write(const std::string& path, const std::string& content);

}  // namespace skillgauge
