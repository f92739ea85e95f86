#pragma once

#include <optional>
#include <string>
#include <vector>

namespace floqreset::cli {

/// Shortest text that reads back to the same double (17 significant digits).
std::string format_double(double v);
std::string format_optional(const std::optional<double>& v);

/// RFC 4180 field quoting.
std::string csv_escape(const std::string& field);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<std::string> row);
  void add_numbers(const std::vector<double>& row);

  const std::vector<std::string>& header() const { return header_; }
  std::size_t rows() const { return rows_.size(); }
  std::string str() const;
  void write(const std::string& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace floqreset::cli
