#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nsalpha {

/// 17 significant digits; "inf", "-inf", "nan" for non-finite values.
std::string format_double(double value);

/// Column-ordered numeric table written as CSV.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  void add_row(std::vector<double> row);

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }

  void write(std::ostream& out) const;
  std::string to_string() const;
  void write_file(const std::string& path) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
};

/// Parse a CSV produced by CsvTable (header + numeric rows).
CsvTable read_csv(const std::string& path);

}  // namespace nsalpha
