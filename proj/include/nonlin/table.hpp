#pragma once

// Rectangular numeric result tables with a JSON metadata line, written as CSV
// (one '#' header line) or as a mirroring JSON document.

#include <cstddef>
#include <string>
#include <vector>

namespace nonlin {

class ResultTable {
 public:
  ResultTable() = default;
  explicit ResultTable(std::vector<std::string> columns)
      : columns_(std::move(columns)) {}

  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t row_count() const { return rows_.size(); }
  const std::vector<std::vector<double>>& rows() const { return rows_; }

  std::size_t column_index(const std::string& name) const;
  double at(std::size_t row, const std::string& column) const;

  void add_row(std::vector<double> row);
  void append_rows(const ResultTable& other);  // columns must match

  void set_metadata(std::string json_text) { metadata_ = std::move(json_text); }
  const std::string& metadata() const { return metadata_; }

  void write_csv(const std::string& path) const;
  void write_json(const std::string& path) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
  std::string metadata_;
};

}  // namespace nonlin
