#include "nonlin/table.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace nonlin {

namespace {

// Fixed formatting so identical runs produce byte-identical files.
std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

std::size_t ResultTable::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i)
    if (columns_[i] == name) return i;
  throw std::out_of_range("no column named '" + name + "'");
}

double ResultTable::at(std::size_t row, const std::string& column) const {
  return rows_.at(row).at(column_index(column));
}

void ResultTable::add_row(std::vector<double> row) {
  if (row.size() != columns_.size())
    throw std::invalid_argument("row width does not match column count");
  rows_.push_back(std::move(row));
}

void ResultTable::append_rows(const ResultTable& other) {
  if (other.columns_ != columns_)
    throw std::invalid_argument("cannot append rows with different columns");
  rows_.insert(rows_.end(), other.rows_.begin(), other.rows_.end());
}

void ResultTable::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  if (!metadata_.empty()) out << "# " << metadata_ << "\n";
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i) out << ",";
    out << columns_[i];
  }
  out << "\n";
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      out << format_value(row[i]);
    }
    out << "\n";
  }
}

void ResultTable::write_json(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "{\n  \"metadata\": " << (metadata_.empty() ? "null" : metadata_)
      << ",\n  \"columns\": [";
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i) out << ", ";
    out << '"' << columns_[i] << '"';
  }
  out << "],\n  \"rows\": [\n";
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    out << "    [";
    for (std::size_t i = 0; i < rows_[r].size(); ++i) {
      if (i) out << ", ";
      out << format_value(rows_[r][i]);
    }
    out << (r + 1 < rows_.size() ? "],\n" : "]\n");
  }
  out << "  ]\n}\n";
}

}  // namespace nonlin
