/*
 * Copyright 2026 The eopfair Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "eopfair/data/table.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace eopfair {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// Splits one line; double quotes group a cell and "" escapes a quote.
std::vector<std::string> split_line(const std::string& line, char delimiter) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delimiter) {
      cells.push_back(trim(cell));
      cell.clear();
    } else {
      cell += c;
    }
  }
  cells.push_back(trim(cell));
  return cells;
}

bool parse_double(const std::string& text, double& value) {
  if (text.empty()) return false;
  const char* begin = text.data();
  const char* end = begin + text.size();
  if (*begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  return ec == std::errc() && ptr == end;
}

}  // namespace

RawTable::RawTable(std::vector<std::string> column_names,
                   std::vector<std::vector<std::string>> rows,
                   std::set<std::string> missing_markers)
    : column_names_(std::move(column_names)),
      rows_(std::move(rows)),
      missing_markers_(std::move(missing_markers)) {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (rows_[r].size() != column_names_.size()) {
      throw std::runtime_error("row " + std::to_string(r) + " has " +
                               std::to_string(rows_[r].size()) + " cells, expected " +
                               std::to_string(column_names_.size()));
    }
  }
}

bool RawTable::is_missing(std::size_t row, std::size_t col) const {
  const auto& c = cell(row, col);
  return c.empty() || missing_markers_.contains(c);
}

double RawTable::number(std::size_t row, std::size_t col) const {
  double v = 0.0;
  if (!parse_double(cell(row, col), v)) {
    throw std::runtime_error("row " + std::to_string(row) + ", column " +
                             column_names_.at(col) + ": '" + cell(row, col) +
                             "' is not a number");
  }
  return v;
}

std::optional<std::size_t> RawTable::find_column(const std::string& name) const {
  for (std::size_t i = 0; i < column_names_.size(); ++i) {
    if (column_names_[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t RawTable::column_index(const std::string& name) const {
  auto idx = find_column(name);
  if (!idx) throw std::invalid_argument("no column named " + name);
  return *idx;
}

RawTable parse_table(std::istream& in, const TableFormat& format) {
  std::vector<std::string> names = format.column_names;
  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::size_t line_number = 0;
  bool header_pending = format.has_header;
  while (std::getline(in, line)) {
    ++line_number;
    if (trim(line).empty()) continue;
    auto cells = split_line(line, format.delimiter);
    if (header_pending) {
      names = std::move(cells);
      header_pending = false;
      continue;
    }
    if (names.empty()) {
      for (std::size_t i = 0; i < cells.size(); ++i) names.push_back("c" + std::to_string(i));
    }
    if (cells.size() != names.size()) {
      throw std::runtime_error("ragged row " + std::to_string(rows.size()) + " (line " +
                               std::to_string(line_number) + "): " +
                               std::to_string(cells.size()) + " cells, expected " +
                               std::to_string(names.size()));
    }
    rows.push_back(std::move(cells));
  }
  return RawTable(std::move(names), std::move(rows), format.missing_markers);
}

RawTable load_table(const std::string& path, const TableFormat& format) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return parse_table(in, format);
}

void write_dataset_snapshot(const Dataset& data, std::ostream& out, char delimiter) {
  const auto& names = data.feature_names();
  for (std::size_t j = 0; j < data.num_features(); ++j) {
    out << (names.empty() ? "x" + std::to_string(j) : names[j]) << delimiter;
  }
  out << "group" << delimiter << "target\n";
  out << std::setprecision(17);
  const Eigen::MatrixXd& x = data.features();
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    for (Eigen::Index j = 0; j < x.cols(); ++j) out << x(r, j) << delimiter;
    out << data.groups()[i] << delimiter << data.targets()(r) << '\n';
  }
}

void write_dataset_snapshot(const Dataset& data, const std::string& path, char delimiter) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_dataset_snapshot(data, out, delimiter);
}

Dataset read_dataset_snapshot(const std::string& path, TaskMode mode, char delimiter) {
  TableFormat format;
  format.delimiter = delimiter;
  format.has_header = true;
  const RawTable table = load_table(path, format);
  const std::size_t cols = table.num_columns();
  if (cols < 3 || table.column_names()[cols - 2] != "group" ||
      table.column_names()[cols - 1] != "target") {
    throw std::runtime_error(path + " is not a dataset snapshot");
  }
  const auto n = static_cast<Eigen::Index>(table.num_rows());
  const auto k = static_cast<Eigen::Index>(cols - 2);
  Eigen::MatrixXd x(n, k);
  Eigen::VectorXd y(n);
  std::vector<GroupId> groups(table.num_rows());
  for (std::size_t r = 0; r < table.num_rows(); ++r) {
    const auto i = static_cast<Eigen::Index>(r);
    for (Eigen::Index j = 0; j < k; ++j) x(i, j) = table.number(r, static_cast<std::size_t>(j));
    groups[r] = static_cast<GroupId>(table.number(r, cols - 2));
    y(i) = table.number(r, cols - 1);
  }
  std::vector<std::string> names(table.column_names().begin(),
                                 table.column_names().end() - 2);
  return Dataset(std::move(x), std::move(y), std::move(groups), mode, std::move(names));
}

}  // namespace eopfair
