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


// Delimiter-separated tables with missing-value markers.

#ifndef EOPFAIR_DATA_TABLE_HPP_
#define EOPFAIR_DATA_TABLE_HPP_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "eopfair/core/dataset.hpp"

namespace eopfair {

struct TableFormat {
  char delimiter = ',';
  bool has_header = false;
  std::set<std::string> missing_markers = {"?"};
  // Used when the file has no header row. Empty means c0, c1, ...
  std::vector<std::string> column_names;
};

class RawTable {
 public:
  RawTable(std::vector<std::string> column_names,
           std::vector<std::vector<std::string>> rows,
           std::set<std::string> missing_markers);

  std::size_t num_rows() const { return rows_.size(); }
  std::size_t num_columns() const { return column_names_.size(); }
  const std::vector<std::string>& column_names() const { return column_names_; }
  const std::string& cell(std::size_t row, std::size_t col) const {
    return rows_.at(row).at(col);
  }
  bool is_missing(std::size_t row, std::size_t col) const;
  // Numeric value of a present cell; throws naming the row and column if the
  // cell is not a number.
  double number(std::size_t row, std::size_t col) const;
  std::optional<std::size_t> find_column(const std::string& name) const;
  std::size_t column_index(const std::string& name) const;

 private:
  std::vector<std::string> column_names_;
  std::vector<std::vector<std::string>> rows_;
  std::set<std::string> missing_markers_;
};

// Throws std::runtime_error naming the offending line for ragged rows, and
// when the file cannot be read.
RawTable parse_table(std::istream& in, const TableFormat& format);
RawTable load_table(const std::string& path, const TableFormat& format);

// Header row of feature names, "group", "target", then one row per instance.
void write_dataset_snapshot(const Dataset& data, std::ostream& out, char delimiter = ',');
void write_dataset_snapshot(const Dataset& data, const std::string& path,
                            char delimiter = ',');

// Reads a snapshot written by write_dataset_snapshot.
Dataset read_dataset_snapshot(const std::string& path, TaskMode mode, char delimiter = ',');

}  // namespace eopfair

#endif  // EOPFAIR_DATA_TABLE_HPP_
