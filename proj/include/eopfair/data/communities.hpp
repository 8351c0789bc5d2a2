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


// Communities and Crime ingestion and preprocessing.
//
// Pipeline, in order:
//   1. drop rows whose target is unknown;
//   2. drop feature columns missing in more than 80% of the remaining rows;
//   3. group 1 when the summed minority race percentages exceed 0.5;
//   4. mean-impute the remaining missing feature cells;
//   5. standardize every feature to mean 0, population variance 1;
//   6. divide targets by their maximum;
//   7. flip targets, y <- 1 - y, so that higher is more desirable;
//   8. append the group indicator as a final feature column.

#ifndef EOPFAIR_DATA_COMMUNITIES_HPP_
#define EOPFAIR_DATA_COMMUNITIES_HPP_

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "eopfair/core/dataset.hpp"
#include "eopfair/data/table.hpp"

namespace eopfair {

// The 128 columns of the distributed file, in file order.
const std::vector<std::string>& communities_column_names();
// Headerless, comma-separated, "?" for missing, with the names above.
TableFormat communities_format();

struct ColumnRoles {
  std::string target = "ViolentCrimesPerPop";
  std::vector<std::string> minority_columns = {"racepctblack", "racePctHisp",
                                               "racePctAsian"};
  double minority_threshold = 0.5;  // strict
  // Identifier columns that never become features.
  std::vector<std::string> excluded = {"state", "county", "community", "communityname",
                                       "fold"};
  // Keep the minority columns out of the feature set; only the appended
  // group indicator carries group membership.
  bool drop_minority_columns = true;
  // A column is dropped when its missing count exceeds this fraction of rows.
  double max_missing_fraction = 0.8;
  std::string group_feature_name = "z";
};

struct PreprocessReport {
  std::size_t raw_rows = 0;
  std::size_t raw_columns = 0;
  // Every column except identifiers and the target.
  std::size_t descriptive_features = 0;
  // Descriptive features that are candidates for the model.
  std::size_t candidate_features = 0;
  std::size_t rows_dropped = 0;
  std::vector<std::string> columns_dropped_missing;
  std::vector<std::string> columns_dropped_constant;
  std::size_t imputed_cells = 0;
  double target_scale = 0.0;
  std::map<GroupId, std::size_t> group_sizes;
  std::size_t retained_rows = 0;
  // Standardized features, excluding the appended group indicator.
  std::size_t retained_features = 0;
};

std::pair<Dataset, PreprocessReport> preprocess_communities(
    const RawTable& raw, const ColumnRoles& roles = {});

std::pair<Dataset, PreprocessReport> load_communities(const std::string& path,
                                                      const ColumnRoles& roles = {});

std::string to_string(const PreprocessReport& report);

}  // namespace eopfair

#endif  // EOPFAIR_DATA_COMMUNITIES_HPP_
