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

#include "eopfair/data/communities.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace eopfair {

const std::vector<std::string>& communities_column_names() {
  static const std::vector<std::string> names = {
      "state", "county", "community", "communityname", "fold", "population",
      "householdsize", "racepctblack", "racePctWhite", "racePctAsian",
      "racePctHisp", "agePct12t21", "agePct12t29", "agePct16t24", "agePct65up",
      "numbUrban", "pctUrban", "medIncome", "pctWWage", "pctWFarmSelf",
      "pctWInvInc", "pctWSocSec", "pctWPubAsst", "pctWRetire", "medFamInc",
      "perCapInc", "whitePerCap", "blackPerCap", "indianPerCap", "AsianPerCap",
      "OtherPerCap", "HispPerCap", "NumUnderPov", "PctPopUnderPov",
      "PctLess9thGrade", "PctNotHSGrad", "PctBSorMore", "PctUnemployed",
      "PctEmploy", "PctEmplManu", "PctEmplProfServ", "PctOccupManu",
      "PctOccupMgmtProf", "MalePctDivorce", "MalePctNevMarr", "FemalePctDiv",
      "TotalPctDiv", "PersPerFam", "PctFam2Par", "PctKids2Par", "PctYoungKids2Par",
      "PctTeen2Par", "PctWorkMomYoungKids", "PctWorkMom", "NumIlleg", "PctIlleg",
      "NumImmig", "PctImmigRecent", "PctImmigRec5", "PctImmigRec8",
      "PctImmigRec10", "PctRecentImmig", "PctRecImmig5", "PctRecImmig8",
      "PctRecImmig10", "PctSpeakEnglOnly", "PctNotSpeakEnglWell",
      "PctLargHouseFam", "PctLargHouseOccup", "PersPerOccupHous",
      "PersPerOwnOccHous", "PersPerRentOccHous", "PctPersOwnOccup",
      "PctPersDenseHous", "PctHousLess3BR", "MedNumBR", "HousVacant",
      "PctHousOccup", "PctHousOwnOcc", "PctVacantBoarded", "PctVacMore6Mos",
      "MedYrHousBuilt", "PctHousNoPhone", "PctWOFullPlumb", "OwnOccLowQuart",
      "OwnOccMedVal", "OwnOccHiQuart", "RentLowQ", "RentMedian", "RentHighQ",
      "MedRent", "MedRentPctHousInc", "MedOwnCostPctInc", "MedOwnCostPctIncNoMtg",
      "NumInShelters", "NumStreet", "PctForeignBorn", "PctBornSameState",
      "PctSameHouse85", "PctSameCity85", "PctSameState85", "LemasSwornFT",
      "LemasSwFTPerPop", "LemasSwFTFieldOps", "LemasSwFTFieldPerPop",
      "LemasTotalReq", "LemasTotReqPerPop", "PolicReqPerOffic", "PolicPerPop",
      "RacialMatchCommPol", "PctPolicWhite", "PctPolicBlack", "PctPolicHisp",
      "PctPolicAsian", "PctPolicMinor", "OfficAssgnDrugUnits", "NumKindsDrugsSeiz",
      "PolicAveOTWorked", "LandArea", "PopDens", "PctUsePubTrans", "PolicCars",
      "PolicOperBudg", "LemasPctPolicOnPatr", "LemasGangUnitDeploy",
      "LemasPctOfficDrugUn", "PolicBudgPerPop", "ViolentCrimesPerPop",
  };
  return names;
}

TableFormat communities_format() {
  TableFormat format;
  format.delimiter = ',';
  format.has_header = false;
  format.missing_markers = {"?"};
  format.column_names = communities_column_names();
  return format;
}

std::pair<Dataset, PreprocessReport> preprocess_communities(const RawTable& raw,
                                                            const ColumnRoles& roles) {
  PreprocessReport report;
  report.raw_rows = raw.num_rows();
  report.raw_columns = raw.num_columns();

  const std::size_t target_col = raw.column_index(roles.target);
  std::vector<std::size_t> minority_cols;
  for (const auto& name : roles.minority_columns) {
    minority_cols.push_back(raw.column_index(name));
  }
  std::set<std::size_t> not_features(minority_cols.begin(), minority_cols.end());
  std::set<std::size_t> identifiers{target_col};
  for (const auto& name : roles.excluded) {
    if (auto idx = raw.find_column(name)) identifiers.insert(*idx);
  }
  report.descriptive_features = raw.num_columns() - identifiers.size();
  std::vector<std::size_t> candidates;
  for (std::size_t c = 0; c < raw.num_columns(); ++c) {
    if (identifiers.contains(c)) continue;
    if (roles.drop_minority_columns && not_features.contains(c)) continue;
    candidates.push_back(c);
  }
  report.candidate_features = candidates.size();

  // 1. Rows with a known target.
  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < raw.num_rows(); ++r) {
    if (!raw.is_missing(r, target_col)) rows.push_back(r);
  }
  report.rows_dropped = raw.num_rows() - rows.size();
  if (rows.empty()) throw std::runtime_error("no rows with a known target");

  auto missing_count = [&](std::size_t c) {
    std::size_t count = 0;
    for (auto r : rows) count += raw.is_missing(r, c) ? 1 : 0;
    return count;
  };
  for (auto c : minority_cols) {
    if (missing_count(c) == rows.size()) {
      throw std::runtime_error("required column " + raw.column_names()[c] +
                               " is entirely missing");
    }
  }

  // 2. Columns missing in more than the allowed fraction of rows.
  std::vector<std::size_t> kept;
  for (auto c : candidates) {
    const double fraction =
        static_cast<double>(missing_count(c)) / static_cast<double>(rows.size());
    if (fraction > roles.max_missing_fraction) {
      report.columns_dropped_missing.push_back(raw.column_names()[c]);
    } else {
      kept.push_back(c);
    }
  }

  // Column means over present cells, used for imputation.
  auto column_mean = [&](std::size_t c) {
    double sum = 0.0;
    std::size_t count = 0;
    for (auto r : rows) {
      if (raw.is_missing(r, c)) continue;
      sum += raw.number(r, c);
      ++count;
    }
    return count > 0 ? sum / static_cast<double>(count) : 0.0;
  };

  // 3. Groups from the minority percentages (imputed where missing).
  std::vector<double> minority_means;
  for (auto c : minority_cols) minority_means.push_back(column_mean(c));
  const auto n = static_cast<Eigen::Index>(rows.size());
  std::vector<GroupId> groups(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    double share = 0.0;
    for (std::size_t m = 0; m < minority_cols.size(); ++m) {
      share += raw.is_missing(rows[i], minority_cols[m])
                   ? minority_means[m]
                   : raw.number(rows[i], minority_cols[m]);
    }
    groups[i] = share > roles.minority_threshold ? 1 : 0;
    ++report.group_sizes[groups[i]];
  }

  // 4-5. Impute and standardize.
  std::vector<Eigen::VectorXd> columns;
  std::vector<std::string> names;
  for (auto c : kept) {
    const double mean = column_mean(c);
    Eigen::VectorXd v(n);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto r = static_cast<Eigen::Index>(i);
      if (raw.is_missing(rows[i], c)) {
        v(r) = mean;
        ++report.imputed_cells;
      } else {
        v(r) = raw.number(rows[i], c);
      }
    }
    const double mu = v.mean();
    v.array() -= mu;
    const double variance = v.squaredNorm() / static_cast<double>(n);
    if (!(variance > 0.0)) {
      report.columns_dropped_constant.push_back(raw.column_names()[c]);
      continue;
    }
    v /= std::sqrt(variance);
    // A second centering pass removes the rounding left by the first.
    v.array() -= v.mean();
    columns.push_back(std::move(v));
    names.push_back(raw.column_names()[c]);
  }

  // 6-7. Scale then flip targets.
  Eigen::VectorXd y(n);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    y(static_cast<Eigen::Index>(i)) = raw.number(rows[i], target_col);
  }
  report.target_scale = y.maxCoeff();
  if (!(report.target_scale > 0.0)) {
    throw std::runtime_error("target maximum must be positive to rescale");
  }
  y = (1.0 - (y / report.target_scale).array()).matrix();

  // 8. Group indicator as the last feature.
  const auto k = static_cast<Eigen::Index>(columns.size());
  Eigen::MatrixXd x(n, k + 1);
  for (Eigen::Index j = 0; j < k; ++j) x.col(j) = columns[static_cast<std::size_t>(j)];
  for (std::size_t i = 0; i < rows.size(); ++i) {
    x(static_cast<Eigen::Index>(i), k) = groups[i] == 1 ? 1.0 : 0.0;
  }
  names.push_back(roles.group_feature_name);

  report.retained_rows = rows.size();
  report.retained_features = columns.size();
  Dataset data(std::move(x), std::move(y), std::move(groups), TaskMode::kRegression,
               std::move(names));
  return {std::move(data), std::move(report)};
}

std::pair<Dataset, PreprocessReport> load_communities(const std::string& path,
                                                      const ColumnRoles& roles) {
  return preprocess_communities(load_table(path, communities_format()), roles);
}

std::string to_string(const PreprocessReport& report) {
  std::ostringstream out;
  out << "raw_rows=" << report.raw_rows << "\nraw_columns=" << report.raw_columns
      << "\ndescriptive_features=" << report.descriptive_features
      << "\ncandidate_features=" << report.candidate_features
      << "\nrows_dropped=" << report.rows_dropped
      << "\ncolumns_dropped_missing=" << report.columns_dropped_missing.size()
      << "\ncolumns_dropped_constant=" << report.columns_dropped_constant.size()
      << "\nimputed_cells=" << report.imputed_cells
      << "\ntarget_scale=" << report.target_scale
      << "\nretained_rows=" << report.retained_rows
      << "\nretained_features=" << report.retained_features;
  for (const auto& [group, size] : report.group_sizes) {
    out << "\ngroup_" << group << "_size=" << size;
  }
  out << '\n';
  return out.str();
}

}  // namespace eopfair
