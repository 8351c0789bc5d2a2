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

// Empirical group-fairness gaps and the worst-off-group utility measure.
//
// Every gap is a maximum over group pairs, so it is non-negative and does not
// depend on how groups are labelled or instances ordered. Gaps built from
// label/prediction counts (statistical parity, equality of odds, predictive
// value parity, and accuracy parity on binary data) are computed in exact
// rational arithmetic; `MetricReport::exact` records which path ran.

#ifndef EOPFAIR_METRICS_METRICS_HPP_
#define EOPFAIR_METRICS_METRICS_HPP_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "eopfair/core/dataset.hpp"
#include "eopfair/core/utility.hpp"

namespace eopfair {

inline constexpr double kGapTolerance = 1e-12;

struct MetricReport {
  std::string name;
  double gap = 0.0;
  std::map<GroupId, double> per_group;
  // Conditioning strata that were absent from some group and left out of the
  // maximum, e.g. "y=1 absent in group 3".
  std::vector<std::string> strata_skipped;
  bool exact = false;

  // Exact zero test on the rational path, kGapTolerance otherwise.
  bool holds() const { return exact ? gap == 0.0 : gap <= kGapTolerance; }
};

// Flat "name,gap,exact,group:value;...,stratum;..." record used by the CLI.
std::string to_record(const MetricReport& report);
std::string record_header();

// Binary predictions; at least two groups.
MetricReport statistical_parity_gap(std::span<const double> yhat,
                                    std::span<const GroupId> z);
MetricReport equality_of_odds_gap(std::span<const double> y,
                                  std::span<const double> yhat,
                                  std::span<const GroupId> z);
MetricReport predictive_value_parity_gap(std::span<const double> y,
                                         std::span<const double> yhat,
                                         std::span<const GroupId> z);
// Mean squared error per group; any real outcomes.
MetricReport accuracy_parity_gap(std::span<const double> y,
                                 std::span<const double> yhat,
                                 std::span<const GroupId> z);

// Mean over-prediction max(0, yhat - y) per group, averaged over the
// instances with yhat - y >= 0. A group with no such instance contributes 0.
MetricReport positive_residual_difference(std::span<const double> y,
                                          std::span<const double> yhat,
                                          std::span<const GroupId> z);
// Mirror image with max(0, y - yhat) over instances with y - yhat >= 0.
MetricReport negative_residual_difference(std::span<const double> y,
                                          std::span<const double> yhat,
                                          std::span<const GroupId> z);
// Largest difference between group mean predictions.
MetricReport mean_difference(std::span<const double> yhat,
                             std::span<const GroupId> z);

std::map<GroupId, double> group_average_utility(std::span<const double> y,
                                                std::span<const double> yhat,
                                                std::span<const GroupId> z,
                                                const UtilitySpec& spec);
std::map<GroupId, double> group_average_utility(const Dataset& data,
                                                const LinearModel& model,
                                                const UtilitySpec& spec);

// min_z (1/n_z) sum_{i in z} u(z_i, y_i, yhat_i).
double min_group_average_utility(std::span<const double> y,
                                 std::span<const double> yhat,
                                 std::span<const GroupId> z,
                                 const UtilitySpec& spec);
double min_group_average_utility(const Dataset& data, const LinearModel& model,
                                 const UtilitySpec& spec);

}  // namespace eopfair

#endif  // EOPFAIR_METRICS_METRICS_HPP_
