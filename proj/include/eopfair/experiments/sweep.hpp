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


// Cross-validated epsilon sweep comparing worst-off-group training with the
// residual-bound baseline.

#ifndef EOPFAIR_EXPERIMENTS_SWEEP_HPP_
#define EOPFAIR_EXPERIMENTS_SWEEP_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "eopfair/core/dataset.hpp"
#include "eopfair/core/utility.hpp"
#include "eopfair/solver/eop_training.hpp"

namespace eopfair {

enum class Method { kEop, kBaseline };

std::string to_string(Method method);

struct SweepConfig {
  double lambda = 0.0;
  // Empty selects default_epsilon_grid.
  std::vector<double> epsilons;
  int folds = 5;
  std::uint64_t seed = 0;
  // Tolerances and iteration limits; epsilon and lambda are overwritten.
  SolverConfig solver;
  // Worker threads; 0 uses the hardware concurrency.
  unsigned threads = 0;
};

struct SweepRow {
  Method method = Method::kEop;
  double epsilon = 0.0;
  int fold = 0;
  SolverStatus status = SolverStatus::kOptimal;
  // Held-out metrics.
  double prd = 0.0;
  double nrd = 0.0;
  double min_group_utility = 0.0;
  std::map<GroupId, double> group_utility;
  double test_mse = 0.0;
  double test_loss = 0.0;
  // Training-split solver output.
  double train_objective = 0.0;
  double train_loss = 0.0;
};

// Each fold holds a near-equal share of every group, so every training and
// validation split contains all groups.
std::vector<std::vector<std::size_t>> stratified_folds(const Dataset& data, int folds,
                                                       std::uint64_t seed);

// Smallest feasible loss on each training split.
std::vector<double> training_epsilon_min(const Dataset& data, double lambda,
                                         const std::vector<std::vector<std::size_t>>& folds);

// 12 geometric points from 1.02x to 3x the largest training-split minimum.
std::vector<double> default_epsilon_grid(double epsilon_min, std::size_t points = 12,
                                         double low_factor = 1.02, double high_factor = 3.0);

struct SweepOutput {
  std::vector<double> epsilons;
  std::vector<double> fold_epsilon_min;
  // Ordered by method, then epsilon, then fold.
  std::vector<SweepRow> rows;
};

SweepOutput run_epsilon_sweep(const Dataset& data, const UtilitySpec& spec,
                              const SweepConfig& config);

std::string sweep_header(char delimiter = ',');
std::string to_record(const SweepRow& row, char delimiter = ',');

struct SummaryStat {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation; 0 for a single fold
};

struct SummaryRow {
  Method method = Method::kEop;
  double epsilon = 0.0;
  int feasible_folds = 0;
  int infeasible_folds = 0;
  SummaryStat prd;
  SummaryStat nrd;
  SummaryStat min_group_utility;
  SummaryStat test_mse;
  SummaryStat test_loss;
};

// Aggregates feasible folds per (method, epsilon).
std::vector<SummaryRow> summarize(const std::vector<SweepRow>& rows);

std::string summary_header(char delimiter = ',');
std::string to_record(const SummaryRow& row, char delimiter = ',');

struct SweepPropertyReport {
  // Held-out eop min-group utility non-decreasing in epsilon on every fold.
  bool eop_utility_monotone = true;
  // Baseline fold-mean PRD and NRD at the largest epsilon no larger than at
  // the smallest epsilon where every fold is feasible.
  bool baseline_residuals_controlled = true;
  // eop min-group utility >= baseline - margin at every shared (epsilon, fold).
  bool eop_not_worse = true;
  std::vector<std::string> violations;
};

SweepPropertyReport check_sweep_properties(const std::vector<SweepRow>& rows,
                                           double margin = 0.05,
                                           double monotone_slack = 1e-9);

}  // namespace eopfair

#endif  // EOPFAIR_EXPERIMENTS_SWEEP_HPP_
