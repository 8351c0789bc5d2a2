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


// Brute-force optimal predictions for welfare and unfairness criteria over
// finite hypothesis classes on a finite instance space.

#ifndef EOPFAIR_TRADEOFFS_TRADEOFFS_HPP_
#define EOPFAIR_TRADEOFFS_TRADEOFFS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "eopfair/core/dataset.hpp"

namespace eopfair {

enum class FairnessCriterion {
  kSocialWelfare,
  kMeanDifference,
  kPositiveResidualDifference,
  kNegativeResidualDifference,
  // Recognized but not evaluable: no closed form is available.
  kAtkinsonIndex,
  kIndividualLipschitz,
};

enum class Direction { kMaximize, kMinimize };
enum class Realizability { kRealizable, kUnrealizable };

std::string to_string(FairnessCriterion criterion);
std::string to_string(Realizability realizability);
FairnessCriterion parse_criterion(const std::string& text);

class UnsupportedCriterionError : public std::invalid_argument {
 public:
  explicit UnsupportedCriterionError(FairnessCriterion criterion);
};

// Throws UnsupportedCriterionError for criteria without an evaluator.
Direction direction(FairnessCriterion criterion);

inline constexpr FairnessCriterion kTableCriteria[] = {
    FairnessCriterion::kSocialWelfare, FairnessCriterion::kMeanDifference,
    FairnessCriterion::kPositiveResidualDifference,
    FairnessCriterion::kNegativeResidualDifference};

// Instance points carry their group, since the group is part of x.
struct Hypothesis {
  std::string name;
  std::vector<double> predictions;  // one per instance point
};

class FiniteHypothesisClass {
 public:
  FiniteHypothesisClass(std::vector<GroupId> point_groups,
                        std::vector<Hypothesis> hypotheses,
                        std::optional<std::size_t> reference = std::nullopt);

  std::size_t num_points() const { return point_groups_.size(); }
  GroupId group_of(std::size_t point) const { return point_groups_.at(point); }
  const std::vector<Hypothesis>& hypotheses() const { return hypotheses_; }
  std::size_t size() const { return hypotheses_.size(); }
  // Index of the ground-truth hypothesis, when the class contains it.
  std::optional<std::size_t> reference() const { return reference_; }

  double y_min() const { return y_min_; }
  double y_max() const { return y_max_; }

  // Index of the hypothesis predicting `value` everywhere.
  std::optional<std::size_t> find_constant(double value) const;
  std::vector<std::size_t> constants() const;

 private:
  std::vector<GroupId> point_groups_;
  std::vector<Hypothesis> hypotheses_;
  std::optional<std::size_t> reference_;
  double y_min_ = 0.0;
  double y_max_ = 0.0;
};

struct TableSample {
  std::size_t point = 0;
  double target = 0.0;
};

double criterion_value(FairnessCriterion criterion, const FiniteHypothesisClass& cls,
                       std::size_t hypothesis, const std::vector<TableSample>& samples);

// Full optimal set (indices ascending). Values within 1e-12 of the best tie.
std::vector<std::size_t> optimal_hypotheses(const FiniteHypothesisClass& cls,
                                            const std::vector<TableSample>& samples,
                                            FairnessCriterion criterion);

// Hypotheses the table names as optimal for the cell. Throws if one of them
// is missing from the class.
std::vector<std::size_t> claimed_optimizers(FairnessCriterion criterion,
                                            Realizability realizability,
                                            TaskMode task,
                                            const FiniteHypothesisClass& cls);

bool verify_table_row(FairnessCriterion criterion, Realizability realizability,
                      TaskMode task, const FiniteHypothesisClass& cls,
                      const std::vector<TableSample>& samples);

struct TableInstance {
  FiniteHypothesisClass cls;
  std::vector<TableSample> samples;
};

// Randomized 4-point instance with at most 16 hypotheses, containing every
// claimed optimizer of the cell. In the realizable case targets equal the
// reference hypothesis; otherwise targets are noisy and the reference (when
// present) is the per-point mean target.
TableInstance make_table_instance(Realizability realizability, TaskMode task,
                                  std::uint64_t seed);

struct TableCellResult {
  FairnessCriterion criterion;
  Realizability realizability;
  TaskMode task;
  int cases = 0;
  int failures = 0;
};

std::vector<TableCellResult> verify_table(std::uint64_t first_seed, int num_seeds);

}  // namespace eopfair

#endif  // EOPFAIR_TRADEOFFS_TRADEOFFS_HPP_
