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

#include "eopfair/tradeoffs/tradeoffs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <span>

#include "eopfair/core/random.hpp"
#include "eopfair/metrics/metrics.hpp"

namespace eopfair {
namespace {

constexpr double kTieTolerance = 1e-12;

bool is_constant(const Hypothesis& h, double value) {
  return std::all_of(h.predictions.begin(), h.predictions.end(),
                     [value](double p) { return p == value; });
}

std::string format_value(double v) {
  std::string s = std::to_string(v);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

Hypothesis constant_hypothesis(std::size_t points, double value) {
  return {"const " + format_value(value), std::vector<double>(points, value)};
}

// Appends `h` unless an identical lookup table is already present; returns
// the index of the stored table.
std::size_t add_unique(std::vector<Hypothesis>& hs, Hypothesis h) {
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (hs[i].predictions == h.predictions) return i;
  }
  hs.push_back(std::move(h));
  return hs.size() - 1;
}

std::vector<GroupId> random_point_groups(Rng& rng, std::size_t points) {
  std::vector<GroupId> groups(points);
  groups[0] = 0;
  groups[1] = 1;
  for (std::size_t i = 2; i < points; ++i) groups[i] = static_cast<GroupId>(rng.index(2));
  rng.shuffle(groups);
  return groups;
}

}  // namespace

std::string to_string(FairnessCriterion criterion) {
  switch (criterion) {
    case FairnessCriterion::kSocialWelfare: return "social_welfare";
    case FairnessCriterion::kMeanDifference: return "mean_difference";
    case FairnessCriterion::kPositiveResidualDifference: return "positive_residual_difference";
    case FairnessCriterion::kNegativeResidualDifference: return "negative_residual_difference";
    case FairnessCriterion::kAtkinsonIndex: return "atkinson_index";
    case FairnessCriterion::kIndividualLipschitz: return "individual_lipschitz";
  }
  return "unknown";
}

std::string to_string(Realizability realizability) {
  return realizability == Realizability::kRealizable ? "realizable" : "unrealizable";
}

FairnessCriterion parse_criterion(const std::string& text) {
  for (auto c : {FairnessCriterion::kSocialWelfare, FairnessCriterion::kMeanDifference,
                 FairnessCriterion::kPositiveResidualDifference,
                 FairnessCriterion::kNegativeResidualDifference,
                 FairnessCriterion::kAtkinsonIndex,
                 FairnessCriterion::kIndividualLipschitz}) {
    if (to_string(c) == text) return c;
  }
  throw std::invalid_argument("unknown fairness criterion: " + text);
}

UnsupportedCriterionError::UnsupportedCriterionError(FairnessCriterion criterion)
    : std::invalid_argument("unsupported fairness criterion: " + to_string(criterion)) {}

Direction direction(FairnessCriterion criterion) {
  switch (criterion) {
    case FairnessCriterion::kSocialWelfare: return Direction::kMaximize;
    case FairnessCriterion::kMeanDifference:
    case FairnessCriterion::kPositiveResidualDifference:
    case FairnessCriterion::kNegativeResidualDifference: return Direction::kMinimize;
    default: throw UnsupportedCriterionError(criterion);
  }
}

FiniteHypothesisClass::FiniteHypothesisClass(std::vector<GroupId> point_groups,
                                             std::vector<Hypothesis> hypotheses,
                                             std::optional<std::size_t> reference)
    : point_groups_(std::move(point_groups)),
      hypotheses_(std::move(hypotheses)),
      reference_(reference) {
  if (hypotheses_.empty()) throw std::invalid_argument("empty hypothesis class");
  if (point_groups_.empty()) throw std::invalid_argument("empty instance space");
  if (reference_ && *reference_ >= hypotheses_.size()) {
    throw std::out_of_range("reference hypothesis index out of range");
  }
  y_min_ = std::numeric_limits<double>::infinity();
  y_max_ = -y_min_;
  for (const auto& h : hypotheses_) {
    if (h.predictions.size() != point_groups_.size()) {
      throw std::invalid_argument("hypothesis " + h.name +
                                  " is not defined on every instance");
    }
    for (double p : h.predictions) {
      y_min_ = std::min(y_min_, p);
      y_max_ = std::max(y_max_, p);
    }
  }
}

std::optional<std::size_t> FiniteHypothesisClass::find_constant(double value) const {
  for (std::size_t i = 0; i < hypotheses_.size(); ++i) {
    if (is_constant(hypotheses_[i], value)) return i;
  }
  return std::nullopt;
}

std::vector<std::size_t> FiniteHypothesisClass::constants() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < hypotheses_.size(); ++i) {
    if (is_constant(hypotheses_[i], hypotheses_[i].predictions.front())) out.push_back(i);
  }
  return out;
}

double criterion_value(FairnessCriterion criterion, const FiniteHypothesisClass& cls,
                       std::size_t hypothesis, const std::vector<TableSample>& samples) {
  if (samples.empty()) throw std::invalid_argument("no samples");
  const auto& h = cls.hypotheses().at(hypothesis);
  std::vector<double> y, yhat;
  std::vector<GroupId> z;
  for (const auto& s : samples) {
    y.push_back(s.target);
    yhat.push_back(h.predictions.at(s.point));
    z.push_back(cls.group_of(s.point));
  }
  switch (criterion) {
    case FairnessCriterion::kSocialWelfare: {
      double sum = 0.0;
      for (double v : yhat) sum += v;
      return sum / static_cast<double>(yhat.size());
    }
    case FairnessCriterion::kMeanDifference:
      return mean_difference(yhat, z).gap;
    case FairnessCriterion::kPositiveResidualDifference:
      return positive_residual_difference(y, yhat, z).gap;
    case FairnessCriterion::kNegativeResidualDifference:
      return negative_residual_difference(y, yhat, z).gap;
    default:
      throw UnsupportedCriterionError(criterion);
  }
}

std::vector<std::size_t> optimal_hypotheses(const FiniteHypothesisClass& cls,
                                            const std::vector<TableSample>& samples,
                                            FairnessCriterion criterion) {
  const double sign = direction(criterion) == Direction::kMaximize ? -1.0 : 1.0;
  std::vector<double> score(cls.size());
  for (std::size_t i = 0; i < cls.size(); ++i) {
    score[i] = sign * criterion_value(criterion, cls, i, samples);
  }
  const double best = *std::min_element(score.begin(), score.end());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cls.size(); ++i) {
    if (score[i] <= best + kTieTolerance) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> claimed_optimizers(FairnessCriterion criterion,
                                            Realizability realizability,
                                            TaskMode task,
                                            const FiniteHypothesisClass& cls) {
  direction(criterion);  // rejects unsupported rows
  const bool classification = task == TaskMode::kClassification;
  const double low = classification ? 0.0 : cls.y_min();
  const double high = classification ? 1.0 : cls.y_max();
  std::vector<std::size_t> out;
  auto need_constant = [&](double v) {
    auto idx = cls.find_constant(v);
    if (!idx) {
      throw std::invalid_argument("claimed optimizer const " + format_value(v) +
                                  " is not in the class");
    }
    out.push_back(*idx);
  };
  auto need_reference = [&] {
    if (!cls.reference()) {
      throw std::invalid_argument("claimed optimizer h* is not in the class");
    }
    out.push_back(*cls.reference());
  };
  switch (criterion) {
    case FairnessCriterion::kSocialWelfare:
      need_constant(high);
      break;
    case FairnessCriterion::kMeanDifference:
      if (classification) {
        need_constant(0.0);
        need_constant(1.0);
      } else {
        out = cls.constants();
        if (out.empty()) throw std::invalid_argument("class has no constant hypothesis");
      }
      break;
    case FairnessCriterion::kPositiveResidualDifference:
      need_constant(low);
      if (realizability == Realizability::kRealizable) need_reference();
      break;
    case FairnessCriterion::kNegativeResidualDifference:
      need_constant(high);
      if (realizability == Realizability::kRealizable) need_reference();
      break;
    default:
      throw UnsupportedCriterionError(criterion);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool verify_table_row(FairnessCriterion criterion, Realizability realizability,
                      TaskMode task, const FiniteHypothesisClass& cls,
                      const std::vector<TableSample>& samples) {
  const auto claimed = claimed_optimizers(criterion, realizability, task, cls);
  const auto optimal = optimal_hypotheses(cls, samples, criterion);
  return std::includes(optimal.begin(), optimal.end(), claimed.begin(), claimed.end());
}

TableInstance make_table_instance(Realizability realizability, TaskMode task,
                                  std::uint64_t seed) {
  constexpr std::size_t kPoints = 4;
  constexpr std::size_t kMaxHypotheses = 16;
  Rng rng(seed);
  const auto groups = random_point_groups(rng, kPoints);
  const bool classification = task == TaskMode::kClassification;
  const bool realizable = realizability == Realizability::kRealizable;

  // Prediction grid: {0, 1} or a 0.25-spaced range containing at least 3 values.
  std::vector<double> grid;
  if (classification) {
    grid = {0.0, 1.0};
  } else {
    const double lo = 0.25 * static_cast<double>(rng.integer(-4, 0));
    const auto steps = rng.integer(2, 6);
    for (std::int64_t i = 0; i <= steps; ++i) grid.push_back(lo + 0.25 * static_cast<double>(i));
  }
  auto random_table = [&] {
    std::vector<double> p(kPoints);
    for (auto& v : p) v = grid[rng.index(grid.size())];
    return p;
  };

  std::vector<Hypothesis> hs;
  add_unique(hs, constant_hypothesis(kPoints, grid.front()));
  add_unique(hs, constant_hypothesis(kPoints, grid.back()));
  if (!classification) {
    add_unique(hs, constant_hypothesis(kPoints, grid[rng.index(grid.size())]));
  }

  std::vector<TableSample> samples;
  std::optional<std::size_t> reference;
  if (realizable) {
    const auto truth = random_table();
    reference = add_unique(hs, {"h*", truth});
    for (std::size_t x = 0; x < kPoints; ++x) {
      const auto copies = rng.integer(1, 3);
      for (std::int64_t c = 0; c < copies; ++c) samples.push_back({x, truth[x]});
    }
  } else {
    std::vector<double> mean(kPoints, 0.0);
    for (std::size_t x = 0; x < kPoints; ++x) {
      const auto copies = rng.integer(2, 4);
      const double p = rng.uniform();
      for (std::int64_t c = 0; c < copies; ++c) {
        const double y = classification ? (rng.bernoulli(p) ? 1.0 : 0.0)
                                        : rng.uniform(grid.front(), grid.back());
        samples.push_back({x, y});
        mean[x] += y / static_cast<double>(copies);
      }
    }
    // Conditional means are not binary, so a classification class cannot hold them.
    if (!classification) {
      for (auto& m : mean) m = std::clamp(m, grid.front(), grid.back());
      reference = add_unique(hs, {"h*", mean});
    }
  }

  const auto extra = rng.integer(0, static_cast<std::int64_t>(kMaxHypotheses - hs.size()));
  for (std::int64_t i = 0; i < extra && hs.size() < kMaxHypotheses; ++i) {
    add_unique(hs, {"h" + std::to_string(hs.size()), random_table()});
  }

  // Present the class in a seed-dependent order.
  std::vector<std::size_t> order(hs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(order);
  std::vector<Hypothesis> shuffled;
  std::optional<std::size_t> moved_reference;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (reference && order[i] == *reference) moved_reference = i;
    shuffled.push_back(std::move(hs[order[i]]));
  }
  return {FiniteHypothesisClass(groups, std::move(shuffled), moved_reference),
          std::move(samples)};
}

std::vector<TableCellResult> verify_table(std::uint64_t first_seed, int num_seeds) {
  std::vector<TableCellResult> out;
  for (auto criterion : kTableCriteria) {
    for (auto realizability : {Realizability::kRealizable, Realizability::kUnrealizable}) {
      for (auto task : {TaskMode::kClassification, TaskMode::kRegression}) {
        TableCellResult cell{criterion, realizability, task};
        for (int s = 0; s < num_seeds; ++s) {
          const auto instance = make_table_instance(
              realizability, task, first_seed + static_cast<std::uint64_t>(s));
          ++cell.cases;
          if (!verify_table_row(criterion, realizability, task, instance.cls,
                                instance.samples)) {
            ++cell.failures;
          }
        }
        out.push_back(cell);
      }
    }
  }
  return out;
}

}  // namespace eopfair
