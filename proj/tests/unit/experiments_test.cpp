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


#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "eopfair/data/toy.hpp"
#include "eopfair/experiments/sweep.hpp"
#include "eopfair/solver/lasso.hpp"
#include "oracles/grid_oracle.hpp"

namespace eopfair {
namespace {

Dataset toy_data(std::uint64_t seed, std::size_t k = 1) {
  ToyConfig cfg;
  cfg.seed = seed;
  cfg.n = 16;
  cfg.k = k;
  cfg.group0 = 9;
  cfg.group1 = 7;
  cfg.noise = 0.1;
  return make_toy_instance(cfg).data;
}

TEST(FoldsTest, StratifiedFoldsCoverEveryGroup) {
  const auto data = toy_data(1);
  const auto folds = stratified_folds(data, 3, 5);
  ASSERT_EQ(folds.size(), 3u);
  std::set<std::size_t> seen;
  for (const auto& f : folds) {
    std::set<GroupId> groups;
    for (auto i : f) groups.insert(data.groups()[i]);
    EXPECT_EQ(groups.size(), 2u);
    seen.insert(f.begin(), f.end());
  }
  EXPECT_EQ(seen.size(), data.size());
  EXPECT_EQ(stratified_folds(data, 3, 5), folds);
  EXPECT_THROW(stratified_folds(data, 8, 5), std::invalid_argument);
  EXPECT_THROW(stratified_folds(data, 1, 5), std::invalid_argument);
}

TEST(EpsilonGridTest, GeometricBetweenFactors) {
  const auto grid = default_epsilon_grid(0.5);
  ASSERT_EQ(grid.size(), 12u);
  EXPECT_NEAR(grid.front(), 0.51, 1e-15);
  EXPECT_NEAR(grid.back(), 1.5, 1e-14);
  for (std::size_t i = 2; i < grid.size(); ++i) {
    EXPECT_NEAR(grid[i] / grid[i - 1], grid[1] / grid[0], 1e-12);
  }
  EXPECT_EQ(default_epsilon_grid(0.5, 1), std::vector<double>{0.51});
  EXPECT_TRUE(default_epsilon_grid(0.5, 0).empty());
}

SweepConfig small_config(double epsilon) {
  SweepConfig cfg;
  cfg.lambda = 0.05;
  cfg.epsilons = {epsilon};
  cfg.folds = 2;
  cfg.seed = 3;
  cfg.threads = 2;
  return cfg;
}

TEST(SweepTest, OneEpsilonTwoFoldsTwoMethods) {
  const auto data = toy_data(2);
  const auto out = run_epsilon_sweep(data, UtilitySpec::communities_crime(), small_config(1.0));
  ASSERT_EQ(out.rows.size(), 4u);
  EXPECT_EQ(out.rows[0].method, Method::kEop);
  EXPECT_EQ(out.rows[0].fold, 0);
  EXPECT_EQ(out.rows[1].fold, 1);
  EXPECT_EQ(out.rows[2].method, Method::kBaseline);
  EXPECT_EQ(out.fold_epsilon_min.size(), 2u);
  for (const auto& r : out.rows) {
    EXPECT_EQ(r.status, SolverStatus::kOptimal);
    EXPECT_LE(r.train_loss, 1.0 + 1e-8);
    EXPECT_EQ(r.group_utility.size(), 2u);
  }
}

TEST(SweepTest, DeterministicAcrossThreadCounts) {
  const auto data = toy_data(4, 2);
  auto cfg = small_config(0.0);
  cfg.epsilons.clear();
  cfg.threads = 1;
  const auto a = run_epsilon_sweep(data, UtilitySpec::communities_crime(), cfg);
  cfg.threads = 3;
  const auto b = run_epsilon_sweep(data, UtilitySpec::communities_crime(), cfg);
  EXPECT_EQ(a.epsilons.size(), 12u);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(to_record(a.rows[i]), to_record(b.rows[i]));
  }
  EXPECT_EQ(a.epsilons, b.epsilons);
}

TEST(SweepTest, EpsilonBelowEveryMinimumIsInfeasible) {
  const auto data = toy_data(5);
  const auto out =
      run_epsilon_sweep(data, UtilitySpec::communities_crime(), small_config(1e-9));
  for (const auto& r : out.rows) EXPECT_EQ(r.status, SolverStatus::kInfeasible);
  const auto summary = summarize(out.rows);
  ASSERT_EQ(summary.size(), 2u);
  EXPECT_EQ(summary[0].feasible_folds, 0);
  EXPECT_EQ(summary[0].infeasible_folds, 2);
  EXPECT_TRUE(std::isnan(summary[0].prd.mean));
}

TEST(SweepTest, TrainingObjectiveMatchesOracle) {
  const auto data = toy_data(6);
  const auto spec = UtilitySpec::communities_crime();
  auto cfg = small_config(0.0);
  const auto folds = stratified_folds(data, cfg.folds, cfg.seed);
  const auto mins = training_epsilon_min(data, cfg.lambda, folds);
  cfg.epsilons = {2.0 * std::max(mins[0], mins[1])};
  const auto out = run_epsilon_sweep(data, spec, cfg);
  for (int f = 0; f < cfg.folds; ++f) {
    std::vector<std::size_t> train;
    const std::set<std::size_t> held(folds[f].begin(), folds[f].end());
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (!held.contains(i)) train.push_back(i);
    }
    const auto split = data.subset(train);
    const auto oracle = testing::grid_search(
        testing::eop_grid_problem(split, spec, cfg.lambda, cfg.epsilons[0]));
    EXPECT_NEAR(out.rows[static_cast<std::size_t>(f)].train_objective, oracle.value, 1e-3);
    EXPECT_NEAR(mins[static_cast<std::size_t>(f)], fit_l1_regularized(split, cfg.lambda).objective,
                0.0);
  }
}

SweepRow row(Method m, double eps, int fold, double prd, double nrd, double util,
             SolverStatus status = SolverStatus::kOptimal) {
  SweepRow r;
  r.method = m;
  r.epsilon = eps;
  r.fold = fold;
  r.prd = prd;
  r.nrd = nrd;
  r.min_group_utility = util;
  r.status = status;
  return r;
}

TEST(SummaryTest, MeanAndSampleDeviation) {
  const std::vector<SweepRow> rows = {
      row(Method::kEop, 1.0, 0, 0.1, 0.2, 1.0), row(Method::kEop, 1.0, 1, 0.3, 0.2, 3.0),
      row(Method::kEop, 1.0, 2, 0.0, 0.0, 0.0, SolverStatus::kInfeasible),
      row(Method::kBaseline, 1.0, 0, 0.5, 0.5, 0.5)};
  const auto s = summarize(rows);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].method, Method::kEop);
  EXPECT_EQ(s[0].feasible_folds, 2);
  EXPECT_EQ(s[0].infeasible_folds, 1);
  EXPECT_NEAR(s[0].prd.mean, 0.2, 1e-15);
  EXPECT_NEAR(s[0].prd.sd, std::sqrt(0.02), 1e-15);
  EXPECT_EQ(s[0].nrd.sd, 0.0);
  EXPECT_EQ(s[0].min_group_utility.mean, 2.0);
  EXPECT_EQ(s[1].prd.sd, 0.0);  // single fold
  EXPECT_EQ(summary_header(';').substr(0, 22), "method;epsilon;feasibl");
}

TEST(SweepPropertyTest, DetectsEachViolation) {
  std::vector<SweepRow> good = {
      row(Method::kEop, 1.0, 0, 0, 0, 1.0),      row(Method::kEop, 2.0, 0, 0, 0, 1.5),
      row(Method::kBaseline, 1.0, 0, 0.3, 0.3, 1.0), row(Method::kBaseline, 2.0, 0, 0.2, 0.3, 1.5)};
  const auto ok = check_sweep_properties(good);
  EXPECT_TRUE(ok.eop_utility_monotone);
  EXPECT_TRUE(ok.baseline_residuals_controlled);
  EXPECT_TRUE(ok.eop_not_worse);
  EXPECT_TRUE(ok.violations.empty());

  auto bad = good;
  bad[1].min_group_utility = 0.9;   // eop drops, and falls below baseline 1.5
  bad[3].nrd = 0.4;                 // baseline NRD grows
  const auto report = check_sweep_properties(bad);
  EXPECT_FALSE(report.eop_utility_monotone);
  EXPECT_FALSE(report.baseline_residuals_controlled);
  EXPECT_FALSE(report.eop_not_worse);
  EXPECT_EQ(report.violations.size(), 3u);
}

TEST(SweepPropertyTest, InfeasibleCellsAreIgnored) {
  const std::vector<SweepRow> rows = {
      row(Method::kEop, 1.0, 0, 0, 0, 5.0, SolverStatus::kInfeasible),
      row(Method::kEop, 2.0, 0, 0, 0, 1.0),
      row(Method::kBaseline, 1.0, 0, 0.9, 0.9, 0.0, SolverStatus::kInfeasible),
      row(Method::kBaseline, 2.0, 0, 0.2, 0.2, 1.0)};
  const auto report = check_sweep_properties(rows);
  EXPECT_TRUE(report.eop_utility_monotone);
  EXPECT_TRUE(report.baseline_residuals_controlled);
  EXPECT_TRUE(report.eop_not_worse);
}

TEST(SweepRecordTest, HeaderMatchesRecordWidth) {
  SweepRow r = row(Method::kBaseline, 0.5, 1, 0.1, 0.2, 0.3);
  r.group_utility = {{0, 0.3}, {1, 0.4}};
  const auto header = sweep_header('\t');
  const auto record = to_record(r, '\t');
  EXPECT_EQ(std::count(header.begin(), header.end(), '\t'),
            std::count(record.begin(), record.end(), '\t'));
  EXPECT_EQ(record.substr(0, 16), "baseline\t0.5\t1\to");
}

}  // namespace
}  // namespace eopfair
