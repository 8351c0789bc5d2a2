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
#include "eopfair/solver/eop_training.hpp"
#include "eopfair/solver/lasso.hpp"
#include "eopfair/solver/simplex.hpp"
#include "oracles/grid_oracle.hpp"

namespace eopfair {
namespace {

Dataset one_feature(const std::vector<double>& x, const std::vector<double>& y,
                    const std::vector<GroupId>& z) {
  std::vector<Instance> rows;
  for (std::size_t i = 0; i < x.size(); ++i) rows.push_back({{x[i]}, z[i], y[i]});
  return Dataset(rows, TaskMode::kRegression);
}

TEST(SoftThresholdTest, Values) {
  EXPECT_EQ(soft_threshold(3.0, 1.0), 2.0);
  EXPECT_EQ(soft_threshold(-3.0, 1.0), -2.0);
  EXPECT_EQ(soft_threshold(0.5, 1.0), 0.0);
  EXPECT_EQ(soft_threshold(-1.0, 1.0), 0.0);
}

TEST(LassoTest, NoiselessIdentityWithoutPenalty) {
  const auto data = one_feature({1, 2, 3}, {1, 2, 3}, {0, 1, 0});
  const auto fit = fit_l1_regularized(data, 0.0);
  EXPECT_NEAR(fit.weights(0), 1.0, 1e-12);
  EXPECT_NEAR(fit.objective, 0.0, 1e-12);
}

TEST(LassoTest, LargePenaltyZeroesTheWeight) {
  // a = 1, c = 0.5: the weight vanishes once lambda >= 2|c| = 1.
  const auto data = one_feature({1, -1}, {1, 0}, {0, 1});
  for (double lambda : {1.0, 1.5, 10.0}) {
    const auto fit = fit_l1_regularized(data, lambda);
    EXPECT_EQ(fit.weights(0), 0.0);
    EXPECT_NEAR(fit.objective, 0.5, 1e-15);
  }
}

TEST(LassoTest, ClosedFormShrinkage) {
  // theta = (2c - lambda) / (2a) = (1 - 0.2) / 2.
  const auto data = one_feature({1, -1}, {1, 0}, {0, 1});
  const auto fit = fit_l1_regularized(data, 0.2);
  EXPECT_NEAR(fit.weights(0), 0.4, 1e-12);
  EXPECT_NEAR(fit.objective, regularized_loss(data, fit.weights, 0.2), 1e-14);
}

TEST(LassoTest, GramValueMatchesRowByRowLoss) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    ToyConfig cfg;
    cfg.seed = seed;
    cfg.n = 9;
    cfg.k = 3;
    cfg.group0 = 4;
    cfg.group1 = 5;
    cfg.noise = 0.1;
    const auto toy = make_toy_instance(cfg);
    const RegularizedLoss loss(toy.data, 0.07);
    const Eigen::VectorXd theta = Eigen::VectorXd::LinSpaced(3, -1.0, 2.0);
    EXPECT_NEAR(loss.value(theta), regularized_loss(toy.data, theta, 0.07), 1e-12);
  }
}

TEST(LassoTest, MatchesOneDimensionalGrid) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    ToyConfig cfg;
    cfg.seed = seed;
    cfg.n = 8;
    cfg.group0 = 3;
    cfg.group1 = 5;
    cfg.noise = 0.2;
    const auto toy = make_toy_instance(cfg);
    const auto fit = fit_l1_regularized(toy.data, 0.05);
    const auto problem = testing::baseline_grid_problem(toy.data, 0.05, 1.0);
    const double grid = testing::grid_min_loss(problem);
    EXPECT_LE(fit.objective, grid + 1e-12);
    EXPECT_NEAR(fit.objective, grid, 1e-6);
  }
}

TEST(LassoTest, TiltedProblemWithoutCurvatureIsUnbounded) {
  const auto data = one_feature({0, 0}, {1, 0}, {0, 1});
  const RegularizedLoss loss(data, 0.1);
  // Zero features: the tilt 1 * theta beats the penalty 0.1 * |theta|.
  EXPECT_THROW(loss.minimize_tilted(Eigen::VectorXd::Constant(1, 1.0), Eigen::VectorXd::Zero(1)),
               std::domain_error);
}

TEST(FoldTest, FoldsPartitionTheRows) {
  const auto folds = shuffled_folds(23, 5, 7);
  ASSERT_EQ(folds.size(), 5u);
  std::set<std::size_t> seen;
  for (const auto& f : folds) {
    EXPECT_TRUE(f.size() == 4 || f.size() == 5);
    seen.insert(f.begin(), f.end());
  }
  EXPECT_EQ(seen.size(), 23u);
  EXPECT_EQ(shuffled_folds(23, 5, 7), folds);
  EXPECT_NE(shuffled_folds(23, 5, 8), folds);
  EXPECT_THROW(shuffled_folds(3, 5, 0), std::invalid_argument);
}

TEST(SelectLambdaTest, TiesGoToTheSmallestValue) {
  // Zero targets: every lambda fits theta = 0 and scores the same.
  const auto data = one_feature({1, 2, 3, 4, 5, 6}, {0, 0, 0, 0, 0, 0}, {0, 1, 0, 1, 0, 1});
  const std::vector<double> grid = {0.5, 0.1, 0.3};
  EXPECT_EQ(select_lambda(data, grid, 3, 0), 0.1);
}

TEST(SelectLambdaTest, NoiselessDataPrefersNoPenalty) {
  const auto data = one_feature({1, 2, 3, 4, 5, 6}, {1, 2, 3, 4, 5, 6}, {0, 1, 0, 1, 0, 1});
  const std::vector<double> grid = {1.0, 0.0, 0.1};
  const auto scores = cross_validate_lambda(data, grid, 3, 0);
  ASSERT_EQ(scores.size(), 3u);
  EXPECT_EQ(scores[0].lambda, 1.0);
  EXPECT_NEAR(scores[1].validation_mse, 0.0, 1e-20);
  EXPECT_EQ(select_lambda(data, grid, 3, 0), 0.0);
}

TEST(SimplexTest, TextbookProgram) {
  // max 3x + 5y  s.t.  x <= 4, 2y <= 12, 3x + 2y <= 18.
  Eigen::MatrixXd a(3, 2);
  a << 1, 0, 0, 2, 3, 2;
  const Eigen::VectorXd b = Eigen::Vector3d(4, 12, 18);
  const Eigen::VectorXd c = Eigen::Vector2d(3, 5);
  const auto lp = maximize_from_origin(a, b, c);
  EXPECT_NEAR(lp.objective, 36.0, 1e-12);
  EXPECT_NEAR(lp.x(0), 2.0, 1e-12);
  EXPECT_NEAR(lp.x(1), 6.0, 1e-12);
  EXPECT_NEAR(lp.duals(0), 0.0, 1e-12);
  EXPECT_NEAR(lp.duals(1), 1.5, 1e-12);
  EXPECT_NEAR(lp.duals(2), 1.0, 1e-12);
}

TEST(SimplexTest, UnboundedProgram) {
  Eigen::MatrixXd a(1, 2);
  a << 1, -1;
  EXPECT_THROW(maximize_from_origin(a, Eigen::VectorXd::Ones(1), Eigen::Vector2d(1, 1)),
               std::domain_error);
}

TEST(MatrixGameTest, MatchingPennies) {
  Eigen::MatrixXd p(2, 2);
  p << 1, -1, -1, 1;
  const auto g = solve_matrix_game(p);
  EXPECT_NEAR(g.value, 0.0, 1e-12);
  EXPECT_NEAR(g.row_strategy(0), 0.5, 1e-12);
  EXPECT_NEAR(g.column_strategy(0), 0.5, 1e-12);
}

TEST(MatrixGameTest, SaddlePoint) {
  // Column 1 guarantees 2 against either row.
  Eigen::MatrixXd p(2, 2);
  p << 1, 3, 0, 2;
  const auto g = solve_matrix_game(p);
  EXPECT_NEAR(g.value, 2.0, 1e-12);
  EXPECT_NEAR(g.column_strategy(1), 1.0, 1e-12);
  EXPECT_NEAR(g.row_strategy(1), 1.0, 1e-12);
}

TEST(MatrixGameTest, StrategiesCertifyTheValue) {
  Eigen::MatrixXd p(3, 4);
  p << 0.3, -1.2, 2.0, 0.0, 1.5, 0.7, -0.4, 0.2, -2.0, 1.1, 0.6, 0.9;
  const auto g = solve_matrix_game(p);
  EXPECT_NEAR(g.row_strategy.sum(), 1.0, 1e-12);
  EXPECT_NEAR(g.column_strategy.sum(), 1.0, 1e-12);
  EXPECT_GE(g.row_strategy.minCoeff(), -1e-15);
  EXPECT_GE(g.column_strategy.minCoeff(), -1e-15);
  // The column strategy earns at least the value against every row and the
  // row strategy concedes at most the value to every column.
  EXPECT_GE((p * g.column_strategy).minCoeff(), g.value - 1e-12);
  EXPECT_LE((p.transpose() * g.row_strategy).maxCoeff(), g.value + 1e-12);
}

ToyInstance toy(std::uint64_t seed, std::size_t k) {
  ToyConfig cfg;
  cfg.seed = seed;
  cfg.n = 10;
  cfg.k = k;
  cfg.group0 = 6;
  cfg.group1 = 4;
  cfg.noise = 0.1;
  return make_toy_instance(cfg);
}

SolverConfig config_for(const Dataset& data, double lambda, double factor) {
  SolverConfig cfg;
  cfg.lambda = lambda;
  cfg.epsilon = factor * fit_l1_regularized(data, lambda).objective;
  return cfg;
}

TEST(GroupObjectiveTest, MatchesDirectAverages) {
  const auto t = toy(3, 2);
  const auto spec = UtilitySpec::communities_crime();
  const auto objectives = group_utility_objectives(t.data, spec);
  const Eigen::VectorXd theta = Eigen::Vector2d(0.4, -0.3);
  const Eigen::VectorXd yhat = t.data.features() * theta;
  for (const auto& [g, rows] : t.data.group_index()) {
    double sum = 0.0;
    for (auto i : rows) {
      sum += spec.evaluate(g, t.data.targets()(static_cast<Eigen::Index>(i)),
                           yhat(static_cast<Eigen::Index>(i)));
    }
    EXPECT_NEAR(objectives.at(g)(theta), sum / static_cast<double>(rows.size()), 1e-12);
  }
  double residual = 0.0;
  for (Eigen::Index i = 0; i < yhat.size(); ++i) residual += yhat(i) - t.data.targets()(i);
  EXPECT_NEAR(mean_residual_objective(t.data)(theta), residual / 10.0, 1e-12);
}

TEST(EopTrainingTest, MatchesGridOracleInOneDimension) {
  const auto spec = UtilitySpec::communities_crime();
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto t = toy(seed, 1);
    const auto cfg = config_for(t.data, 0.05, 1.5);
    const auto result = solve_eop_training(t.data, spec, cfg);
    ASSERT_EQ(result.status, SolverStatus::kOptimal);
    const auto oracle =
        testing::grid_search(testing::eop_grid_problem(t.data, spec, cfg.lambda, cfg.epsilon));
    ASSERT_TRUE(oracle.feasible);
    EXPECT_NEAR(result.sigma, oracle.value, 1e-3);
    EXPECT_GE(result.sigma, oracle.value - 1e-9);
    EXPECT_LE(result.feasibility_residual, 1e-8);
  }
}

TEST(EopTrainingTest, MatchesGridOracleInTwoDimensions) {
  const auto spec = UtilitySpec::communities_crime();
  for (std::uint64_t seed = 10; seed < 13; ++seed) {
    const auto t = toy(seed, 2);
    const auto cfg = config_for(t.data, 0.05, 1.5);
    const auto result = solve_eop_training(t.data, spec, cfg);
    ASSERT_EQ(result.status, SolverStatus::kOptimal);
    const auto oracle =
        testing::grid_search(testing::eop_grid_problem(t.data, spec, cfg.lambda, cfg.epsilon));
    ASSERT_TRUE(oracle.feasible);
    EXPECT_NEAR(result.sigma, oracle.value, 1e-3);
    EXPECT_LE(result.feasibility_residual, 1e-8);
  }
}

TEST(BaselineTest, MatchesGridOracle) {
  for (std::uint64_t seed = 20; seed < 24; ++seed) {
    const auto t = toy(seed, 1 + seed % 2);
    const auto cfg = config_for(t.data, 0.05, 2.0);
    const auto result = solve_baseline(t.data, cfg);
    ASSERT_EQ(result.status, SolverStatus::kOptimal);
    const auto oracle =
        testing::grid_search(testing::baseline_grid_problem(t.data, cfg.lambda, cfg.epsilon));
    EXPECT_NEAR(result.sigma, oracle.value, 1e-3);
    EXPECT_LE(result.feasibility_residual, 1e-8);
  }
}

TEST(EopTrainingTest, EpsilonBelowMinimumIsInfeasible) {
  const auto t = toy(1, 2);
  const auto cfg = config_for(t.data, 0.05, 0.9);
  const auto result = solve_eop_training(t.data, UtilitySpec::communities_crime(), cfg);
  EXPECT_EQ(result.status, SolverStatus::kInfeasible);
  EXPECT_GT(result.feasibility_residual, 0.0);
  EXPECT_EQ(to_string(result.status), "infeasible");
}

TEST(EopTrainingTest, EpsilonAtMinimumReturnsTheLassoFit) {
  const auto t = toy(2, 2);
  const auto fit = fit_l1_regularized(t.data, 0.05);
  SolverConfig cfg;
  cfg.lambda = 0.05;
  cfg.epsilon = fit.objective;
  const auto result = solve_eop_training(t.data, UtilitySpec::communities_crime(), cfg);
  EXPECT_EQ(result.status, SolverStatus::kOptimal);
  EXPECT_LE((result.weights - fit.weights).norm(), 1e-9);
  EXPECT_EQ(result.sigma, result.dual_bound);
}

TEST(EopTrainingTest, ValueIsMonotoneInEpsilon) {
  const auto spec = UtilitySpec::communities_crime();
  for (std::uint64_t seed = 30; seed < 33; ++seed) {
    const auto t = toy(seed, 2);
    double previous = -INFINITY;
    for (double factor : {1.0, 1.1, 1.3, 1.6, 2.0, 3.0}) {
      const auto result = solve_eop_training(t.data, spec, config_for(t.data, 0.05, factor));
      ASSERT_EQ(result.status, SolverStatus::kOptimal);
      EXPECT_GE(result.sigma, previous - 1e-6);
      previous = result.sigma;
    }
  }
}

TEST(EopTrainingTest, ReportedQuantitiesAreConsistent) {
  const auto spec = UtilitySpec::communities_crime();
  for (std::uint64_t seed = 40; seed < 45; ++seed) {
    const auto t = toy(seed, 3);
    const auto cfg = config_for(t.data, 0.02, 1.4);
    const auto result = solve_eop_training(t.data, spec, cfg);
    ASSERT_EQ(result.status, SolverStatus::kOptimal);
    const double loss = regularized_loss(t.data, result.weights, cfg.lambda);
    EXPECT_EQ(result.loss, loss);
    EXPECT_LE(loss, cfg.epsilon + 1e-8);
    double lowest = INFINITY;
    for (const auto& [g, objective] : group_utility_objectives(t.data, spec)) {
      lowest = std::min(lowest, objective(result.weights));
    }
    EXPECT_NEAR(result.sigma, lowest, 1e-12);
    EXPECT_GE(result.dual_bound, result.sigma - 1e-12);
    EXPECT_LE(result.dual_bound - result.sigma, cfg.tolerance_optimality);
  }
}

TEST(EopTrainingTest, ScalingTheUtilityScalesTheValue) {
  const auto t = toy(50, 2);
  const auto cfg = config_for(t.data, 0.05, 1.5);
  const auto spec = UtilitySpec::communities_crime();
  const auto base = solve_eop_training(t.data, spec, cfg);
  const auto doubled = solve_eop_training(t.data, spec.scaled(2.0), cfg);
  EXPECT_NEAR(doubled.sigma, 2.0 * base.sigma, 1e-5);
}

TEST(EopTrainingTest, InvalidConfigurations) {
  const auto t = toy(4, 1);
  SolverConfig cfg;
  cfg.epsilon = 1.0;
  cfg.lambda = -0.1;
  EXPECT_THROW(solve_baseline(t.data, cfg), std::invalid_argument);
  cfg.lambda = 0.1;
  cfg.tolerance_optimality = 0.0;
  EXPECT_THROW(solve_baseline(t.data, cfg), std::invalid_argument);
  // Two identical columns and no penalty leave the weights unbounded.
  std::vector<Instance> rows;
  for (int i = 0; i < 4; ++i) rows.push_back({{0.1 * i, 0.1 * i}, i % 2, 0.2 * i});
  const Dataset collinear(rows, TaskMode::kRegression);
  SolverConfig flat;
  flat.epsilon = 1.0;
  EXPECT_THROW(solve_baseline(collinear, flat), std::invalid_argument);
  EXPECT_THROW(solve_max_min(t.data, {}, cfg), std::invalid_argument);
}

TEST(EopTrainingTest, RecordFormat) {
  SolverResult r;
  r.sigma = 0.5;
  r.loss = 0.25;
  r.iterations = 3;
  SolverConfig cfg;
  cfg.epsilon = 0.3;
  cfg.lambda = 0.1;
  EXPECT_EQ(solver_record_header(), "epsilon,lambda,sigma,loss,status,iterations");
  EXPECT_EQ(to_record(r, cfg), "0.29999999999999999,0.10000000000000001,0.5,0.25,optimal,3");
}

}  // namespace
}  // namespace eopfair
