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

#include "eopfair/solver/lasso.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "eopfair/core/random.hpp"

namespace eopfair {
namespace {

constexpr double kCoordinateTolerance = 1e-13;
constexpr int kMaxSweeps = 200000;
constexpr double kDivergence = 1e12;

}  // namespace

double soft_threshold(double value, double threshold) {
  if (value > threshold) return value - threshold;
  if (value < -threshold) return value + threshold;
  return 0.0;
}

RegularizedLoss::RegularizedLoss(const Dataset& data, double lambda) : lambda_(lambda) {
  if (lambda < 0.0) throw std::invalid_argument("lambda must be non-negative");
  const auto n = static_cast<double>(data.size());
  const Eigen::MatrixXd& x = data.features();
  gram_ = (x.transpose() * x) / n;
  cross_ = (x.transpose() * data.targets()) / n;
  yy_ = data.targets().squaredNorm() / n;
}

double RegularizedLoss::value(const Eigen::VectorXd& theta) const {
  return theta.dot(gram_ * theta) - 2.0 * cross_.dot(theta) + yy_ +
         lambda_ * theta.lpNorm<1>();
}

Eigen::VectorXd RegularizedLoss::minimize_tilted(const Eigen::VectorXd& tilt,
                                                 Eigen::VectorXd theta,
                                                 int* sweeps) const {
  const Eigen::Index k = cross_.size();
  if (theta.size() != k) theta = Eigen::VectorXd::Zero(k);
  const Eigen::VectorXd linear = 2.0 * cross_ + tilt;
  Eigen::VectorXd a_theta = gram_ * theta;

  // One pass over `coords`; returns the largest scaled coordinate move.
  auto sweep = [&](const std::vector<Eigen::Index>& coords) {
    double largest = 0.0;
    for (Eigen::Index j : coords) {
      const double ajj = gram_(j, j);
      const double z = linear(j) - 2.0 * (a_theta(j) - ajj * theta(j));
      double updated;
      if (ajj <= 0.0) {
        if (std::abs(z) > lambda_) {
          throw std::domain_error("tilted loss is unbounded along a zero feature");
        }
        updated = 0.0;
      } else {
        updated = soft_threshold(z, lambda_) / (2.0 * ajj);
      }
      const double delta = updated - theta(j);
      if (delta != 0.0) {
        a_theta += delta * gram_.col(j);
        theta(j) = updated;
        largest = std::max(largest, std::abs(delta) * std::sqrt(std::max(ajj, 0.0)));
      }
    }
    return largest;
  };

  std::vector<Eigen::Index> all(static_cast<std::size_t>(k));
  std::iota(all.begin(), all.end(), Eigen::Index{0});
  int count = 0;
  while (count < kMaxSweeps) {
    ++count;
    const double scale = 1.0 + theta.lpNorm<Eigen::Infinity>();
    if (sweep(all) <= kCoordinateTolerance * scale) break;
    // Iterate on the active set until it settles, then re-check everything.
    std::vector<Eigen::Index> active;
    for (Eigen::Index j = 0; j < k; ++j) {
      if (theta(j) != 0.0) active.push_back(j);
    }
    while (count < kMaxSweeps) {
      ++count;
      if (sweep(active) <= kCoordinateTolerance * (1.0 + theta.lpNorm<Eigen::Infinity>())) {
        break;
      }
    }
    if (!(theta.lpNorm<Eigen::Infinity>() < kDivergence)) {
      throw std::domain_error("coordinate descent diverged; loss has unbounded directions");
    }
  }
  if (sweeps != nullptr) *sweeps = count;
  return theta;
}

bool RegularizedLoss::bounded_sublevel_sets() const {
  if (lambda_ > 0.0) return true;
  if (gram_.size() == 0) return true;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram_, Eigen::EigenvaluesOnly);
  const double top = eig.eigenvalues().maxCoeff();
  return top > 0.0 && eig.eigenvalues().minCoeff() > 1e-12 * top;
}

double mean_squared_error(const Dataset& data, const Eigen::VectorXd& theta) {
  return (data.features() * theta - data.targets()).squaredNorm() /
         static_cast<double>(data.size());
}

double regularized_loss(const Dataset& data, const Eigen::VectorXd& theta,
                        double lambda) {
  return mean_squared_error(data, theta) + lambda * theta.lpNorm<1>();
}

LassoFit fit_l1_regularized(const Dataset& data, double lambda) {
  const RegularizedLoss loss(data, lambda);
  LassoFit fit;
  fit.weights = loss.minimize_tilted(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(loss.dim())),
                                     Eigen::VectorXd::Zero(static_cast<Eigen::Index>(loss.dim())),
                                     &fit.sweeps);
  fit.objective = regularized_loss(data, fit.weights, lambda);
  return fit;
}

std::vector<std::vector<std::size_t>> shuffled_folds(std::size_t n, int folds,
                                                     std::uint64_t seed) {
  if (folds < 2) throw std::invalid_argument("need at least two folds");
  if (n < static_cast<std::size_t>(folds)) {
    throw std::invalid_argument("fewer rows than folds");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(order);
  std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(folds));
  for (std::size_t i = 0; i < n; ++i) out[i % out.size()].push_back(order[i]);
  for (auto& fold : out) std::sort(fold.begin(), fold.end());
  return out;
}

std::vector<LambdaScore> cross_validate_lambda(const Dataset& data,
                                               std::span<const double> grid, int folds,
                                               std::uint64_t seed) {
  if (grid.empty()) throw std::invalid_argument("empty lambda grid");
  const auto split = shuffled_folds(data.size(), folds, seed);
  std::vector<LambdaScore> scores;
  for (double lambda : grid) scores.push_back({lambda, 0.0});
  for (std::size_t f = 0; f < split.size(); ++f) {
    std::vector<char> held(data.size(), 0);
    for (auto i : split[f]) held[i] = 1;
    std::vector<std::size_t> train;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (!held[i]) train.push_back(i);
    }
    const Dataset train_set = data.subset(train);
    const Dataset valid_set = data.subset(split[f]);
    for (auto& score : scores) {
      const auto fit = fit_l1_regularized(train_set, score.lambda);
      score.validation_mse += mean_squared_error(valid_set, fit.weights) /
                              static_cast<double>(split.size());
    }
  }
  return scores;
}

double select_lambda(const Dataset& data, std::span<const double> grid, int folds,
                     std::uint64_t seed) {
  auto scores = cross_validate_lambda(data, grid, folds, seed);
  std::stable_sort(scores.begin(), scores.end(),
                   [](const LambdaScore& a, const LambdaScore& b) { return a.lambda < b.lambda; });
  const LambdaScore* best = &scores.front();
  for (const auto& s : scores) {
    if (s.validation_mse < best->validation_mse) best = &s;
  }
  return best->lambda;
}

}  // namespace eopfair
