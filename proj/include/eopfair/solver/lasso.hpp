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


// L1-regularized least squares in Gram form.
//
//   q(theta) = (1/n) sum_i (theta . x_i - y_i)^2 + lambda * |theta|_1
//            = theta' A theta - 2 p' theta + yy + lambda * |theta|_1
//
// with A = X'X / n, p = X'y / n and yy = y'y / n. Every solver in this module
// works with q through cyclic coordinate descent on the tilted problem
// min q(theta) - s' theta, which has the closed-form coordinate update
// theta_j = S(z_j, lambda) / (2 A_jj) with S the soft-threshold operator.

#ifndef EOPFAIR_SOLVER_LASSO_HPP_
#define EOPFAIR_SOLVER_LASSO_HPP_

#include <Eigen/Dense>

#include <cstdint>
#include <span>

#include "eopfair/core/dataset.hpp"

namespace eopfair {

double soft_threshold(double value, double threshold);

class RegularizedLoss {
 public:
  RegularizedLoss(const Dataset& data, double lambda);

  std::size_t dim() const { return static_cast<std::size_t>(cross_.size()); }
  double lambda() const { return lambda_; }
  const Eigen::MatrixXd& gram() const { return gram_; }
  const Eigen::VectorXd& cross() const { return cross_; }

  // q(theta) from the Gram form.
  double value(const Eigen::VectorXd& theta) const;

  // argmin_theta q(theta) - tilt' theta, warm-started from `start`. Throws
  // std::domain_error when the tilted problem is unbounded below.
  Eigen::VectorXd minimize_tilted(const Eigen::VectorXd& tilt, Eigen::VectorXd start,
                                  int* sweeps = nullptr) const;

  // Sublevel sets of q are bounded: lambda > 0 or A positive definite.
  bool bounded_sublevel_sets() const;

 private:
  Eigen::MatrixXd gram_;
  Eigen::VectorXd cross_;
  double yy_ = 0.0;
  double lambda_ = 0.0;
};

// Mean squared error and the regularized loss, evaluated row by row.
double mean_squared_error(const Dataset& data, const Eigen::VectorXd& theta);
double regularized_loss(const Dataset& data, const Eigen::VectorXd& theta, double lambda);

struct LassoFit {
  Eigen::VectorXd weights;
  // Smallest attainable regularized loss for this lambda.
  double objective = 0.0;
  int sweeps = 0;
};

LassoFit fit_l1_regularized(const Dataset& data, double lambda);

// Contiguous folds over a seeded shuffle of the rows; fold f is the
// validation split of round f.
std::vector<std::vector<std::size_t>> shuffled_folds(std::size_t n, int folds,
                                                     std::uint64_t seed);

struct LambdaScore {
  double lambda = 0.0;
  double validation_mse = 0.0;
};

// Mean held-out MSE for every grid value, in grid order.
std::vector<LambdaScore> cross_validate_lambda(const Dataset& data,
                                               std::span<const double> grid,
                                               int folds = 10, std::uint64_t seed = 0);

// Grid value with the lowest mean held-out MSE; ties go to the smaller lambda.
double select_lambda(const Dataset& data, std::span<const double> grid, int folds = 10,
                     std::uint64_t seed = 0);

}  // namespace eopfair

#endif  // EOPFAIR_SOLVER_LASSO_HPP_
