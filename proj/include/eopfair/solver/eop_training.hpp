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


// Loss-constrained training for the worst-off group and the residual-bound
// baseline.
//
// Both problems have the form
//
//   maximize   min_k  c_k' theta + e_k
//   subject to q(theta) <= epsilon
//
// with q the regularized loss of lasso.hpp. The eop method uses one affine
// objective per group (the group's average utility); the baseline uses the
// single objective (1/n) sum_i (theta . x_i - y_i).
//
// The max-min is solved by column generation over the convex feasible set:
// a restricted zero-sum game between group weights and a finite set of
// feasible columns gives a feasible mixture (lower bound) and group weights
// w, and pricing max_theta sum_k w_k g_k(theta) on the feasible set gives an
// upper bound and a new column. Pricing is a linear objective over a convex
// sublevel set, solved by bisection on the multiplier t of the tilted lasso
// argmin q(theta) - t s' theta.

#ifndef EOPFAIR_SOLVER_EOP_TRAINING_HPP_
#define EOPFAIR_SOLVER_EOP_TRAINING_HPP_

#include <Eigen/Dense>

#include <map>
#include <string>
#include <vector>

#include "eopfair/core/dataset.hpp"
#include "eopfair/core/utility.hpp"
#include "eopfair/solver/lasso.hpp"

namespace eopfair {

struct SolverConfig {
  double epsilon = 0.0;
  double lambda = 0.0;
  double tolerance_feasibility = 1e-8;
  double tolerance_optimality = 1e-6;
  int max_iterations = 50000;
  // Multiplier search range for pricing.
  double dual_bracket_low = 1e-12;
  double dual_bracket_high = 1e12;

  void validate() const;
};

enum class SolverStatus { kOptimal, kInfeasible, kMaxIterations };

std::string to_string(SolverStatus status);

struct SolverResult {
  Eigen::VectorXd weights;
  // Achieved objective: min-group average utility, or mean residual for the
  // baseline.
  double sigma = 0.0;
  double loss = 0.0;
  double feasibility_residual = 0.0;
  int iterations = 0;
  SolverStatus status = SolverStatus::kOptimal;
  double dual_bound = 0.0;
};

std::string solver_record_header();
std::string to_record(const SolverResult& result, const SolverConfig& config);

// g(theta) = slope' theta + offset.
struct AffineObjective {
  Eigen::VectorXd slope;
  double offset = 0.0;

  double operator()(const Eigen::VectorXd& theta) const {
    return slope.dot(theta) + offset;
  }
};

// Average utility of each group as an affine function of the weights.
std::map<GroupId, AffineObjective> group_utility_objectives(const Dataset& data,
                                                            const UtilitySpec& spec);
// Mean signed residual (1/n) sum_i (theta . x_i - y_i).
AffineObjective mean_residual_objective(const Dataset& data);

struct PricingResult {
  Eigen::VectorXd theta;
  double value = 0.0;
  double upper_bound = 0.0;
};

// max objective(theta) subject to loss.value(theta) <= epsilon, starting from
// a feasible anchor. The returned theta is feasible.
PricingResult maximize_on_sublevel_set(const RegularizedLoss& loss,
                                       const AffineObjective& objective, double epsilon,
                                       const Eigen::VectorXd& anchor,
                                       const SolverConfig& config);

// max_theta min_k objectives[k](theta) subject to the loss constraint.
SolverResult solve_max_min(const Dataset& data,
                           const std::vector<AffineObjective>& objectives,
                           const SolverConfig& config);

SolverResult solve_eop_training(const Dataset& data, const UtilitySpec& spec,
                                const SolverConfig& config);
SolverResult solve_baseline(const Dataset& data, const SolverConfig& config);

}  // namespace eopfair

#endif  // EOPFAIR_SOLVER_EOP_TRAINING_HPP_
