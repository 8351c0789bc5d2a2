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

#include "eopfair/solver/eop_training.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "eopfair/solver/simplex.hpp"

namespace eopfair {
namespace {

constexpr int kMaxPricingSteps = 400;
// Fraction of the optimality tolerance granted to each pricing solve.
constexpr double kPricingShare = 0.05;

double min_over(const std::vector<AffineObjective>& objectives,
                const Eigen::VectorXd& theta) {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& g : objectives) lo = std::min(lo, g(theta));
  return lo;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be non-negative");
  if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be non-negative");
  if (!(tolerance_feasibility > 0.0) || !(tolerance_optimality > 0.0)) {
    throw std::invalid_argument("tolerances must be positive");
  }
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be positive");
  if (!(dual_bracket_low > 0.0) || !(dual_bracket_high > dual_bracket_low)) {
    throw std::invalid_argument("invalid multiplier bracket");
  }
}

std::string to_string(SolverStatus status) {
  switch (status) {
    case SolverStatus::kOptimal: return "optimal";
    case SolverStatus::kInfeasible: return "infeasible";
    case SolverStatus::kMaxIterations: return "max_iterations";
  }
  return "unknown";
}

std::string solver_record_header() {
  return "epsilon,lambda,sigma,loss,status,iterations";
}

std::string to_record(const SolverResult& result, const SolverConfig& config) {
  std::ostringstream out;
  out.precision(17);
  out << config.epsilon << ',' << config.lambda << ',' << result.sigma << ','
      << result.loss << ',' << to_string(result.status) << ',' << result.iterations;
  return out.str();
}

std::map<GroupId, AffineObjective> group_utility_objectives(const Dataset& data,
                                                            const UtilitySpec& spec) {
  std::map<GroupId, AffineObjective> out;
  const Eigen::MatrixXd& x = data.features();
  const Eigen::VectorXd& y = data.targets();
  for (const auto& [group, rows] : data.group_index()) {
    const AffineUtility& u = spec.for_group(group);
    AffineObjective g{Eigen::VectorXd::Zero(x.cols()), 0.0};
    for (auto i : rows) {
      const auto r = static_cast<Eigen::Index>(i);
      g.slope += (u.alpha * y(r) + u.beta) * x.row(r).transpose();
      g.offset += u.gamma * y(r) + u.delta;
    }
    const auto n = static_cast<double>(rows.size());
    g.slope /= n;
    g.offset /= n;
    out.emplace(group, std::move(g));
  }
  return out;
}

AffineObjective mean_residual_objective(const Dataset& data) {
  const auto n = static_cast<double>(data.size());
  return {data.features().colwise().sum().transpose() / n, -data.targets().sum() / n};
}

PricingResult maximize_on_sublevel_set(const RegularizedLoss& loss,
                                       const AffineObjective& objective, double epsilon,
                                       const Eigen::VectorXd& anchor,
                                       const SolverConfig& config) {
  const Eigen::VectorXd& s = objective.slope;
  PricingResult out{anchor, objective(anchor), std::numeric_limits<double>::infinity()};
  if (s.lpNorm<Eigen::Infinity>() == 0.0) {
    out.upper_bound = out.value;
    return out;
  }
  const double target_gap = kPricingShare * config.tolerance_optimality;

  double t_lo = 0.0;
  Eigen::VectorXd theta_lo = anchor;
  double t_hi = std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  double t = 1.0;
  for (int step = 0; step < kMaxPricingSteps; ++step) {
    const Eigen::VectorXd theta = loss.minimize_tilted(t * s, theta_lo);
    const double q = loss.value(theta);
    // Lagrangian bound: any feasible point satisfies
    // s'theta' <= s'theta_t + (epsilon - q(theta_t)) / t.
    upper = std::min(upper, s.dot(theta) + (epsilon - q) / t);
    if (q <= epsilon) {
      t_lo = t;
      theta_lo = theta;
    } else {
      t_hi = t;
    }
    if (upper - s.dot(theta_lo) <= target_gap) break;
    if (std::isinf(t_hi)) {
      if (t >= config.dual_bracket_high) break;
      t *= 4.0;
    } else if (t_lo == 0.0) {
      if (t <= config.dual_bracket_low) break;
      t /= 4.0;
    } else {
      if (t_hi / t_lo - 1.0 < 1e-15) break;
      t = std::sqrt(t_lo * t_hi);
    }
  }
  out.theta = theta_lo;
  out.value = objective(theta_lo);
  out.upper_bound = std::max(upper + objective.offset, out.value);
  return out;
}

SolverResult solve_max_min(const Dataset& data,
                           const std::vector<AffineObjective>& objectives,
                           const SolverConfig& config) {
  config.validate();
  if (objectives.empty()) throw std::invalid_argument("no objectives to maximize");
  const RegularizedLoss loss(data, config.lambda);
  if (!loss.bounded_sublevel_sets()) {
    throw std::invalid_argument(
        "loss constraint does not bound the weights: use lambda > 0 or a "
        "full-rank design");
  }
  const auto k = static_cast<Eigen::Index>(loss.dim());
  const Eigen::VectorXd anchor =
      loss.minimize_tilted(Eigen::VectorXd::Zero(k), Eigen::VectorXd::Zero(k));
  const double epsilon_min = loss.value(anchor);

  SolverResult result;
  auto finish = [&](const Eigen::VectorXd& theta, SolverStatus status) {
    result.weights = theta;
    result.sigma = min_over(objectives, theta);
    result.loss = regularized_loss(data, theta, config.lambda);
    result.feasibility_residual = std::max(0.0, result.loss - config.epsilon);
    result.status = status;
    return result;
  };

  if (config.epsilon < epsilon_min - config.tolerance_feasibility) {
    result.dual_bound = std::numeric_limits<double>::quiet_NaN();
    return finish(anchor, SolverStatus::kInfeasible);
  }
  if (config.epsilon <= epsilon_min + config.tolerance_feasibility) {
    finish(anchor, SolverStatus::kOptimal);
    result.dual_bound = result.sigma;
    return result;
  }

  std::vector<Eigen::VectorXd> columns{anchor};
  double dual_bound = std::numeric_limits<double>::infinity();
  for (const auto& g : objectives) {
    auto priced = maximize_on_sublevel_set(loss, g, config.epsilon, anchor, config);
    dual_bound = std::min(dual_bound, priced.upper_bound);
    columns.push_back(std::move(priced.theta));
  }

  const auto m = static_cast<Eigen::Index>(objectives.size());
  Eigen::VectorXd best = anchor;
  double best_value = min_over(objectives, anchor);
  for (const auto& c : columns) {
    const double v = min_over(objectives, c);
    if (v > best_value) {
      best_value = v;
      best = c;
    }
  }

  SolverStatus status = SolverStatus::kMaxIterations;
  int iteration = 0;
  while (iteration < config.max_iterations) {
    ++iteration;
    if (dual_bound - best_value <= config.tolerance_optimality) {
      status = SolverStatus::kOptimal;
      break;
    }
    Eigen::MatrixXd payoff(m, static_cast<Eigen::Index>(columns.size()));
    for (Eigen::Index r = 0; r < m; ++r) {
      for (Eigen::Index j = 0; j < payoff.cols(); ++j) {
        payoff(r, j) = objectives[static_cast<std::size_t>(r)](
            columns[static_cast<std::size_t>(j)]);
      }
    }
    const auto game = solve_matrix_game(payoff);
    Eigen::VectorXd mixture = Eigen::VectorXd::Zero(k);
    for (std::size_t j = 0; j < columns.size(); ++j) {
      mixture += game.column_strategy(static_cast<Eigen::Index>(j)) * columns[j];
    }
    const double mixed_value = min_over(objectives, mixture);
    if (mixed_value > best_value) {
      best_value = mixed_value;
      best = mixture;
    }
    if (dual_bound - best_value <= config.tolerance_optimality) {
      status = SolverStatus::kOptimal;
      break;
    }
    AffineObjective combined{Eigen::VectorXd::Zero(k), 0.0};
    for (Eigen::Index r = 0; r < m; ++r) {
      const auto& g = objectives[static_cast<std::size_t>(r)];
      combined.slope += game.row_strategy(r) * g.slope;
      combined.offset += game.row_strategy(r) * g.offset;
    }
    auto priced = maximize_on_sublevel_set(loss, combined, config.epsilon, best, config);
    dual_bound = std::min(dual_bound, priced.upper_bound);
    columns.push_back(std::move(priced.theta));
  }
  result.iterations = iteration;
  result.dual_bound = dual_bound;
  return finish(best, status);
}

SolverResult solve_eop_training(const Dataset& data, const UtilitySpec& spec,
                                const SolverConfig& config) {
  std::vector<AffineObjective> objectives;
  for (auto& [group, g] : group_utility_objectives(data, spec)) {
    objectives.push_back(std::move(g));
  }
  return solve_max_min(data, objectives, config);
}

SolverResult solve_baseline(const Dataset& data, const SolverConfig& config) {
  return solve_max_min(data, {mean_residual_objective(data)}, config);
}

}  // namespace eopfair
