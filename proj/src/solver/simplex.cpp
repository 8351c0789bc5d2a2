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

#include "eopfair/solver/simplex.hpp"

#include <limits>
#include <stdexcept>
#include <vector>

namespace eopfair {
namespace {

constexpr double kPivotTolerance = 1e-12;
constexpr int kMaxPivots = 100000;

}  // namespace

LinearProgramSolution maximize_from_origin(const Eigen::MatrixXd& a,
                                           const Eigen::VectorXd& b,
                                           const Eigen::VectorXd& c) {
  const Eigen::Index rows = a.rows();
  const Eigen::Index vars = a.cols();
  if (b.size() != rows || c.size() != vars) {
    throw std::invalid_argument("linear program dimensions disagree");
  }
  if ((b.array() < 0.0).any()) {
    throw std::invalid_argument("right-hand side must be non-negative");
  }
  const Eigen::Index cols = vars + rows + 1;
  const Eigen::Index rhs = cols - 1;
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(rows + 1, cols);
  t.topLeftCorner(rows, vars) = a;
  t.block(0, vars, rows, rows).setIdentity();
  t.col(rhs).head(rows) = b;
  t.row(rows).head(vars) = -c.transpose();

  std::vector<Eigen::Index> basis(static_cast<std::size_t>(rows));
  for (Eigen::Index r = 0; r < rows; ++r) basis[static_cast<std::size_t>(r)] = vars + r;

  LinearProgramSolution out;
  for (;;) {
    Eigen::Index entering = -1;
    for (Eigen::Index j = 0; j < rhs; ++j) {
      if (t(rows, j) < -kPivotTolerance) {
        entering = j;
        break;
      }
    }
    if (entering < 0) break;
    Eigen::Index leaving = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (t(r, entering) <= kPivotTolerance) continue;
      const double ratio = t(r, rhs) / t(r, entering);
      if (leaving < 0) {
        leaving = r;
        best_ratio = ratio;
        continue;
      }
      const bool better = ratio < best_ratio - kPivotTolerance;
      const bool tie = !better && ratio <= best_ratio + kPivotTolerance &&
                       basis[static_cast<std::size_t>(r)] <
                           basis[static_cast<std::size_t>(leaving)];
      if (better || tie) {
        leaving = r;
        best_ratio = std::min(best_ratio, ratio);
      }
    }
    if (leaving < 0) throw std::domain_error("linear program is unbounded");
    if (++out.pivots > kMaxPivots) throw std::runtime_error("simplex pivot limit reached");
    t.row(leaving) /= t(leaving, entering);
    for (Eigen::Index r = 0; r <= rows; ++r) {
      if (r != leaving && t(r, entering) != 0.0) {
        t.row(r) -= t(r, entering) * t.row(leaving);
      }
    }
    basis[static_cast<std::size_t>(leaving)] = entering;
  }

  out.x = Eigen::VectorXd::Zero(vars);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Eigen::Index j = basis[static_cast<std::size_t>(r)];
    if (j < vars) out.x(j) = t(r, rhs);
  }
  out.duals = t.row(rows).segment(vars, rows).transpose();
  out.objective = t(rows, rhs);
  return out;
}

MatrixGameSolution solve_matrix_game(const Eigen::MatrixXd& payoff) {
  if (payoff.size() == 0) throw std::invalid_argument("empty payoff matrix");
  // Shift payoffs to be at least 1 so the game value is positive. With
  // P > 0, x = w / v solves max 1'x s.t. P'x <= 1, and the row duals give
  // the column strategy scaled the same way.
  const double shift = 1.0 - payoff.minCoeff();
  const Eigen::MatrixXd p = payoff.array() + shift;
  const auto lp = maximize_from_origin(p.transpose(), Eigen::VectorXd::Ones(p.cols()),
                                       Eigen::VectorXd::Ones(p.rows()));
  MatrixGameSolution out;
  const double total = lp.x.sum();
  out.row_strategy = lp.x / total;
  Eigen::VectorXd y = lp.duals.cwiseMax(0.0);
  out.column_strategy = y / y.sum();
  out.value = 1.0 / total - shift;
  return out;
}

}  // namespace eopfair
