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


// Small dense linear programs and zero-sum matrix games.

#ifndef EOPFAIR_SOLVER_SIMPLEX_HPP_
#define EOPFAIR_SOLVER_SIMPLEX_HPP_

#include <Eigen/Dense>

namespace eopfair {

struct LinearProgramSolution {
  Eigen::VectorXd x;
  // Shadow price of each inequality row.
  Eigen::VectorXd duals;
  double objective = 0.0;
  int pivots = 0;
};

// maximize c'x subject to A x <= b, x >= 0, with b >= 0 so the origin is a
// feasible starting vertex. Tableau simplex with Bland's rule. Throws
// std::domain_error when the objective is unbounded.
LinearProgramSolution maximize_from_origin(const Eigen::MatrixXd& a,
                                           const Eigen::VectorXd& b,
                                           const Eigen::VectorXd& c);

struct MatrixGameSolution {
  double value = 0.0;
  Eigen::VectorXd row_strategy;     // minimizer, one weight per row
  Eigen::VectorXd column_strategy;  // maximizer, one weight per column
};

// Mixed equilibrium of the game where the column player receives
// payoff(i, j) from the row player: value = max_col min_row.
MatrixGameSolution solve_matrix_game(const Eigen::MatrixXd& payoff);

}  // namespace eopfair

#endif  // EOPFAIR_SOLVER_SIMPLEX_HPP_
