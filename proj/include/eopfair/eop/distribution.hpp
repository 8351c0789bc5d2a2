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


// Exact finite joint distributions over (group, label, prediction).

#ifndef EOPFAIR_EOP_DISTRIBUTION_HPP_
#define EOPFAIR_EOP_DISTRIBUTION_HPP_

#include <array>
#include <map>
#include <vector>

#include "eopfair/core/dataset.hpp"
#include "eopfair/core/rational.hpp"

namespace eopfair {

struct Outcome {
  GroupId group = 0;
  Rational label;       // y
  Rational prediction;  // yhat
};

bool operator<(const Outcome& a, const Outcome& b);
bool operator==(const Outcome& a, const Outcome& b);

struct WeightedOutcome {
  Outcome outcome;
  Rational mass;
};

// Masses are non-negative and sum to exactly 1; support entries are unique.
// Zero-mass entries are accepted and behave as if absent.
class FiniteJointDistribution {
 public:
  explicit FiniteJointDistribution(std::vector<WeightedOutcome> support);

  const std::vector<WeightedOutcome>& support() const { return support_; }

  // Groups carrying positive mass, ascending.
  std::vector<GroupId> groups() const;
  Rational group_mass(GroupId group) const;

  // Same masses with the group labels renamed through `rename`.
  FiniteJointDistribution relabeled(const std::map<GroupId, GroupId>& rename) const;

 private:
  std::vector<WeightedOutcome> support_;
};

// Dense view for binary (Z, Y, Yhat): mass[z][y][yhat].
using BinaryCellMasses = std::array<std::array<std::array<Rational, 2>, 2>, 2>;

FiniteJointDistribution from_binary_cells(const BinaryCellMasses& mass);

}  // namespace eopfair

#endif  // EOPFAIR_EOP_DISTRIBUTION_HPP_
