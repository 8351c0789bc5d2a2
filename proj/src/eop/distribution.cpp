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

#include "eopfair/eop/distribution.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>

namespace eopfair {

bool operator<(const Outcome& a, const Outcome& b) {
  if (a.group != b.group) return a.group < b.group;
  if (a.label != b.label) return a.label < b.label;
  return a.prediction < b.prediction;
}

bool operator==(const Outcome& a, const Outcome& b) {
  return a.group == b.group && a.label == b.label && a.prediction == b.prediction;
}

FiniteJointDistribution::FiniteJointDistribution(std::vector<WeightedOutcome> support)
    : support_(std::move(support)) {
  Rational total = 0;
  std::set<Outcome> seen;
  for (const auto& entry : support_) {
    if (sgn(entry.mass) < 0) {
      throw std::invalid_argument("negative probability mass");
    }
    if (!seen.insert(entry.outcome).second) {
      throw std::invalid_argument("duplicate support entry");
    }
    total += entry.mass;
  }
  if (total != 1) {
    throw std::invalid_argument("probability masses sum to " + to_string(total) +
                                ", expected 1");
  }
}

std::vector<GroupId> FiniteJointDistribution::groups() const {
  std::set<GroupId> out;
  for (const auto& entry : support_) {
    if (sgn(entry.mass) > 0) out.insert(entry.outcome.group);
  }
  return {out.begin(), out.end()};
}

Rational FiniteJointDistribution::group_mass(GroupId group) const {
  Rational total = 0;
  for (const auto& entry : support_) {
    if (entry.outcome.group == group) total += entry.mass;
  }
  return total;
}

FiniteJointDistribution FiniteJointDistribution::relabeled(
    const std::map<GroupId, GroupId>& rename) const {
  std::vector<WeightedOutcome> out = support_;
  for (auto& entry : out) {
    auto it = rename.find(entry.outcome.group);
    if (it != rename.end()) entry.outcome.group = it->second;
  }
  return FiniteJointDistribution(std::move(out));
}

FiniteJointDistribution from_binary_cells(const BinaryCellMasses& mass) {
  std::vector<WeightedOutcome> support;
  for (int z = 0; z < 2; ++z) {
    for (int y = 0; y < 2; ++y) {
      for (int yhat = 0; yhat < 2; ++yhat) {
        if (sgn(mass[z][y][yhat]) == 0) continue;
        support.push_back({Outcome{z, Rational(y), Rational(yhat)}, mass[z][y][yhat]});
      }
    }
  }
  return FiniteJointDistribution(std::move(support));
}

}  // namespace eopfair
