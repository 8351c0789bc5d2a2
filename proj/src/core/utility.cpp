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

#include "eopfair/core/utility.hpp"

namespace eopfair {

UnknownGroupError::UnknownGroupError(GroupId group)
    : std::out_of_range("utility spec has no coefficients for group " +
                        std::to_string(group)),
      group_(group) {}

UtilitySpec UtilitySpec::communities_crime() {
  return UtilitySpec({
      {0, AffineUtility{0.5, -0.5, 0.0, 1.0}},
      {1, AffineUtility{3.0, 2.0, -1.0, 1.0}},
  });
}

UtilitySpec UtilitySpec::from_benefit_tables(
    const std::map<GroupId, BenefitTable<double>>& tables) {
  std::map<GroupId, AffineUtility> per_group;
  for (const auto& [group, table] : tables) {
    per_group[group] =
        AffineUtility::from_linear_benefit(coefficients_from_benefit_table(table));
  }
  return UtilitySpec(std::move(per_group));
}

const AffineUtility& UtilitySpec::for_group(GroupId group) const {
  auto it = per_group_.find(group);
  if (it == per_group_.end()) throw UnknownGroupError(group);
  return it->second;
}

std::vector<GroupId> UtilitySpec::groups() const {
  std::vector<GroupId> out;
  for (const auto& [group, coeffs] : per_group_) out.push_back(group);
  return out;
}

UtilitySpec UtilitySpec::scaled(double factor) const {
  std::map<GroupId, AffineUtility> per_group;
  for (const auto& [group, u] : per_group_) {
    per_group[group] = AffineUtility{factor * u.alpha, factor * u.beta,
                                     factor * u.gamma, factor * u.delta};
  }
  return UtilitySpec(std::move(per_group));
}

}  // namespace eopfair
