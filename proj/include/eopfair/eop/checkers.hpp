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


// Equality-of-opportunity checkers over exact finite distributions.
//
// Both checkers reduce the joint distribution to atoms (group, effort D,
// utility U, mass) and compare conditional utility distributions across
// groups by sup-norm CDF distance:
//
//   Rawlsian          effort strata are absolute D values.
//   Luck egalitarian  effort strata are ranks within the group: a group whose
//                     distinct D levels are d_0 < ... < d_{m-1} places level i
//                     at position i / (m - 1), and groups are compared at equal
//                     positions. A group with a single level has no rank scale
//                     of its own and is matched by value against the ladder of
//                     the group it is compared with.
//
// Conditioning events that carry mass in only one group of a pair are not
// comparable and are skipped; with fewer than two groups every condition
// holds vacuously.

#ifndef EOPFAIR_EOP_CHECKERS_HPP_
#define EOPFAIR_EOP_CHECKERS_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "eopfair/core/rational.hpp"
#include "eopfair/core/utility.hpp"
#include "eopfair/eop/distribution.hpp"

namespace eopfair {

struct EffortUtilityAtom {
  GroupId group = 0;
  Rational effort;
  Rational utility;
  Rational mass;
};

using EffortUtilityTable = std::vector<EffortUtilityAtom>;

struct EopWitness {
  GroupId group_a = 0;
  GroupId group_b = 0;
  // Effort value (Rawlsian) or rank position in [0, 1] (luck egalitarian).
  Rational conditioning;
  // Utility at which the two conditional CDFs differ most.
  Rational utility;
};

struct EopVerdict {
  bool satisfied = true;
  Rational worst_gap;
  std::optional<EopWitness> witness;
  std::vector<std::string> strata_skipped;
};

using OutcomeMap = std::function<Rational(const Outcome&)>;
// Effort-based utility from the label alone; it cannot see the group or the
// model's prediction.
using EffortFromLabel = std::function<Rational(const Rational& label)>;
using AdvantageMap = std::function<Rational(const Rational& actual,
                                            const Rational& effort_based)>;

Rational default_advantage(const Rational& actual, const Rational& effort_based);

// sup_u |F_a(u) - F_b(u)| for two finite distributions given as
// (value, mass) lists; masses are normalized separately.
Rational cdf_distance(const std::vector<std::pair<Rational, Rational>>& a,
                      const std::vector<std::pair<Rational, Rational>>& b,
                      Rational* argmax = nullptr);

EopVerdict rawlsian_verdict(const EffortUtilityTable& table);
EopVerdict luck_egalitarian_verdict(const EffortUtilityTable& table);

EffortUtilityTable effort_utility_table(const FiniteJointDistribution& dist,
                                        const OutcomeMap& effort,
                                        const OutcomeMap& actual,
                                        const AdvantageMap& advantage);

EopVerdict check_rawlsian_eop(const FiniteJointDistribution& dist,
                              const EffortFromLabel& effort,
                              const OutcomeMap& actual,
                              const AdvantageMap& advantage = default_advantage);

EopVerdict check_luck_egalitarian_eop(
    const FiniteJointDistribution& dist, const OutcomeMap& effort,
    const OutcomeMap& actual, const AdvantageMap& advantage = default_advantage);

}  // namespace eopfair

#endif  // EOPFAIR_EOP_CHECKERS_HPP_
