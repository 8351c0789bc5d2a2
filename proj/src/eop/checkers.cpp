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

#include "eopfair/eop/checkers.hpp"

#include <map>
#include <stdexcept>

namespace eopfair {
namespace {

using UtilityMass = std::map<Rational, Rational>;
using Strata = std::map<Rational, UtilityMass>;

std::vector<std::pair<Rational, Rational>> as_list(const UtilityMass& m) {
  return {m.begin(), m.end()};
}

// Positive-mass atoms grouped by group then effort.
std::map<GroupId, Strata> by_group(const EffortUtilityTable& table) {
  std::map<GroupId, Strata> out;
  for (const auto& atom : table) {
    if (sgn(atom.mass) < 0) throw std::invalid_argument("negative atom mass");
    if (sgn(atom.mass) == 0) continue;
    out[atom.group][atom.effort][atom.utility] += atom.mass;
  }
  return out;
}

void compare(const UtilityMass& a, const UtilityMass& b, GroupId group_a,
             GroupId group_b, const Rational& conditioning, EopVerdict& verdict) {
  Rational at;
  Rational gap = cdf_distance(as_list(a), as_list(b), &at);
  if (gap > verdict.worst_gap) {
    verdict.worst_gap = gap;
    verdict.witness = EopWitness{group_a, group_b, conditioning, at};
  }
}

// Rank position of each effort level in a group with at least two levels.
std::map<Rational, const UtilityMass*> rank_ladder(const Strata& strata) {
  std::map<Rational, const UtilityMass*> ladder;
  const long top = static_cast<long>(strata.size()) - 1;
  long i = 0;
  for (const auto& [effort, utilities] : strata) {
    ladder[make_rational(i, top)] = &utilities;
    ++i;
  }
  return ladder;
}

// Position of `level` within `strata`, if present.
std::optional<Rational> position_of(const Strata& strata, const Rational& level) {
  const long top = static_cast<long>(strata.size()) - 1;
  long i = 0;
  for (const auto& [effort, utilities] : strata) {
    if (effort == level) return make_rational(i, top);
    ++i;
  }
  return std::nullopt;
}

std::string absent(const std::string& what, const Rational& value, GroupId group) {
  return what + "=" + to_string(value) + " absent in group " + std::to_string(group);
}

}  // namespace

Rational default_advantage(const Rational& actual, const Rational& effort_based) {
  return advantage(actual, effort_based);
}

Rational cdf_distance(const std::vector<std::pair<Rational, Rational>>& a,
                      const std::vector<std::pair<Rational, Rational>>& b,
                      Rational* argmax) {
  Rational total_a = 0, total_b = 0;
  std::map<Rational, std::pair<Rational, Rational>> merged;
  for (const auto& [v, m] : a) {
    merged[v].first += m;
    total_a += m;
  }
  for (const auto& [v, m] : b) {
    merged[v].second += m;
    total_b += m;
  }
  if (sgn(total_a) <= 0 || sgn(total_b) <= 0) {
    throw std::invalid_argument("cdf_distance needs two non-empty distributions");
  }
  Rational cum_a = 0, cum_b = 0, worst = 0;
  bool first = true;
  for (const auto& [v, masses] : merged) {
    cum_a += masses.first / total_a;
    cum_b += masses.second / total_b;
    Rational d = abs_value(Rational(cum_a - cum_b));
    if (first || d > worst) {
      worst = d;
      if (argmax != nullptr) *argmax = v;
    }
    first = false;
  }
  return worst;
}

EopVerdict rawlsian_verdict(const EffortUtilityTable& table) {
  const auto groups = by_group(table);
  EopVerdict verdict;
  for (auto a = groups.begin(); a != groups.end(); ++a) {
    for (auto b = std::next(a); b != groups.end(); ++b) {
      for (const auto& [effort, utilities] : a->second) {
        auto other = b->second.find(effort);
        if (other == b->second.end()) {
          verdict.strata_skipped.push_back(absent("D", effort, b->first));
          continue;
        }
        compare(utilities, other->second, a->first, b->first, effort, verdict);
      }
      for (const auto& [effort, utilities] : b->second) {
        if (!a->second.contains(effort)) {
          verdict.strata_skipped.push_back(absent("D", effort, a->first));
        }
      }
    }
  }
  verdict.satisfied = sgn(verdict.worst_gap) == 0;
  return verdict;
}

EopVerdict luck_egalitarian_verdict(const EffortUtilityTable& table) {
  const auto groups = by_group(table);
  EopVerdict verdict;
  for (auto a = groups.begin(); a != groups.end(); ++a) {
    for (auto b = std::next(a); b != groups.end(); ++b) {
      const Strata& sa = a->second;
      const Strata& sb = b->second;
      if (sa.size() >= 2 && sb.size() >= 2) {
        const auto la = rank_ladder(sa);
        const auto lb = rank_ladder(sb);
        for (const auto& [pos, utilities] : la) {
          auto other = lb.find(pos);
          if (other == lb.end()) {
            verdict.strata_skipped.push_back(absent("rank", pos, b->first));
            continue;
          }
          compare(*utilities, *other->second, a->first, b->first, pos, verdict);
        }
        for (const auto& [pos, utilities] : lb) {
          if (!la.contains(pos)) {
            verdict.strata_skipped.push_back(absent("rank", pos, a->first));
          }
        }
        continue;
      }
      if (sa.size() == 1 && sb.size() == 1) {
        const auto& [level_a, ua] = *sa.begin();
        const auto& [level_b, ub] = *sb.begin();
        if (level_a == level_b) {
          compare(ua, ub, a->first, b->first, Rational(0), verdict);
        } else {
          verdict.strata_skipped.push_back(absent("D", level_a, b->first));
        }
        continue;
      }
      // Exactly one group has a single level; locate it on the other ladder.
      const bool a_single = sa.size() == 1;
      const Strata& single = a_single ? sa : sb;
      const Strata& ladder = a_single ? sb : sa;
      const auto& [level, utilities] = *single.begin();
      auto pos = position_of(ladder, level);
      if (!pos) {
        verdict.strata_skipped.push_back(
            absent("D", level, a_single ? b->first : a->first));
        continue;
      }
      const UtilityMass& matched = ladder.at(level);
      if (a_single) {
        compare(utilities, matched, a->first, b->first, *pos, verdict);
      } else {
        compare(matched, utilities, a->first, b->first, *pos, verdict);
      }
    }
  }
  verdict.satisfied = sgn(verdict.worst_gap) == 0;
  return verdict;
}

EffortUtilityTable effort_utility_table(const FiniteJointDistribution& dist,
                                        const OutcomeMap& effort,
                                        const OutcomeMap& actual,
                                        const AdvantageMap& advantage_of) {
  EffortUtilityTable table;
  table.reserve(dist.support().size());
  for (const auto& entry : dist.support()) {
    if (sgn(entry.mass) == 0) continue;
    Rational d = effort(entry.outcome);
    Rational a = actual(entry.outcome);
    table.push_back({entry.outcome.group, d, advantage_of(a, d), entry.mass});
  }
  return table;
}

EopVerdict check_rawlsian_eop(const FiniteJointDistribution& dist,
                              const EffortFromLabel& effort,
                              const OutcomeMap& actual,
                              const AdvantageMap& advantage_of) {
  auto from_outcome = [&effort](const Outcome& o) { return effort(o.label); };
  return rawlsian_verdict(effort_utility_table(dist, from_outcome, actual, advantage_of));
}

EopVerdict check_luck_egalitarian_eop(const FiniteJointDistribution& dist,
                                      const OutcomeMap& effort,
                                      const OutcomeMap& actual,
                                      const AdvantageMap& advantage_of) {
  return luck_egalitarian_verdict(effort_utility_table(dist, effort, actual, advantage_of));
}

}  // namespace eopfair
