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

#include "eopfair/eop/propositions.hpp"

#include <array>
#include <functional>
#include <map>
#include <stdexcept>

namespace eopfair {
namespace {

using Law = std::map<Rational, Rational>;  // value -> probability

// Conditional law of `outcome` given `condition` for every group with
// positive mass on that condition: result[condition][group] = law.
template <typename ConditionFn, typename OutcomeFn>
std::map<Rational, std::map<GroupId, Law>> conditional_laws(
    const FiniteJointDistribution& dist, ConditionFn condition, OutcomeFn outcome) {
  std::map<Rational, std::map<GroupId, Law>> raw;
  for (const auto& entry : dist.support()) {
    if (sgn(entry.mass) == 0) continue;
    raw[condition(entry.outcome)][entry.outcome.group][outcome(entry.outcome)] +=
        entry.mass;
  }
  for (auto& [c, per_group] : raw) {
    for (auto& [g, law] : per_group) {
      Rational total = 0;
      for (const auto& [v, m] : law) total += m;
      for (auto& [v, m] : law) m /= total;
    }
  }
  return raw;
}

bool laws_agree(const std::map<Rational, std::map<GroupId, Law>>& laws) {
  for (const auto& [c, per_group] : laws) {
    const Law* reference = nullptr;
    for (const auto& [g, law] : per_group) {
      if (reference == nullptr) {
        reference = &law;
      } else if (law != *reference) {
        return false;
      }
    }
  }
  return true;
}

Rational squared_error(const Outcome& o) {
  Rational e = o.prediction - o.label;
  return e * e;
}

void require_binary(const FiniteJointDistribution& dist) {
  for (const auto& entry : dist.support()) {
    const auto& o = entry.outcome;
    auto binary = [](const Rational& v) { return v == 0 || v == 1; };
    if (!binary(o.label) || !binary(o.prediction)) {
      throw std::invalid_argument("proposition verifiers need binary Y and Yhat");
    }
  }
}

}  // namespace

bool statistical_parity_holds(const FiniteJointDistribution& dist) {
  return laws_agree(conditional_laws(
      dist, [](const Outcome&) { return Rational(0); },
      [](const Outcome& o) { return o.prediction; }));
}

bool equality_of_odds_holds(const FiniteJointDistribution& dist) {
  return laws_agree(conditional_laws(
      dist, [](const Outcome& o) { return o.label; },
      [](const Outcome& o) { return o.prediction; }));
}

bool predictive_value_parity_holds(const FiniteJointDistribution& dist) {
  return laws_agree(conditional_laws(
      dist, [](const Outcome& o) { return o.prediction; },
      [](const Outcome& o) { return o.label; }));
}

bool accuracy_distribution_parity_holds(const FiniteJointDistribution& dist) {
  return laws_agree(conditional_laws(
      dist, [](const Outcome&) { return Rational(0); }, squared_error));
}

bool accuracy_expectation_parity_holds(const FiniteJointDistribution& dist) {
  std::map<GroupId, std::pair<Rational, Rational>> acc;  // (sum m*e, sum m)
  for (const auto& entry : dist.support()) {
    if (sgn(entry.mass) == 0) continue;
    auto& [weighted, total] = acc[entry.outcome.group];
    weighted += entry.mass * squared_error(entry.outcome);
    total += entry.mass;
  }
  const Rational* reference = nullptr;
  std::vector<Rational> means;
  means.reserve(acc.size());
  for (const auto& [g, wt] : acc) means.push_back(wt.first / wt.second);
  for (const auto& m : means) {
    if (reference == nullptr) {
      reference = &m;
    } else if (m != *reference) {
      return false;
    }
  }
  return true;
}

EopVerdict equality_of_odds_as_rawlsian(const FiniteJointDistribution& dist) {
  return check_rawlsian_eop(
      dist, [](const Rational& y) { return y; },
      [](const Outcome& o) { return o.prediction; });
}

EopVerdict statistical_parity_as_rawlsian(const FiniteJointDistribution& dist) {
  return check_rawlsian_eop(
      dist, [](const Rational&) { return Rational(1); },
      [](const Outcome& o) { return o.prediction; });
}

EopVerdict accuracy_as_rawlsian(const FiniteJointDistribution& dist) {
  return check_rawlsian_eop(
      dist, [](const Rational&) { return Rational(0); }, squared_error);
}

EopVerdict predictive_value_parity_as_luck_egalitarian(
    const FiniteJointDistribution& dist) {
  return check_luck_egalitarian_eop(
      dist, [](const Outcome& o) { return o.prediction; },
      [](const Outcome& o) { return o.label; });
}

bool verify_equality_of_odds_equivalence(const FiniteJointDistribution& dist) {
  require_binary(dist);
  return equality_of_odds_holds(dist) == equality_of_odds_as_rawlsian(dist).satisfied;
}

bool verify_statistical_parity_equivalence(const FiniteJointDistribution& dist) {
  require_binary(dist);
  return statistical_parity_holds(dist) ==
         statistical_parity_as_rawlsian(dist).satisfied;
}

bool verify_accuracy_parity_equivalence(const FiniteJointDistribution& dist) {
  require_binary(dist);
  return accuracy_distribution_parity_holds(dist) == accuracy_as_rawlsian(dist).satisfied;
}

bool verify_pvp_equivalence(const FiniteJointDistribution& dist) {
  require_binary(dist);
  return predictive_value_parity_holds(dist) ==
         predictive_value_parity_as_luck_egalitarian(dist).satisfied;
}

bool verify_accuracy_expectation_implication(const FiniteJointDistribution& dist) {
  return !accuracy_distribution_parity_holds(dist) ||
         accuracy_expectation_parity_holds(dist);
}

std::vector<BinaryCellMasses> enumerate_binary_cell_masses(int denominator) {
  if (denominator < 1) throw std::invalid_argument("denominator must be positive");
  std::vector<BinaryCellMasses> out;
  std::array<int, 8> parts{};
  std::function<void(int, int)> place = [&](int cell, int remaining) {
    if (cell == 7) {
      parts[7] = remaining;
      BinaryCellMasses m;
      for (int i = 0; i < 8; ++i) {
        m[i >> 2][(i >> 1) & 1][i & 1] = make_rational(parts[i], denominator);
      }
      out.push_back(m);
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      parts[cell] = k;
      place(cell + 1, remaining - k);
    }
  };
  place(0, denominator);
  return out;
}

std::vector<PropositionSummary> run_proposition_suite(int denominator) {
  std::vector<PropositionSummary> summary = {
      {"equality_of_odds_rawlsian"},
      {"statistical_parity_rawlsian"},
      {"accuracy_parity_rawlsian"},
      {"predictive_value_parity_luck_egalitarian"},
      {"accuracy_distribution_implies_expectation"},
  };
  const std::array<std::function<bool(const FiniteJointDistribution&)>, 5> checks = {
      verify_equality_of_odds_equivalence, verify_statistical_parity_equivalence,
      verify_accuracy_parity_equivalence, verify_pvp_equivalence,
      verify_accuracy_expectation_implication};
  for (const auto& cells : enumerate_binary_cell_masses(denominator)) {
    const auto dist = from_binary_cells(cells);
    for (std::size_t i = 0; i < checks.size(); ++i) {
      ++summary[i].cases;
      if (!checks[i](dist)) ++summary[i].counterexamples;
    }
  }
  return summary;
}

}  // namespace eopfair
