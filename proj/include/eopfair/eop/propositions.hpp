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


// Executable equivalences between statistical criteria and EOP.
//
// Each verifier evaluates the statistical criterion directly from the
// distribution's conditional probabilities and, independently, the matching
// EOP checker with a fixed choice of effort and actual utility:
//
//   equality of odds           Rawlsian, D = Y,  A = Yhat
//   statistical parity         Rawlsian, D = 1,  A = Yhat
//   accuracy (distributional)  Rawlsian, D = 0,  A = (Yhat - Y)^2
//   predictive value parity    luck egalitarian, D = Yhat, A = Y
//
// with U = A - D throughout. A verifier returns true when both sides agree.

#ifndef EOPFAIR_EOP_PROPOSITIONS_HPP_
#define EOPFAIR_EOP_PROPOSITIONS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "eopfair/eop/checkers.hpp"
#include "eopfair/eop/distribution.hpp"

namespace eopfair {

// Direct criteria. Conditioning events with zero mass in a group are not
// compared, and groups without mass are ignored.
bool statistical_parity_holds(const FiniteJointDistribution& dist);
bool equality_of_odds_holds(const FiniteJointDistribution& dist);
bool predictive_value_parity_holds(const FiniteJointDistribution& dist);
// The law of (Yhat - Y)^2 is the same in every group.
bool accuracy_distribution_parity_holds(const FiniteJointDistribution& dist);
// E[(Yhat - Y)^2 | Z] is the same in every group.
bool accuracy_expectation_parity_holds(const FiniteJointDistribution& dist);

EopVerdict equality_of_odds_as_rawlsian(const FiniteJointDistribution& dist);
EopVerdict statistical_parity_as_rawlsian(const FiniteJointDistribution& dist);
EopVerdict accuracy_as_rawlsian(const FiniteJointDistribution& dist);
EopVerdict predictive_value_parity_as_luck_egalitarian(
    const FiniteJointDistribution& dist);

bool verify_equality_of_odds_equivalence(const FiniteJointDistribution& dist);
bool verify_statistical_parity_equivalence(const FiniteJointDistribution& dist);
bool verify_accuracy_parity_equivalence(const FiniteJointDistribution& dist);
bool verify_pvp_equivalence(const FiniteJointDistribution& dist);
// Distributional accuracy parity implies equal expected squared error.
bool verify_accuracy_expectation_implication(const FiniteJointDistribution& dist);

// Every distribution over the 8 binary (z, y, yhat) cells whose masses are
// multiples of 1 / denominator.
std::vector<BinaryCellMasses> enumerate_binary_cell_masses(int denominator);

struct PropositionSummary {
  std::string name;
  std::int64_t cases = 0;
  std::int64_t counterexamples = 0;
};

std::vector<PropositionSummary> run_proposition_suite(int denominator = 8);

}  // namespace eopfair

#endif  // EOPFAIR_EOP_PROPOSITIONS_HPP_
