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

#include "eopfair/data/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "eopfair/core/random.hpp"
#include "eopfair/data/communities.hpp"

namespace eopfair {
namespace {

const std::set<std::string>& police_columns() {
  static const std::set<std::string> names = {
      "LemasSwornFT",        "LemasSwFTPerPop",     "LemasSwFTFieldOps",
      "LemasSwFTFieldPerPop", "LemasTotalReq",      "LemasTotReqPerPop",
      "PolicReqPerOffic",    "PolicPerPop",         "RacialMatchCommPol",
      "PctPolicWhite",       "PctPolicBlack",       "PctPolicHisp",
      "PctPolicAsian",       "PctPolicMinor",       "OfficAssgnDrugUnits",
      "NumKindsDrugsSeiz",   "PolicAveOTWorked",    "PolicCars",
      "PolicOperBudg",       "LemasPctPolicOnPatr", "LemasGangUnitDeploy",
      "PolicBudgPerPop"};
  return names;
}

std::string two_decimals(double v) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%.2f", std::clamp(v, 0.0, 1.0));
  return buf;
}

struct Loading {
  double minority = 0.0;
  double income = 0.0;
  double urban = 0.0;
};

}  // namespace

RawTable make_synthetic_communities(std::uint64_t seed, std::size_t rows) {
  const auto& names = communities_column_names();
  Rng rng(seed);

  std::vector<Loading> loadings(names.size());
  for (auto& l : loadings) {
    l = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  }

  // Police block: missing together in the same share of rows as the
  // distributed file (1675 of 1994).
  std::vector<std::size_t> order(rows);
  for (std::size_t i = 0; i < rows; ++i) order[i] = i;
  rng.shuffle(order);
  const auto police_missing = static_cast<std::size_t>(
      std::llround(static_cast<double>(rows) * 1675.0 / 1994.0));
  std::vector<char> no_police(rows, 0);
  for (std::size_t i = 0; i < police_missing; ++i) no_police[order[i]] = 1;
  const std::size_t other_per_cap_missing = rows > 0 ? order.back() : 0;

  std::vector<std::vector<std::string>> table;
  table.reserve(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const double minority =
        rng.bernoulli(0.3) ? rng.uniform(0.35, 1.0) : rng.uniform(0.0, 0.35);
    const double income = -1.2 * (minority - 0.3) + 0.8 * rng.normal();
    const double urban = rng.normal();
    double w[3] = {rng.uniform(), rng.uniform(), rng.uniform()};
    const double wsum = w[0] + w[1] + w[2];
    const double crime = 0.12 + 0.4 * minority - 0.08 * income + 0.04 * urban +
                         0.07 * rng.normal();

    std::vector<std::string> row(names.size());
    for (std::size_t c = 0; c < names.size(); ++c) {
      const std::string& name = names[c];
      if (name == "state") {
        row[c] = std::to_string(rng.integer(1, 56));
      } else if (name == "county" || name == "community") {
        row[c] = rng.bernoulli(0.59) ? "?" : std::to_string(rng.integer(1, 999));
      } else if (name == "communityname") {
        row[c] = "Synthcity" + std::to_string(r);
      } else if (name == "fold") {
        row[c] = std::to_string(r % 10 + 1);
      } else if (name == "racepctblack") {
        row[c] = two_decimals(minority * w[0] / wsum);
      } else if (name == "racePctHisp") {
        row[c] = two_decimals(minority * w[1] / wsum);
      } else if (name == "racePctAsian") {
        row[c] = two_decimals(minority * w[2] / wsum);
      } else if (name == "racePctWhite") {
        row[c] = two_decimals(1.0 - minority + 0.03 * rng.normal());
      } else if (name == "ViolentCrimesPerPop") {
        row[c] = two_decimals(crime);
      } else if ((police_columns().contains(name) && no_police[r]) ||
                 (name == "OtherPerCap" && r == other_per_cap_missing)) {
        row[c] = "?";
      } else {
        const Loading& l = loadings[c];
        const double latent = l.minority * (minority - 0.3) / 0.3 + l.income * income +
                              l.urban * urban;
        row[c] = two_decimals(0.5 + 0.12 * latent + 0.08 * rng.normal());
      }
    }
    table.push_back(std::move(row));
  }
  return RawTable(names, std::move(table), {"?"});
}

}  // namespace eopfair
