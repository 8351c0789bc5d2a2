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

#include "eopfair/data/toy.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "eopfair/core/random.hpp"

namespace eopfair {

ToyInstance make_toy_instance(const ToyConfig& config) {
  if (config.n < 2) throw std::invalid_argument("toy instance needs n >= 2");
  if (config.k < 1) throw std::invalid_argument("toy instance needs k >= 1");
  if (config.group0 == 0 || config.group1 == 0) {
    throw std::invalid_argument("toy instance groups must both be non-empty");
  }
  if (config.group0 + config.group1 != config.n) {
    throw std::invalid_argument("group sizes must sum to n");
  }
  Rng rng(config.seed);
  const auto n = static_cast<Eigen::Index>(config.n);
  const auto k = static_cast<Eigen::Index>(config.k);

  Eigen::VectorXd planted;
  if (config.planted) {
    planted = *config.planted;
    if (planted.size() != k) throw std::invalid_argument("planted weights have wrong size");
  } else {
    // Non-negative weights summing to at most 1 keep x . theta in [0, 1].
    planted.resize(k);
    for (Eigen::Index j = 0; j < k; ++j) planted(j) = rng.uniform(0.2, 1.0);
    planted /= std::max(1.0, planted.sum());
  }

  Eigen::MatrixXd x(n, k);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) x(i, j) = rng.uniform();
  }
  Eigen::VectorXd y = x * planted;
  if (config.noise > 0.0) {
    for (Eigen::Index i = 0; i < n; ++i) {
      y(i) = std::clamp(y(i) + config.noise * rng.normal(), 0.0, 1.0);
    }
  }
  std::vector<GroupId> groups(config.n, 1);
  std::fill(groups.begin(), groups.begin() + static_cast<std::ptrdiff_t>(config.group0), 0);
  rng.shuffle(groups);
  return {Dataset(std::move(x), std::move(y), std::move(groups), TaskMode::kRegression),
          planted};
}

}  // namespace eopfair
