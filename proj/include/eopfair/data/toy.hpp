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


// Small seeded regression instances for solver oracles and tests.

#ifndef EOPFAIR_DATA_TOY_HPP_
#define EOPFAIR_DATA_TOY_HPP_

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <optional>

#include "eopfair/core/dataset.hpp"

namespace eopfair {

struct ToyConfig {
  std::uint64_t seed = 0;
  std::size_t n = 4;
  std::size_t k = 1;
  // Rows in group 0 and group 1; both positive and summing to n.
  std::size_t group0 = 2;
  std::size_t group1 = 2;
  // Standard deviation of additive label noise; noisy labels are clipped
  // to [0, 1].
  double noise = 0.0;
  // Defaults to a random vector keeping noiseless targets inside [0, 1].
  std::optional<Eigen::VectorXd> planted;
};

struct ToyInstance {
  Dataset data;
  Eigen::VectorXd planted;
};

// Features uniform on [0, 1]^k; targets x . planted (+ noise). Groups are
// interleaved by a seeded shuffle.
ToyInstance make_toy_instance(const ToyConfig& config);

}  // namespace eopfair

#endif  // EOPFAIR_DATA_TOY_HPP_
