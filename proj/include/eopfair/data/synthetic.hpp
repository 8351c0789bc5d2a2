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


// Seeded stand-in with the Communities and Crime schema: same 128 columns,
// values in [0, 1] with two decimals, the police block missing together in
// most rows, and a crime target driven by latent minority share, income and
// urbanicity. It exercises the full pipeline and sweep when the real file
// is absent; it is not a substitute for the real data.

#ifndef EOPFAIR_DATA_SYNTHETIC_HPP_
#define EOPFAIR_DATA_SYNTHETIC_HPP_

#include <cstddef>
#include <cstdint>

#include "eopfair/data/table.hpp"

namespace eopfair {

RawTable make_synthetic_communities(std::uint64_t seed, std::size_t rows = 1994);

}  // namespace eopfair

#endif  // EOPFAIR_DATA_SYNTHETIC_HPP_
