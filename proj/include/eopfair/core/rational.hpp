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

#ifndef EOPFAIR_CORE_RATIONAL_HPP_
#define EOPFAIR_CORE_RATIONAL_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace eopfair {

// Arbitrary precision rational. Every exact probability in the library uses it.
using Rational = mpq_class;

inline Rational make_rational(std::int64_t numerator, std::int64_t denominator = 1) {
  Rational r(mpz_class(static_cast<long>(numerator)),
             mpz_class(static_cast<long>(denominator)));
  r.canonicalize();
  return r;
}

inline double to_double(const Rational& r) { return r.get_d(); }

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational abs_value(const Rational& r) { return sgn(r) < 0 ? Rational(-r) : r; }

}  // namespace eopfair

#endif  // EOPFAIR_CORE_RATIONAL_HPP_
