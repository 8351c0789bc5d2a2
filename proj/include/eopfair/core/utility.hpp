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

// Advantage utilities.
//
// An individual's advantage is the gap between the utility actually received
// after a prediction and the utility they deserve from accountability factors:
//
//     u = a - d
//
// Utilities used for training are restricted to the affine-in-prediction
// family
//
//     u(z, y, yhat) = alpha_z * yhat * y + beta_z * yhat + gamma_z * y + delta_z
//
// which keeps every group's average utility affine in the model weights.
// For binary outcomes any benefit table b_{y,yhat} is representable: with
// c_y = b_{y,1} - b_{y,0} and d_y = b_{y,0} the table is c_y * yhat + d_y.

#ifndef EOPFAIR_CORE_UTILITY_HPP_
#define EOPFAIR_CORE_UTILITY_HPP_

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "eopfair/core/dataset.hpp"

namespace eopfair {

template <typename T>
T advantage(const T& actual, const T& effort_based) {
  return actual - effort_based;
}

inline double advantage(double actual, double effort_based) {
  return actual - effort_based;
}

// b_{y,yhat} for y, yhat in {0, 1}.
template <typename T>
struct BenefitTable {
  T b00{};
  T b01{};
  T b10{};
  T b11{};

  const T& at(int y, int yhat) const {
    if (y == 0) return yhat == 0 ? b00 : b01;
    return yhat == 0 ? b10 : b11;
  }
};

// u(y, yhat) = c_y * yhat + d_y.
template <typename T>
struct LinearBenefit {
  T c0{};
  T c1{};
  T d0{};
  T d1{};

  T operator()(int y, const T& yhat) const {
    return y == 0 ? T(c0 * yhat + d0) : T(c1 * yhat + d1);
  }
};

template <typename T>
LinearBenefit<T> coefficients_from_benefit_table(const BenefitTable<T>& table) {
  return LinearBenefit<T>{T(table.b01 - table.b00), T(table.b11 - table.b10),
                          table.b00, table.b10};
}

template <typename T>
struct BasicAffineUtility {
  T alpha{};  // yhat * y
  T beta{};   // yhat
  T gamma{};  // y
  T delta{};  // constant

  T operator()(const T& y, const T& yhat) const {
    return T(alpha * yhat * y + beta * yhat + gamma * y + delta);
  }

  // Folds the two per-label lines of a binary benefit table into one affine
  // form valid for y in {0, 1}.
  static BasicAffineUtility from_linear_benefit(const LinearBenefit<T>& lb) {
    return BasicAffineUtility{T(lb.c1 - lb.c0), lb.c0, T(lb.d1 - lb.d0), lb.d0};
  }
};

using AffineUtility = BasicAffineUtility<double>;

class UnknownGroupError : public std::out_of_range {
 public:
  explicit UnknownGroupError(GroupId group);
  GroupId group() const { return group_; }

 private:
  GroupId group_;
};

class UtilitySpec {
 public:
  UtilitySpec() = default;
  explicit UtilitySpec(std::map<GroupId, AffineUtility> per_group)
      : per_group_(std::move(per_group)) {}

  // Group 0 (majority-Caucasian neighbourhoods):
  //   u = (1 + 0.5 yhat y) - 0.5 yhat
  // Group 1 (minority-Caucasian neighbourhoods):
  //   u = (1 + 3 yhat y + 2 yhat) - y
  static UtilitySpec communities_crime();

  static UtilitySpec from_benefit_tables(
      const std::map<GroupId, BenefitTable<double>>& tables);

  bool covers(GroupId group) const { return per_group_.contains(group); }
  const AffineUtility& for_group(GroupId group) const;
  std::vector<GroupId> groups() const;
  const std::map<GroupId, AffineUtility>& coefficients() const {
    return per_group_;
  }

  double evaluate(GroupId group, double y, double yhat) const {
    return for_group(group)(y, yhat);
  }

  // Every coefficient multiplied by `factor`.
  UtilitySpec scaled(double factor) const;

 private:
  std::map<GroupId, AffineUtility> per_group_;
};

inline double evaluate_utility(const UtilitySpec& spec, GroupId group, double y,
                               double yhat) {
  return spec.evaluate(group, y, yhat);
}

}  // namespace eopfair

#endif  // EOPFAIR_CORE_UTILITY_HPP_
