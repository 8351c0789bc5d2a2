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

#ifndef EOPFAIR_CORE_DATASET_HPP_
#define EOPFAIR_CORE_DATASET_HPP_

#include <Eigen/Dense>

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace eopfair {

// Opaque categorical group identifier (the circumstance z).
using GroupId = int;

enum class TaskMode { kClassification, kRegression };

std::string to_string(TaskMode mode);
TaskMode parse_task_mode(const std::string& text);

struct Instance {
  std::vector<double> features;
  GroupId group = 0;
  double target = 0.0;
};

// Immutable training set. Features are stored row-major by instance in an
// Eigen matrix so the solvers can form Gram products directly.
//
// Invariants enforced at construction:
//   * every instance has the same number of features;
//   * classification targets are exactly 0 or 1;
//   * the group index partitions the instances and has no empty group.
class Dataset {
 public:
  Dataset(const std::vector<Instance>& instances, TaskMode mode,
          std::vector<std::string> feature_names = {});
  Dataset(Eigen::MatrixXd features, Eigen::VectorXd targets,
          std::vector<GroupId> groups, TaskMode mode,
          std::vector<std::string> feature_names = {});

  std::size_t size() const { return static_cast<std::size_t>(targets_.size()); }
  std::size_t num_features() const {
    return static_cast<std::size_t>(features_.cols());
  }
  TaskMode mode() const { return mode_; }

  const Eigen::MatrixXd& features() const { return features_; }
  const Eigen::VectorXd& targets() const { return targets_; }
  std::span<const double> target_span() const {
    return {targets_.data(), size()};
  }
  std::span<const GroupId> groups() const { return groups_; }
  const std::map<GroupId, std::vector<std::size_t>>& group_index() const {
    return group_index_;
  }
  std::vector<GroupId> group_ids() const;
  std::size_t group_size(GroupId group) const;
  const std::vector<std::string>& feature_names() const {
    return feature_names_;
  }

  Instance instance(std::size_t i) const;

  // Rows in the given order; groups absent from the selection disappear.
  Dataset subset(std::span<const std::size_t> rows) const;

 private:
  void validate_and_index();

  Eigen::MatrixXd features_;
  Eigen::VectorXd targets_;
  std::vector<GroupId> groups_;
  TaskMode mode_;
  std::vector<std::string> feature_names_;
  std::map<GroupId, std::vector<std::size_t>> group_index_;
};

// Linear hypothesis h(x) = theta . x (no intercept).
class LinearModel {
 public:
  explicit LinearModel(Eigen::VectorXd weights) : weights_(std::move(weights)) {}

  const Eigen::VectorXd& weights() const { return weights_; }
  double predict(std::span<const double> x) const;
  Eigen::VectorXd predict(const Dataset& data) const;

 private:
  Eigen::VectorXd weights_;
};

}  // namespace eopfair

#endif  // EOPFAIR_CORE_DATASET_HPP_
