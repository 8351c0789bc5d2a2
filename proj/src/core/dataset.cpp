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

#include "eopfair/core/dataset.hpp"

#include <sstream>
#include <stdexcept>

namespace eopfair {

std::string to_string(TaskMode mode) {
  return mode == TaskMode::kClassification ? "classification" : "regression";
}

TaskMode parse_task_mode(const std::string& text) {
  if (text == "classification") return TaskMode::kClassification;
  if (text == "regression") return TaskMode::kRegression;
  throw std::invalid_argument("unknown task mode '" + text + "'");
}

Dataset::Dataset(const std::vector<Instance>& instances, TaskMode mode,
                 std::vector<std::string> feature_names)
    : mode_(mode), feature_names_(std::move(feature_names)) {
  if (instances.empty()) throw std::invalid_argument("dataset has no instances");
  const std::size_t k = instances.front().features.size();
  features_.resize(static_cast<Eigen::Index>(instances.size()),
                   static_cast<Eigen::Index>(k));
  targets_.resize(static_cast<Eigen::Index>(instances.size()));
  groups_.reserve(instances.size());
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const Instance& inst = instances[i];
    if (inst.features.size() != k) {
      std::ostringstream msg;
      msg << "instance " << i << " has " << inst.features.size()
          << " features, expected " << k;
      throw std::invalid_argument(msg.str());
    }
    for (std::size_t j = 0; j < k; ++j) {
      features_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          inst.features[j];
    }
    targets_(static_cast<Eigen::Index>(i)) = inst.target;
    groups_.push_back(inst.group);
  }
  validate_and_index();
}

Dataset::Dataset(Eigen::MatrixXd features, Eigen::VectorXd targets,
                 std::vector<GroupId> groups, TaskMode mode,
                 std::vector<std::string> feature_names)
    : features_(std::move(features)),
      targets_(std::move(targets)),
      groups_(std::move(groups)),
      mode_(mode),
      feature_names_(std::move(feature_names)) {
  if (targets_.size() == 0) throw std::invalid_argument("dataset has no instances");
  if (features_.rows() != targets_.size() ||
      static_cast<Eigen::Index>(groups_.size()) != targets_.size()) {
    throw std::invalid_argument("features, targets and groups disagree in length");
  }
  validate_and_index();
}

void Dataset::validate_and_index() {
  if (!feature_names_.empty() && feature_names_.size() != num_features()) {
    throw std::invalid_argument("feature name count does not match feature count");
  }
  if (mode_ == TaskMode::kClassification) {
    for (Eigen::Index i = 0; i < targets_.size(); ++i) {
      if (targets_(i) != 0.0 && targets_(i) != 1.0) {
        std::ostringstream msg;
        msg << "classification target of instance " << i << " is " << targets_(i)
            << ", expected 0 or 1";
        throw std::invalid_argument(msg.str());
      }
    }
  }
  group_index_.clear();
  for (std::size_t i = 0; i < groups_.size(); ++i) {
    group_index_[groups_[i]].push_back(i);
  }
}

std::vector<GroupId> Dataset::group_ids() const {
  std::vector<GroupId> ids;
  ids.reserve(group_index_.size());
  for (const auto& [group, rows] : group_index_) ids.push_back(group);
  return ids;
}

std::size_t Dataset::group_size(GroupId group) const {
  auto it = group_index_.find(group);
  return it == group_index_.end() ? 0 : it->second.size();
}

Instance Dataset::instance(std::size_t i) const {
  if (i >= size()) throw std::out_of_range("instance index out of range");
  Instance inst;
  const auto row = static_cast<Eigen::Index>(i);
  inst.features.resize(num_features());
  for (std::size_t j = 0; j < num_features(); ++j) {
    inst.features[j] = features_(row, static_cast<Eigen::Index>(j));
  }
  inst.group = groups_[i];
  inst.target = targets_(row);
  return inst;
}

Dataset Dataset::subset(std::span<const std::size_t> rows) const {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()), features_.cols());
  Eigen::VectorXd y(static_cast<Eigen::Index>(rows.size()));
  std::vector<GroupId> z;
  z.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r] >= size()) throw std::out_of_range("subset row out of range");
    const auto src = static_cast<Eigen::Index>(rows[r]);
    x.row(static_cast<Eigen::Index>(r)) = features_.row(src);
    y(static_cast<Eigen::Index>(r)) = targets_(src);
    z.push_back(groups_[rows[r]]);
  }
  return Dataset(std::move(x), std::move(y), std::move(z), mode_, feature_names_);
}

double LinearModel::predict(std::span<const double> x) const {
  if (x.size() != static_cast<std::size_t>(weights_.size())) {
    throw std::invalid_argument("feature vector length does not match model");
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    acc += weights_(static_cast<Eigen::Index>(j)) * x[j];
  }
  return acc;
}

Eigen::VectorXd LinearModel::predict(const Dataset& data) const {
  if (data.num_features() != static_cast<std::size_t>(weights_.size())) {
    throw std::invalid_argument("dataset feature count does not match model");
  }
  return data.features() * weights_;
}

}  // namespace eopfair
