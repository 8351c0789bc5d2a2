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

#include "eopfair/experiments/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <limits>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "eopfair/core/random.hpp"
#include "eopfair/metrics/metrics.hpp"
#include "eopfair/solver/lasso.hpp"

namespace eopfair {
namespace {

struct Split {
  Dataset train;
  Dataset test;
};

std::vector<Split> make_splits(const Dataset& data,
                               const std::vector<std::vector<std::size_t>>& folds) {
  std::vector<Split> out;
  for (const auto& held : folds) {
    std::vector<char> is_held(data.size(), 0);
    for (auto i : held) is_held[i] = 1;
    std::vector<std::size_t> train;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (!is_held[i]) train.push_back(i);
    }
    out.push_back({data.subset(train), data.subset(held)});
  }
  return out;
}

SweepRow evaluate_cell(const Split& split, const UtilitySpec& spec, Method method,
                       double epsilon, int fold, const SweepConfig& config) {
  SolverConfig solver = config.solver;
  solver.epsilon = epsilon;
  solver.lambda = config.lambda;
  const SolverResult fit = method == Method::kEop
                               ? solve_eop_training(split.train, spec, solver)
                               : solve_baseline(split.train, solver);
  SweepRow row;
  row.method = method;
  row.epsilon = epsilon;
  row.fold = fold;
  row.status = fit.status;
  row.train_objective = fit.sigma;
  row.train_loss = fit.loss;

  const Dataset& test = split.test;
  const Eigen::VectorXd yhat = test.features() * fit.weights;
  const std::span<const double> pred(yhat.data(), test.size());
  row.prd = positive_residual_difference(test.target_span(), pred, test.groups()).gap;
  row.nrd = negative_residual_difference(test.target_span(), pred, test.groups()).gap;
  row.group_utility = group_average_utility(test.target_span(), pred, test.groups(), spec);
  row.min_group_utility = std::numeric_limits<double>::infinity();
  for (const auto& [g, v] : row.group_utility) {
    row.min_group_utility = std::min(row.min_group_utility, v);
  }
  row.test_mse = mean_squared_error(test, fit.weights);
  row.test_loss = regularized_loss(test, fit.weights, config.lambda);
  return row;
}

SummaryStat stat(const std::vector<double>& values) {
  SummaryStat s;
  if (values.empty()) {
    s.mean = s.sd = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  for (double v : values) s.mean += v;
  s.mean /= static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

std::string format(double v) {
  std::ostringstream out;
  out << std::setprecision(12) << v;
  return out.str();
}

auto row_key(const SweepRow& r) { return std::make_tuple(r.method, r.epsilon, r.fold); }

}  // namespace

std::string to_string(Method method) {
  return method == Method::kEop ? "eop" : "baseline";
}

std::vector<std::vector<std::size_t>> stratified_folds(const Dataset& data, int folds,
                                                       std::uint64_t seed) {
  if (folds < 2) throw std::invalid_argument("need at least two folds");
  const auto k = static_cast<std::size_t>(folds);
  for (const auto& [group, rows] : data.group_index()) {
    if (rows.size() < k) {
      throw std::invalid_argument("group " + std::to_string(group) +
                                  " has fewer rows than folds");
    }
  }
  Rng rng(seed);
  std::vector<std::vector<std::size_t>> out(k);
  std::size_t next = 0;
  for (const auto& [group, rows] : data.group_index()) {
    std::vector<std::size_t> shuffled = rows;
    rng.shuffle(shuffled);
    for (auto i : shuffled) out[next++ % k].push_back(i);
  }
  for (auto& fold : out) std::sort(fold.begin(), fold.end());
  return out;
}

std::vector<double> training_epsilon_min(
    const Dataset& data, double lambda, const std::vector<std::vector<std::size_t>>& folds) {
  std::vector<double> out;
  for (const auto& split : make_splits(data, folds)) {
    out.push_back(fit_l1_regularized(split.train, lambda).objective);
  }
  return out;
}

std::vector<double> default_epsilon_grid(double epsilon_min, std::size_t points,
                                         double low_factor, double high_factor) {
  if (points == 0) return {};
  if (points == 1) return {low_factor * epsilon_min};
  std::vector<double> grid(points);
  const double lo = std::log(low_factor * epsilon_min);
  const double hi = std::log(high_factor * epsilon_min);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = std::exp(lo + (hi - lo) * static_cast<double>(i) /
                                static_cast<double>(points - 1));
  }
  return grid;
}

SweepOutput run_epsilon_sweep(const Dataset& data, const UtilitySpec& spec,
                              const SweepConfig& config) {
  const auto folds = stratified_folds(data, config.folds, config.seed);
  const auto splits = make_splits(data, folds);
  SweepOutput out;
  for (const auto& split : splits) {
    out.fold_epsilon_min.push_back(fit_l1_regularized(split.train, config.lambda).objective);
  }
  out.epsilons = config.epsilons;
  if (out.epsilons.empty()) {
    out.epsilons = default_epsilon_grid(
        *std::max_element(out.fold_epsilon_min.begin(), out.fold_epsilon_min.end()));
  }
  std::sort(out.epsilons.begin(), out.epsilons.end());

  struct Cell {
    Method method;
    double epsilon;
    int fold;
  };
  std::vector<Cell> cells;
  for (auto method : {Method::kEop, Method::kBaseline}) {
    for (double eps : out.epsilons) {
      for (int f = 0; f < config.folds; ++f) cells.push_back({method, eps, f});
    }
  }
  out.rows.resize(cells.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        const auto& c = cells[i];
        out.rows[i] = evaluate_cell(splits[static_cast<std::size_t>(c.fold)], spec,
                                    c.method, c.epsilon, c.fold, config);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  unsigned threads = config.threads != 0 ? config.threads
                                         : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(cells.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::sort(out.rows.begin(), out.rows.end(),
            [](const SweepRow& a, const SweepRow& b) { return row_key(a) < row_key(b); });
  return out;
}

std::string sweep_header(char d) {
  std::ostringstream out;
  out << "method" << d << "epsilon" << d << "fold" << d << "status" << d << "prd" << d
      << "nrd" << d << "min_group_utility" << d << "group_utility" << d << "test_mse"
      << d << "test_loss" << d << "train_objective" << d << "train_loss";
  return out.str();
}

std::string to_record(const SweepRow& row, char d) {
  std::ostringstream out;
  out << to_string(row.method) << d << format(row.epsilon) << d << row.fold << d
      << to_string(row.status) << d << format(row.prd) << d << format(row.nrd) << d
      << format(row.min_group_utility) << d;
  bool first = true;
  for (const auto& [g, v] : row.group_utility) {
    out << (first ? "" : ";") << g << ':' << format(v);
    first = false;
  }
  out << d << format(row.test_mse) << d << format(row.test_loss) << d
      << format(row.train_objective) << d << format(row.train_loss);
  return out.str();
}

std::vector<SummaryRow> summarize(const std::vector<SweepRow>& rows) {
  std::map<std::pair<Method, double>, std::vector<const SweepRow*>> cells;
  for (const auto& r : rows) cells[{r.method, r.epsilon}].push_back(&r);
  std::vector<SummaryRow> out;
  for (const auto& [key, members] : cells) {
    SummaryRow s;
    s.method = key.first;
    s.epsilon = key.second;
    std::vector<double> prd, nrd, util, mse, loss;
    for (const SweepRow* r : members) {
      if (r->status == SolverStatus::kInfeasible) {
        ++s.infeasible_folds;
        continue;
      }
      ++s.feasible_folds;
      prd.push_back(r->prd);
      nrd.push_back(r->nrd);
      util.push_back(r->min_group_utility);
      mse.push_back(r->test_mse);
      loss.push_back(r->test_loss);
    }
    s.prd = stat(prd);
    s.nrd = stat(nrd);
    s.min_group_utility = stat(util);
    s.test_mse = stat(mse);
    s.test_loss = stat(loss);
    out.push_back(s);
  }
  return out;
}

std::string summary_header(char d) {
  std::ostringstream out;
  out << "method" << d << "epsilon" << d << "feasible_folds" << d << "infeasible_folds";
  for (const char* name : {"prd", "nrd", "min_group_utility", "test_mse", "test_loss"}) {
    out << d << name << "_mean" << d << name << "_sd";
  }
  return out.str();
}

std::string to_record(const SummaryRow& row, char d) {
  std::ostringstream out;
  out << to_string(row.method) << d << format(row.epsilon) << d << row.feasible_folds << d
      << row.infeasible_folds;
  for (const SummaryStat* s :
       {&row.prd, &row.nrd, &row.min_group_utility, &row.test_mse, &row.test_loss}) {
    out << d << format(s->mean) << d << format(s->sd);
  }
  return out.str();
}

SweepPropertyReport check_sweep_properties(const std::vector<SweepRow>& rows,
                                           double margin, double monotone_slack) {
  SweepPropertyReport report;
  std::map<std::tuple<Method, double, int>, const SweepRow*> index;
  std::set<double> epsilons;
  std::set<int> folds;
  for (const auto& r : rows) {
    index[{r.method, r.epsilon, r.fold}] = &r;
    epsilons.insert(r.epsilon);
    folds.insert(r.fold);
  }
  auto feasible = [](const SweepRow* r) {
    return r != nullptr && r->status != SolverStatus::kInfeasible;
  };
  auto find = [&](Method m, double e, int f) -> const SweepRow* {
    auto it = index.find({m, e, f});
    return it == index.end() ? nullptr : it->second;
  };

  // (a) monotone held-out utility per fold.
  for (int f : folds) {
    const SweepRow* previous = nullptr;
    for (double e : epsilons) {
      const SweepRow* r = find(Method::kEop, e, f);
      if (!feasible(r)) continue;
      if (previous != nullptr &&
          r->min_group_utility < previous->min_group_utility - monotone_slack) {
        report.eop_utility_monotone = false;
        report.violations.push_back(
            "fold " + std::to_string(f) + ": eop utility drops from " +
            format(previous->min_group_utility) + " at epsilon " +
            format(previous->epsilon) + " to " + format(r->min_group_utility) +
            " at epsilon " + format(e));
      }
      previous = r;
    }
  }

  // (b) baseline residual differences at the grid ends.
  std::optional<double> smallest_feasible;
  for (double e : epsilons) {
    bool all = true;
    for (int f : folds) all = all && feasible(find(Method::kBaseline, e, f));
    if (all) {
      smallest_feasible = e;
      break;
    }
  }
  if (smallest_feasible && !epsilons.empty()) {
    const double largest = *epsilons.rbegin();
    auto fold_mean = [&](double e, double SweepRow::*field) {
      double sum = 0.0;
      int count = 0;
      for (int f : folds) {
        const SweepRow* r = find(Method::kBaseline, e, f);
        if (!feasible(r)) continue;
        sum += r->*field;
        ++count;
      }
      return count > 0 ? sum / count : std::numeric_limits<double>::quiet_NaN();
    };
    for (auto [name, field] : {std::pair{"PRD", &SweepRow::prd},
                               std::pair{"NRD", &SweepRow::nrd}}) {
      const double at_small = fold_mean(*smallest_feasible, field);
      const double at_large = fold_mean(largest, field);
      if (!(at_large <= at_small)) {
        report.baseline_residuals_controlled = false;
        report.violations.push_back(std::string("baseline ") + name + " at largest epsilon " +
                                    format(at_large) + " exceeds " + format(at_small) +
                                    " at smallest feasible epsilon");
      }
    }
  } else {
    report.baseline_residuals_controlled = false;
    report.violations.push_back("baseline is infeasible at every epsilon");
  }

  // (c) eop within margin of the baseline everywhere both are feasible.
  for (double e : epsilons) {
    for (int f : folds) {
      const SweepRow* eop = find(Method::kEop, e, f);
      const SweepRow* base = find(Method::kBaseline, e, f);
      if (!feasible(eop) || !feasible(base)) continue;
      if (eop->min_group_utility < base->min_group_utility - margin) {
        report.eop_not_worse = false;
        report.violations.push_back("epsilon " + format(e) + " fold " + std::to_string(f) +
                                    ": eop utility " + format(eop->min_group_utility) +
                                    " below baseline " + format(base->min_group_utility));
      }
    }
  }
  return report;
}

}  // namespace eopfair
