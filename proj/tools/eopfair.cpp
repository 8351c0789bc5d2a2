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


// eopfair command line.
//
//   eopfair metrics      fairness gaps and group utilities for a dataset
//   eopfair verify-eop   exhaustive check of the criterion/EOP equivalences
//   eopfair verify-table brute-force check of the optimal-prediction table
//   eopfair sweep        cross-validated epsilon sweep, eop vs baseline
//
// Options may also come from a key=value file given with --config; options
// on the command line take precedence.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eopfair/core/utility.hpp"
#include "eopfair/data/communities.hpp"
#include "eopfair/data/synthetic.hpp"
#include "eopfair/data/table.hpp"
#include "eopfair/eop/propositions.hpp"
#include "eopfair/experiments/sweep.hpp"
#include "eopfair/metrics/metrics.hpp"
#include "eopfair/solver/lasso.hpp"
#include "eopfair/tradeoffs/tradeoffs.hpp"

namespace {

using namespace eopfair;

struct Options {
  std::string data;
  std::string format = "communities";
  std::vector<double> lambda_grid = {0.0001, 0.0003, 0.001, 0.003, 0.01, 0.03};
  std::vector<double> epsilon_grid;
  int folds = 5;
  int lambda_folds = 10;
  std::uint64_t seed = 0;
  std::string output;
  std::string summary;
  std::string delimiter = ",";
  int denominator = 8;
  int seeds = 100;
  unsigned threads = 0;
};

// Stream for the main output: the --output file or stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot write " + path);
    }
  }
  std::ostream& out() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

char delimiter_of(const Options& o) {
  if (o.delimiter == "tab" || o.delimiter == "\\t") return '\t';
  if (o.delimiter.size() != 1) throw std::invalid_argument("delimiter must be one character");
  return o.delimiter[0];
}

Dataset load_dataset(const Options& o) {
  if (o.format == "synthetic") {
    return preprocess_communities(make_synthetic_communities(o.seed)).first;
  }
  if (o.data.empty()) throw std::invalid_argument("--data is required for format " + o.format);
  if (o.format == "communities") {
    auto [data, report] = load_communities(o.data);
    std::cerr << to_string(report);
    return std::move(data);
  }
  if (o.format == "snapshot") return read_dataset_snapshot(o.data, TaskMode::kRegression);
  throw std::invalid_argument("unknown format " + o.format);
}

double choose_lambda(const Dataset& data, const Options& o) {
  if (o.lambda_grid.empty()) throw std::invalid_argument("empty lambda grid");
  if (o.lambda_grid.size() == 1) return o.lambda_grid.front();
  const double lambda = select_lambda(data, o.lambda_grid, o.lambda_folds, o.seed);
  std::cerr << "selected lambda=" << lambda << '\n';
  return lambda;
}

bool is_binary(std::span<const double> v) {
  for (double x : v) {
    if (x != 0.0 && x != 1.0) return false;
  }
  return true;
}

int run_metrics(const Options& o) {
  const char d = delimiter_of(o);
  std::vector<double> y, yhat;
  std::vector<GroupId> z;
  std::optional<Dataset> data;
  if (o.format == "predictions") {
    TableFormat format;
    format.has_header = true;
    format.delimiter = d;
    const RawTable t = load_table(o.data, format);
    const auto gi = t.column_index("group");
    const auto yi = t.column_index("target");
    const auto pi = t.column_index("prediction");
    for (std::size_t r = 0; r < t.num_rows(); ++r) {
      z.push_back(static_cast<GroupId>(t.number(r, gi)));
      y.push_back(t.number(r, yi));
      yhat.push_back(t.number(r, pi));
    }
  } else {
    data = load_dataset(o);
    const auto fit = fit_l1_regularized(*data, choose_lambda(*data, o));
    const Eigen::VectorXd p = data->features() * fit.weights;
    y.assign(data->target_span().begin(), data->target_span().end());
    yhat.assign(p.data(), p.data() + p.size());
    z.assign(data->groups().begin(), data->groups().end());
  }

  std::vector<MetricReport> reports;
  if (is_binary(y) && is_binary(yhat)) {
    reports.push_back(statistical_parity_gap(yhat, z));
    reports.push_back(equality_of_odds_gap(y, yhat, z));
    reports.push_back(predictive_value_parity_gap(y, yhat, z));
  }
  reports.push_back(accuracy_parity_gap(y, yhat, z));
  reports.push_back(positive_residual_difference(y, yhat, z));
  reports.push_back(negative_residual_difference(y, yhat, z));
  reports.push_back(mean_difference(yhat, z));
  const auto spec = UtilitySpec::communities_crime();
  MetricReport utility;
  utility.name = "min_group_average_utility";
  utility.per_group = group_average_utility(y, yhat, z, spec);
  utility.gap = min_group_average_utility(y, yhat, z, spec);

  Sink sink(o.output);
  std::string header = record_header();
  std::replace(header.begin(), header.end(), ',', d);
  sink.out() << header << '\n';
  auto emit = [&](const MetricReport& r) {
    std::string line = to_record(r);
    std::replace(line.begin(), line.end(), ',', d);
    sink.out() << line << '\n';
  };
  for (const auto& r : reports) emit(r);
  emit(utility);
  return 0;
}

int run_verify_eop(const Options& o) {
  const char d = delimiter_of(o);
  Sink sink(o.output);
  sink.out() << "proposition" << d << "cases" << d << "counterexamples\n";
  bool clean = true;
  for (const auto& s : run_proposition_suite(o.denominator)) {
    sink.out() << s.name << d << s.cases << d << s.counterexamples << '\n';
    clean = clean && s.counterexamples == 0;
  }
  return clean ? 0 : 1;
}

int run_verify_table(const Options& o) {
  const char d = delimiter_of(o);
  Sink sink(o.output);
  sink.out() << "criterion" << d << "realizability" << d << "task" << d << "cases" << d
             << "failures\n";
  bool clean = true;
  for (const auto& c : verify_table(o.seed, o.seeds)) {
    sink.out() << to_string(c.criterion) << d << to_string(c.realizability) << d
               << to_string(c.task) << d << c.cases << d << c.failures << '\n';
    clean = clean && c.failures == 0;
  }
  return clean ? 0 : 1;
}

int run_sweep(const Options& o) {
  const char d = delimiter_of(o);
  const Dataset data = load_dataset(o);
  SweepConfig config;
  config.lambda = choose_lambda(data, o);
  config.epsilons = o.epsilon_grid;
  config.folds = o.folds;
  config.seed = o.seed;
  config.threads = o.threads;
  const auto result = run_epsilon_sweep(data, UtilitySpec::communities_crime(), config);

  Sink sink(o.output);
  sink.out() << sweep_header(d) << '\n';
  for (const auto& row : result.rows) sink.out() << to_record(row, d) << '\n';

  const auto summary = summarize(result.rows);
  if (!o.summary.empty()) {
    Sink s(o.summary);
    s.out() << summary_header(d) << '\n';
    for (const auto& row : summary) s.out() << to_record(row, d) << '\n';
  }
  bool infeasible_only = false;
  for (const auto& row : summary) {
    if (row.feasible_folds == 0) {
      std::cerr << "epsilon " << row.epsilon << " is infeasible on every fold for "
                << to_string(row.method) << '\n';
      infeasible_only = true;
    }
  }
  const auto properties = check_sweep_properties(result.rows);
  for (const auto& v : properties.violations) std::cerr << "property: " << v << '\n';
  return infeasible_only ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fairness metrics, EOP verification and worst-off-group training"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file with option defaults");
  Options o;

  app.add_option("--data", o.data, "Input file");
  app.add_option("--format", o.format,
                 "communities | snapshot | synthetic | predictions (metrics only)")
      ->capture_default_str();
  app.add_option("--lambda-grid", o.lambda_grid,
                 "L1 weights; several values are chosen between by cross validation")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--epsilon-grid", o.epsilon_grid,
                 "Loss bounds; empty uses 12 points from 1.02x to 3x the minimum")
      ->delimiter(',');
  app.add_option("--folds", o.folds, "Evaluation folds")->capture_default_str();
  app.add_option("--lambda-folds", o.lambda_folds, "Folds for lambda selection")
      ->capture_default_str();
  app.add_option("--seed", o.seed, "Random seed")->capture_default_str();
  app.add_option("--output", o.output, "Output file (default stdout)");
  app.add_option("--summary", o.summary, "Per-epsilon summary file (sweep)");
  app.add_option("--delimiter", o.delimiter, "Output delimiter, or 'tab'")
      ->capture_default_str();
  app.add_option("--denominator", o.denominator, "Mass grid for verify-eop")
      ->capture_default_str();
  app.add_option("--seeds", o.seeds, "Random instances per cell for verify-table")
      ->capture_default_str();
  app.add_option("--threads", o.threads, "Sweep worker threads (0 = all cores)")
      ->capture_default_str();

  auto* metrics = app.add_subcommand("metrics", "Fairness gaps and group utilities");
  auto* verify_eop = app.add_subcommand("verify-eop", "Criterion/EOP equivalences");
  auto* verify_tbl = app.add_subcommand("verify-table", "Optimal-prediction table");
  auto* sweep = app.add_subcommand("sweep", "Cross-validated epsilon sweep");
  for (auto* sub : {metrics, verify_eop, verify_tbl, sweep}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);
  try {
    if (metrics->parsed()) return run_metrics(o);
    if (verify_eop->parsed()) return run_verify_eop(o);
    if (verify_tbl->parsed()) return run_verify_table(o);
    if (sweep->parsed()) return run_sweep(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
