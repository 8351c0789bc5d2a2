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

#include "eopfair/metrics/metrics.hpp"

#include <algorithm>
#include <array>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "eopfair/core/rational.hpp"

namespace eopfair {
namespace {

void check_lengths(std::size_t a, std::size_t b, std::size_t c) {
  if (a != b || b != c) {
    throw std::invalid_argument("metric inputs have different lengths");
  }
  if (a == 0) throw std::invalid_argument("metric inputs are empty");
}

std::vector<GroupId> distinct_groups(std::span<const GroupId> z) {
  std::vector<GroupId> groups(z.begin(), z.end());
  std::sort(groups.begin(), groups.end());
  groups.erase(std::unique(groups.begin(), groups.end()), groups.end());
  return groups;
}

std::vector<GroupId> require_two_groups(std::span<const GroupId> z,
                                        const std::string& metric) {
  auto groups = distinct_groups(z);
  if (groups.size() < 2) {
    throw std::invalid_argument(metric + " needs at least two groups");
  }
  return groups;
}

int as_binary(double v, const std::string& metric) {
  if (v == 0.0) return 0;
  if (v == 1.0) return 1;
  std::ostringstream msg;
  msg << metric << " expects binary values, got " << v;
  throw std::invalid_argument(msg.str());
}

bool all_binary(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(),
                     [](double x) { return x == 0.0 || x == 1.0; });
}

// count[group][condition][outcome] for binary condition and outcome.
using CountTable = std::map<GroupId, std::array<std::array<long, 2>, 2>>;

// Largest cross-group difference of P(outcome | group, condition) over the
// two conditions and two outcomes. Conditions absent from a group are
// reported and excluded.
Rational conditional_gap(const CountTable& counts, const std::string& condition,
                         std::vector<std::string>& skipped) {
  Rational gap = 0;
  for (int c = 0; c < 2; ++c) {
    std::vector<std::pair<GroupId, std::array<long, 2>>> present;
    for (const auto& [group, table] : counts) {
      if (table[c][0] + table[c][1] > 0) {
        present.emplace_back(group, table[c]);
      } else {
        skipped.push_back(condition + "=" + std::to_string(c) +
                          " absent in group " + std::to_string(group));
      }
    }
    if (present.size() < 2) continue;
    for (int o = 0; o < 2; ++o) {
      Rational lo, hi;
      bool first = true;
      for (const auto& [group, row] : present) {
        Rational p = make_rational(row[o], row[0] + row[1]);
        if (first || p < lo) lo = p;
        if (first || p > hi) hi = p;
        first = false;
      }
      if (hi - lo > gap) gap = hi - lo;
    }
  }
  return gap;
}

double spread(const std::map<GroupId, double>& values) {
  if (values.size() < 2) return 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& [group, v] : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi - lo;
}

MetricReport residual_difference(std::span<const double> y,
                                 std::span<const double> yhat,
                                 std::span<const GroupId> z, bool positive) {
  check_lengths(y.size(), yhat.size(), z.size());
  std::map<GroupId, std::pair<double, long>> acc;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double r = positive ? yhat[i] - y[i] : y[i] - yhat[i];
    auto& [sum, count] = acc[z[i]];
    if (r >= 0.0) {
      sum += r;
      ++count;
    }
  }
  MetricReport report;
  report.name = positive ? "positive_residual_difference"
                         : "negative_residual_difference";
  for (const auto& [group, sc] : acc) {
    report.per_group[group] =
        sc.second > 0 ? sc.first / static_cast<double>(sc.second) : 0.0;
  }
  report.gap = spread(report.per_group);
  return report;
}

// Group means accumulated relative to the first value, so that a constant
// column has exactly that constant as every group mean.
std::map<GroupId, double> shifted_group_means(std::span<const double> v,
                                              std::span<const GroupId> z) {
  std::map<GroupId, double> out;
  if (v.empty()) return out;
  const double ref = v[0];
  std::map<GroupId, std::pair<double, long>> acc;
  for (std::size_t i = 0; i < v.size(); ++i) {
    acc[z[i]].first += v[i] - ref;
    acc[z[i]].second += 1;
  }
  for (const auto& [group, sc] : acc) {
    out[group] = ref + sc.first / static_cast<double>(sc.second);
  }
  return out;
}

}  // namespace

std::string record_header() { return "metric,gap,exact,per_group,strata_skipped"; }

std::string to_record(const MetricReport& report) {
  std::ostringstream out;
  out << std::setprecision(17) << report.name << ',' << report.gap << ','
      << (report.exact ? "exact" : "float") << ',';
  bool first = true;
  for (const auto& [group, v] : report.per_group) {
    out << (first ? "" : ";") << group << ':' << v;
    first = false;
  }
  out << ',';
  first = true;
  for (const auto& s : report.strata_skipped) {
    out << (first ? "" : ";") << s;
    first = false;
  }
  return out.str();
}

MetricReport statistical_parity_gap(std::span<const double> yhat,
                                    std::span<const GroupId> z) {
  check_lengths(yhat.size(), z.size(), z.size());
  const std::string name = "statistical_parity_gap";
  require_two_groups(z, name);
  CountTable counts;
  for (std::size_t i = 0; i < yhat.size(); ++i) {
    counts[z[i]][0][as_binary(yhat[i], name)] += 1;
  }
  MetricReport report;
  report.name = name;
  report.exact = true;
  std::vector<std::string> unused;
  report.gap = to_double(conditional_gap(counts, "all", unused));
  for (const auto& [group, t] : counts) {
    report.per_group[group] = to_double(make_rational(t[0][1], t[0][0] + t[0][1]));
  }
  return report;
}

MetricReport equality_of_odds_gap(std::span<const double> y,
                                  std::span<const double> yhat,
                                  std::span<const GroupId> z) {
  check_lengths(y.size(), yhat.size(), z.size());
  const std::string name = "equality_of_odds_gap";
  require_two_groups(z, name);
  CountTable counts;
  for (std::size_t i = 0; i < y.size(); ++i) {
    counts[z[i]][as_binary(y[i], name)][as_binary(yhat[i], name)] += 1;
  }
  MetricReport report;
  report.name = name;
  report.exact = true;
  report.gap = to_double(conditional_gap(counts, "y", report.strata_skipped));
  for (const auto& [group, t] : counts) {
    if (t[1][0] + t[1][1] > 0) {
      report.per_group[group] = to_double(make_rational(t[1][1], t[1][0] + t[1][1]));
    }
  }
  return report;
}

MetricReport predictive_value_parity_gap(std::span<const double> y,
                                         std::span<const double> yhat,
                                         std::span<const GroupId> z) {
  check_lengths(y.size(), yhat.size(), z.size());
  const std::string name = "predictive_value_parity_gap";
  require_two_groups(z, name);
  CountTable counts;
  for (std::size_t i = 0; i < y.size(); ++i) {
    counts[z[i]][as_binary(yhat[i], name)][as_binary(y[i], name)] += 1;
  }
  MetricReport report;
  report.name = name;
  report.exact = true;
  report.gap = to_double(conditional_gap(counts, "yhat", report.strata_skipped));
  for (const auto& [group, t] : counts) {
    if (t[1][0] + t[1][1] > 0) {
      report.per_group[group] = to_double(make_rational(t[1][1], t[1][0] + t[1][1]));
    }
  }
  return report;
}

MetricReport accuracy_parity_gap(std::span<const double> y,
                                 std::span<const double> yhat,
                                 std::span<const GroupId> z) {
  check_lengths(y.size(), yhat.size(), z.size());
  MetricReport report;
  report.name = "accuracy_parity_gap";
  require_two_groups(z, report.name);
  if (all_binary(y) && all_binary(yhat)) {
    std::map<GroupId, std::pair<long, long>> errors;  // (mistakes, total)
    for (std::size_t i = 0; i < y.size(); ++i) {
      auto& [wrong, total] = errors[z[i]];
      wrong += y[i] != yhat[i] ? 1 : 0;
      ++total;
    }
    Rational lo, hi;
    bool first = true;
    for (const auto& [group, wt] : errors) {
      Rational rate = make_rational(wt.first, wt.second);
      report.per_group[group] = to_double(rate);
      if (first || rate < lo) lo = rate;
      if (first || rate > hi) hi = rate;
      first = false;
    }
    report.exact = true;
    report.gap = to_double(Rational(hi - lo));
    return report;
  }
  std::map<GroupId, std::pair<double, long>> acc;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double e = yhat[i] - y[i];
    acc[z[i]].first += e * e;
    acc[z[i]].second += 1;
  }
  for (const auto& [group, sc] : acc) {
    report.per_group[group] = sc.first / static_cast<double>(sc.second);
  }
  report.gap = spread(report.per_group);
  return report;
}

MetricReport positive_residual_difference(std::span<const double> y,
                                          std::span<const double> yhat,
                                          std::span<const GroupId> z) {
  return residual_difference(y, yhat, z, /*positive=*/true);
}

MetricReport negative_residual_difference(std::span<const double> y,
                                          std::span<const double> yhat,
                                          std::span<const GroupId> z) {
  return residual_difference(y, yhat, z, /*positive=*/false);
}

MetricReport mean_difference(std::span<const double> yhat,
                             std::span<const GroupId> z) {
  check_lengths(yhat.size(), z.size(), z.size());
  MetricReport report;
  report.name = "mean_difference";
  require_two_groups(z, report.name);
  report.per_group = shifted_group_means(yhat, z);
  report.gap = spread(report.per_group);
  return report;
}

std::map<GroupId, double> group_average_utility(std::span<const double> y,
                                                std::span<const double> yhat,
                                                std::span<const GroupId> z,
                                                const UtilitySpec& spec) {
  check_lengths(y.size(), yhat.size(), z.size());
  std::vector<double> u(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) u[i] = spec.evaluate(z[i], y[i], yhat[i]);
  return shifted_group_means(u, z);
}

std::map<GroupId, double> group_average_utility(const Dataset& data,
                                                const LinearModel& model,
                                                const UtilitySpec& spec) {
  const Eigen::VectorXd yhat = model.predict(data);
  return group_average_utility(data.target_span(),
                               std::span<const double>(yhat.data(), data.size()),
                               data.groups(), spec);
}

double min_group_average_utility(std::span<const double> y,
                                 std::span<const double> yhat,
                                 std::span<const GroupId> z,
                                 const UtilitySpec& spec) {
  const auto per_group = group_average_utility(y, yhat, z, spec);
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& [group, v] : per_group) lo = std::min(lo, v);
  return lo;
}

double min_group_average_utility(const Dataset& data, const LinearModel& model,
                                 const UtilitySpec& spec) {
  const auto per_group = group_average_utility(data, model, spec);
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& [group, v] : per_group) lo = std::min(lo, v);
  return lo;
}

}  // namespace eopfair
