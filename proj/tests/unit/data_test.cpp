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


#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <unistd.h>

#include "eopfair/data/communities.hpp"
#include "eopfair/data/synthetic.hpp"
#include "eopfair/data/table.hpp"
#include "eopfair/data/toy.hpp"

namespace eopfair {
namespace {

namespace fs = std::filesystem;

class TempFile {
 public:
  explicit TempFile(const std::string& contents) {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("eopfair_data_test_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++) + ".csv");
    std::ofstream(path_) << contents;
  }
  ~TempFile() { fs::remove(path_); }
  std::string path() const { return path_.string(); }

 private:
  fs::path path_;
};

RawTable parse(const std::string& text, TableFormat format = {}) {
  std::istringstream in(text);
  return parse_table(in, format);
}

TEST(TableTest, HeaderlessWithNames) {
  TableFormat format;
  format.column_names = {"a", "b"};
  const auto t = parse("1,2\n3,?\n", format);
  EXPECT_EQ(t.num_rows(), 2u);
  EXPECT_EQ(t.column_index("b"), 1u);
  EXPECT_EQ(t.number(1, 0), 3.0);
  EXPECT_TRUE(t.is_missing(1, 1));
  EXPECT_FALSE(t.is_missing(0, 1));
  EXPECT_FALSE(t.find_column("c").has_value());
  EXPECT_THROW(t.column_index("c"), std::invalid_argument);
}

TEST(TableTest, DefaultNamesAndHeader) {
  EXPECT_EQ(parse("1,2\n").column_names(), (std::vector<std::string>{"c0", "c1"}));
  TableFormat format;
  format.has_header = true;
  format.delimiter = '\t';
  const auto t = parse("x\ty\n0.5\t\n", format);
  EXPECT_EQ(t.column_names()[1], "y");
  EXPECT_TRUE(t.is_missing(0, 1));  // empty cells are missing too
}

TEST(TableTest, RaggedRowNamesTheLine) {
  try {
    parse("1,2\n3\n");
    FAIL() << "ragged row accepted";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

TEST(TableTest, NonNumericCellNamesRowAndColumn) {
  TableFormat format;
  format.column_names = {"a", "b"};
  const auto t = parse("1,x\n", format);
  try {
    t.number(0, 1);
    FAIL() << "non-numeric cell accepted";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("column b"), std::string::npos) << e.what();
  }
}

TEST(TableTest, LoadsFromFile) {
  TempFile file("1,?,3\n4,5,6\n");
  const auto t = load_table(file.path(), TableFormat{});
  EXPECT_EQ(t.num_rows(), 2u);
  EXPECT_TRUE(t.is_missing(0, 1));
  EXPECT_THROW(load_table("/nonexistent/eopfair.csv", TableFormat{}), std::runtime_error);
}

TEST(SnapshotTest, RoundTrip) {
  const Dataset data({{{0.25, -1.5}, 0, 0.5}, {{1e-17, 3.0}, 1, 1.0}}, TaskMode::kRegression,
                     {"f1", "f2"});
  TempFile file("");
  write_dataset_snapshot(data, file.path());
  const auto back = read_dataset_snapshot(file.path(), TaskMode::kRegression);
  EXPECT_EQ(back.features(), data.features());
  EXPECT_EQ(back.targets(), data.targets());
  EXPECT_EQ(std::vector<GroupId>(back.groups().begin(), back.groups().end()),
            (std::vector<GroupId>{0, 1}));
  EXPECT_EQ(back.feature_names(), data.feature_names());
}

TEST(SnapshotTest, RejectsOtherFiles) {
  TempFile file("a,b\n1,2\n");
  EXPECT_THROW(read_dataset_snapshot(file.path(), TaskMode::kRegression), std::runtime_error);
}

// Small schema: identifier, two features, one minority share, target.
ColumnRoles small_roles() {
  ColumnRoles roles;
  roles.target = "t";
  roles.minority_columns = {"m"};
  roles.excluded = {"id"};
  return roles;
}

RawTable small_table(const std::string& body) {
  TableFormat format;
  format.has_header = true;
  return parse("id,f1,f2,m,t\n" + body, format);
}

TEST(PreprocessTest, DropsRowsWithUnknownTarget) {
  const auto raw = small_table(
      "1,0.1,0.5,0.9,0.2\n"
      "2,0.2,0.4,0.1,?\n"
      "3,0.3,0.3,0.2,0.4\n"
      "4,0.4,0.2,0.7,?\n"
      "5,0.5,0.1,0.1,0.8\n");
  const auto [data, report] = preprocess_communities(raw, small_roles());
  EXPECT_EQ(report.raw_rows, 5u);
  EXPECT_EQ(report.rows_dropped, 2u);
  EXPECT_EQ(data.size(), 3u);
  EXPECT_EQ(report.group_sizes.at(0), 2u);
  EXPECT_EQ(report.group_sizes.at(1), 1u);
  // Targets 0.2, 0.4, 0.8 scaled by 0.8 and flipped.
  EXPECT_DOUBLE_EQ(data.targets()(0), 0.75);
  EXPECT_DOUBLE_EQ(data.targets()(1), 0.5);
  EXPECT_DOUBLE_EQ(data.targets()(2), 0.0);
  EXPECT_DOUBLE_EQ(report.target_scale, 0.8);
  // f1, f2, then the group indicator.
  EXPECT_EQ(data.feature_names(), (std::vector<std::string>{"f1", "f2", "z"}));
  EXPECT_EQ(data.features()(0, 2), 1.0);
  EXPECT_EQ(data.features()(1, 2), 0.0);
}

TEST(PreprocessTest, MissingFractionBoundary) {
  // Ten rows; f1 is missing in 8 (kept), f2 in 9 (dropped).
  std::string body;
  for (int r = 0; r < 10; ++r) {
    body += std::to_string(r) + "," + (r < 8 ? "?" : std::to_string(r)) + "," +
            (r < 9 ? "?" : "1") + "," + (r % 2 ? "0.9" : "0.1") + "," +
            std::to_string(0.1 * (r + 1)) + "\n";
  }
  const auto [data, report] = preprocess_communities(small_table(body), small_roles());
  EXPECT_EQ(report.columns_dropped_missing, std::vector<std::string>{"f2"});
  EXPECT_EQ(report.imputed_cells, 8u);
  EXPECT_EQ(report.retained_features, 1u);
  EXPECT_EQ(data.feature_names().front(), "f1");
}

TEST(PreprocessTest, ThresholdIsStrict) {
  const auto raw = small_table(
      "1,0.1,0.5,0.5,0.2\n"
      "2,0.2,0.4,0.51,0.3\n");
  const auto [data, report] = preprocess_communities(raw, small_roles());
  EXPECT_EQ(data.groups()[0], 0);
  EXPECT_EQ(data.groups()[1], 1);
}

TEST(PreprocessTest, MissingMinorityShareIsImputed) {
  const auto raw = small_table(
      "1,0.1,0.5,0.9,0.2\n"
      "2,0.2,0.4,?,0.3\n"
      "3,0.3,0.3,0.3,0.3\n");
  // Imputed share is (0.9 + 0.3) / 2 = 0.6.
  const auto [data, report] = preprocess_communities(raw, small_roles());
  EXPECT_EQ(data.groups()[1], 1);
}

TEST(PreprocessTest, ConstantColumnsAreDropped) {
  const auto raw = small_table(
      "1,0.1,0.5,0.9,0.2\n"
      "2,0.2,0.5,0.1,0.3\n");
  const auto [data, report] = preprocess_communities(raw, small_roles());
  EXPECT_EQ(report.columns_dropped_constant, std::vector<std::string>{"f2"});
}

TEST(PreprocessTest, ErrorsOnDegenerateInput) {
  EXPECT_THROW(preprocess_communities(small_table("1,0.1,0.5,0.9,?\n"), small_roles()),
               std::runtime_error);
  EXPECT_THROW(preprocess_communities(small_table("1,0.1,0.5,?,0.3\n2,0.2,0.1,?,0.1\n"),
                                      small_roles()),
               std::runtime_error);
}

TEST(PreprocessTest, RaggedFixtureFileIsRejected) {
  TempFile file("1,2,3\n4,5\n");
  EXPECT_THROW(load_communities(file.path()), std::runtime_error);
}

TEST(CommunitiesSchemaTest, ColumnNames) {
  const auto& names = communities_column_names();
  EXPECT_EQ(names.size(), 128u);
  EXPECT_EQ(names.front(), "state");
  EXPECT_EQ(names.back(), "ViolentCrimesPerPop");
  EXPECT_FALSE(communities_format().has_header);
}

class SyntheticPipelineTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    raw_ = new RawTable(make_synthetic_communities(5));
    auto processed = preprocess_communities(*raw_);
    data_ = new Dataset(std::move(processed.first));
    report_ = new PreprocessReport(std::move(processed.second));
  }
  static void TearDownTestSuite() {
    delete raw_;
    delete data_;
    delete report_;
  }
  static RawTable* raw_;
  static Dataset* data_;
  static PreprocessReport* report_;
};

RawTable* SyntheticPipelineTest::raw_ = nullptr;
Dataset* SyntheticPipelineTest::data_ = nullptr;
PreprocessReport* SyntheticPipelineTest::report_ = nullptr;

TEST_F(SyntheticPipelineTest, Shape) {
  EXPECT_EQ(report_->raw_rows, 1994u);
  EXPECT_EQ(report_->raw_columns, 128u);
  EXPECT_EQ(report_->descriptive_features, 122u);
  EXPECT_EQ(report_->columns_dropped_missing.size(), 22u);
  EXPECT_EQ(report_->retained_rows, 1994u);
  EXPECT_EQ(data_->num_features(), report_->retained_features + 1);
  std::size_t total = 0;
  for (const auto& [g, size] : report_->group_sizes) total += size;
  EXPECT_EQ(total, report_->retained_rows);
  EXPECT_EQ(report_->group_sizes.size(), 2u);
}

TEST_F(SyntheticPipelineTest, FeaturesAreStandardized) {
  const auto& x = data_->features();
  const auto n = static_cast<double>(x.rows());
  for (Eigen::Index j = 0; j + 1 < x.cols(); ++j) {
    const double mean = x.col(j).mean();
    const double var = (x.col(j).array() - mean).square().sum() / n;
    EXPECT_LE(std::abs(mean), 1e-9) << data_->feature_names()[static_cast<std::size_t>(j)];
    EXPECT_LE(std::abs(var - 1.0), 1e-9) << data_->feature_names()[static_cast<std::size_t>(j)];
  }
}

TEST_F(SyntheticPipelineTest, TargetsInUnitInterval) {
  EXPECT_GE(data_->targets().minCoeff(), 0.0);
  EXPECT_LE(data_->targets().maxCoeff(), 1.0);
  // The largest raw target maps to 0 after the flip.
  EXPECT_EQ(data_->targets().minCoeff(), 0.0);
}

TEST_F(SyntheticPipelineTest, Deterministic) {
  const auto again = preprocess_communities(make_synthetic_communities(5)).first;
  EXPECT_EQ(again.features(), data_->features());
  EXPECT_EQ(again.targets(), data_->targets());
}

TEST_F(SyntheticPipelineTest, ReportText) {
  const auto text = to_string(*report_);
  EXPECT_NE(text.find("raw_rows=1994\n"), std::string::npos);
  EXPECT_NE(text.find("group_1_size="), std::string::npos);
}

TEST(ToyTest, DeterministicPerSeed) {
  ToyConfig cfg;
  cfg.seed = 11;
  cfg.n = 12;
  cfg.k = 2;
  cfg.group0 = 5;
  cfg.group1 = 7;
  cfg.noise = 0.1;
  const auto a = make_toy_instance(cfg);
  const auto b = make_toy_instance(cfg);
  EXPECT_EQ(a.data.features(), b.data.features());
  EXPECT_EQ(a.data.targets(), b.data.targets());
  EXPECT_EQ(a.data.group_size(0), 5u);
  EXPECT_EQ(a.data.group_size(1), 7u);
  EXPECT_GE(a.data.features().minCoeff(), 0.0);
  EXPECT_LT(a.data.features().maxCoeff(), 1.0);
  EXPECT_GE(a.data.targets().minCoeff(), 0.0);
  EXPECT_LE(a.data.targets().maxCoeff(), 1.0);
  cfg.seed = 12;
  EXPECT_NE(make_toy_instance(cfg).data.features(), a.data.features());
}

TEST(ToyTest, NoiselessPlantedWeightsAreRecovered) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    ToyConfig cfg;
    cfg.seed = seed;
    cfg.n = 20;
    cfg.k = 3;
    cfg.group0 = 10;
    cfg.group1 = 10;
    const auto toy = make_toy_instance(cfg);
    const Eigen::MatrixXd& x = toy.data.features();
    const Eigen::VectorXd theta = x.colPivHouseholderQr().solve(toy.data.targets());
    EXPECT_LE((theta - toy.planted).lpNorm<Eigen::Infinity>(), 1e-10);
  }
}

TEST(ToyTest, InvalidSplits) {
  ToyConfig cfg;
  cfg.n = 4;
  cfg.group0 = 4;
  cfg.group1 = 0;
  EXPECT_THROW(make_toy_instance(cfg), std::invalid_argument);
  cfg.group0 = 3;
  cfg.group1 = 3;
  EXPECT_THROW(make_toy_instance(cfg), std::invalid_argument);
  cfg.n = 1;
  cfg.group0 = 1;
  cfg.group1 = 0;
  EXPECT_THROW(make_toy_instance(cfg), std::invalid_argument);
}

}  // namespace
}  // namespace eopfair
