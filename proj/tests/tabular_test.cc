// Copyright 2026 The rfflab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rfflab/tabular.h"

#include <cmath>
#include <map>

#include <gtest/gtest.h>

#include "rfflab/errors.h"

namespace rfflab {
namespace {

CsvTable Table(std::vector<std::string> header, std::vector<std::vector<std::string>> rows) {
  CsvTable t;
  t.header = std::move(header);
  t.rows = std::move(rows);
  return t;
}

// n rows: numeric x ~ N(0,1) with some missing, colour with 3 levels,
// binary label balanced.
CsvTable BinaryTable(std::size_t n, std::uint64_t seed = 0) {
  SeededRng rng(seed, "table");
  CsvTable t;
  t.header = {"x", "colour", "label"};
  const char* colours[] = {"red", "green", "blue"};
  for (std::size_t i = 0; i < n; ++i) {
    const bool missing = rng.Uniform01() < 0.05;
    t.rows.push_back({missing ? "" : FormatDouble(rng.StdNormal()),
                      colours[rng.UniformIndex(3)], i % 2 == 0 ? "0" : "1"});
  }
  return t;
}

TEST(IngestTest, InfersRolesAndTask) {
  const Dataset d = IngestTable(Table({"size", "kind", "price"},
                                      {{"1.5", "a", "10.2"}, {"2.0", "b", "11.7"},
                                       {"3.1", "a", "9.9"}}));
  ASSERT_EQ(d.schema.columns.size(), 3u);
  EXPECT_EQ(d.schema.columns[0].role, ColumnRole::kNumeric);
  EXPECT_EQ(d.schema.columns[1].role, ColumnRole::kCategorical);
  EXPECT_EQ(d.schema.target, 2u);
  EXPECT_EQ(d.schema.task, TaskKind::kRegression);
}

TEST(IngestTest, HighCardinalityCategoricalDropped) {
  CsvTable t;
  t.header = {"id", "v", "y"};
  for (int i = 0; i < 1000; ++i)
    t.rows.push_back({"c" + std::to_string(i % 150), std::to_string(i % 7), std::to_string(i)});
  const Dataset d = IngestTable(t);
  EXPECT_TRUE(d.schema.columns[0].dropped);
}

TEST(IngestTest, MissingTargetRowsDroppedAndAllMissingColumnRejected) {
  const Dataset d = IngestTable(Table({"x", "y"}, {{"1", "2"}, {"2", ""}, {"3", "NA"}, {"4", "5"}}));
  EXPECT_EQ(d.table.rows.size(), 2u);
  EXPECT_EQ(d.schema.dropped_rows, 2u);
  EXPECT_THROW(IngestTable(Table({"x", "y"}, {{"", "1"}, {"", "2"}})), IoError);
}

TEST(IngestTest, SchemaHintsOverride) {
  const SchemaHints h = ParseSchemaHints(R"({"target": "x", "task": "regression",
                                             "roles": {"y": "categorical"}})");
  const Dataset d = IngestTable(Table({"x", "y"}, {{"1", "2"}, {"2", "3"}, {"3", "2"}}), h);
  EXPECT_EQ(d.schema.target, 0u);
  EXPECT_EQ(d.schema.columns[1].role, ColumnRole::kCategorical);
}

TEST(SplitTest, StratifiedWithinTwoPoints) {
  const Dataset d = IngestTable(BinaryTable(1000));
  ASSERT_EQ(d.schema.task, TaskKind::kBinclass);
  const FittedPreproc f = FitPreproc(d, 3);
  EXPECT_EQ(f.plan.stratify_by, "class");
  for (const auto* rows : {&f.splits.train, &f.splits.validation, &f.splits.test}) {
    double ones = 0;
    for (std::size_t r : *rows) ones += d.table.rows[r][2] == "1";
    EXPECT_NEAR(ones / static_cast<double>(rows->size()), 0.5, 0.02);
  }
  EXPECT_EQ(f.splits.train.size() + f.splits.validation.size() + f.splits.test.size(), 1000u);
  EXPECT_NEAR(static_cast<double>(f.splits.train.size()), 640, 2);
}

TEST(SplitTest, RegressionUsesQuantileBins) {
  CsvTable t;
  t.header = {"x", "y"};
  for (int i = 0; i < 300; ++i) t.rows.push_back({std::to_string(i), FormatDouble(i * 0.37)});
  const FittedPreproc f = FitPreproc(IngestTable(t), 0);
  EXPECT_EQ(f.plan.stratify_by, "target_quantile_bins:10");
}

TEST(SplitTest, SingletonClassFallsBackWithWarning) {
  CsvTable t = BinaryTable(100);
  t.rows[0][2] = "2";  // a class with one row
  const FittedPreproc f = FitPreproc(IngestTable(t), 0);
  EXPECT_EQ(f.plan.stratify_by, "none");
  EXPECT_FALSE(f.plan.warnings.empty());
}

TEST(PreprocTest, TrainFeaturesStandardized) {
  const Dataset d = IngestTable(BinaryTable(1000));
  const FittedPreproc f = FitPreproc(d, 1);
  const Mat x = TransformFeatures(f.plan, d, f.splits.train);
  // Column 0 is the numeric feature (missing cells imputed with the median).
  double s = 0.0, sq = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    s += x(i, 0);
    sq += x(i, 0) * x(i, 0);
  }
  const double n = static_cast<double>(x.rows());
  EXPECT_NEAR(s / n, 0.0, 1e-10);
  EXPECT_NEAR(std::sqrt(sq / n - (s / n) * (s / n)), 1.0, 1e-10);
}

TEST(PreprocTest, OneHotWidthAndConstantColumn) {
  CsvTable t = BinaryTable(200);
  t.header.insert(t.header.begin(), "const");
  for (auto& r : t.rows) r.insert(r.begin(), "4.0");
  const Dataset d = IngestTable(t);
  const FittedPreproc f = FitPreproc(d, 0);
  std::size_t levels = 0;
  for (const auto& c : f.plan.categorical) levels += c.levels.size();
  EXPECT_EQ(f.plan.feature_width(), 2 + levels);
  EXPECT_EQ(f.plan.numeric[0].sd, 1.0);
  const Mat x = TransformFeatures(f.plan, d, f.splits.test);
  EXPECT_EQ(x.cols(), f.plan.feature_width());
  for (std::size_t i = 0; i < x.rows(); ++i) EXPECT_EQ(x(i, 0), 0.0);
  EXPECT_EQ(f.plan.FeatureNames(d.schema).size(), x.cols());
}

TEST(PreprocTest, TestRowsNeverLeakIntoPlan) {
  const Dataset d = IngestTable(BinaryTable(500, 4));
  const FittedPreproc f = FitPreproc(d, 7);
  Dataset perturbed = d;
  for (std::size_t r : f.splits.test) {
    perturbed.table.rows[r][0] = "123456.0";
    perturbed.table.rows[r][1] = "purple";
  }
  for (std::size_t r : f.splits.validation) perturbed.table.rows[r][0] = "-999";
  const PreprocPlan clean = FitPlan(d, f.splits.train);
  EXPECT_TRUE(FitPlan(perturbed, f.splits.train) == clean);
  EXPECT_TRUE(clean.numeric == f.plan.numeric);
  EXPECT_TRUE(clean.categorical == f.plan.categorical);
  // Unseen level at transform time maps to all-zero one-hot.
  const Mat x = TransformFeatures(f.plan, perturbed, f.splits.test);
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 1; j < x.cols(); ++j) EXPECT_EQ(x(i, j), 0.0);
}

TEST(BenchmarkTest, PlantedSolutionBothArmsFit) {
  CsvTable t;
  t.header = {"a", "b", "y"};
  SeededRng rng(0, "planted");
  for (int i = 0; i < 600; ++i) {
    const double a = rng.StdNormal();
    t.rows.push_back({FormatDouble(a), FormatDouble(rng.StdNormal()), FormatDouble(a)});
  }
  BenchConfig cfg;
  cfg.seeds = {0};
  cfg.hidden = {32};
  cfg.epochs = 60;
  cfg.batch_size = 32;
  cfg.rff->family.bandwidth = 4.0;
  const ResultTable r = RunBenchmark(IngestTable(t, {}, "planted"), cfg);
  ASSERT_EQ(r.rows.size(), 2u);
  for (const ResultRow& row : r.rows) {
    EXPECT_EQ(row.metric, "rmse");
    // Target sd is about 1; the feature-mapped arm learns the linear
    // target more slowly.
    EXPECT_LE(row.value, row.arm == "raw" ? 0.05 : 0.1) << row.arm;
  }
  EXPECT_EQ(r.rows[1].input_dim, 1024u);
}

TEST(BenchmarkTest, ZeroEpochsReportInitialMetric) {
  BenchConfig cfg;
  cfg.seeds = {1};
  cfg.hidden = {8};
  cfg.epochs = 0;
  cfg.rff->num_frequencies = 16;
  const ResultTable r = RunBenchmark(IngestTable(BinaryTable(300)), cfg);
  for (const ResultRow& row : r.rows) {
    EXPECT_EQ(row.metric, "accuracy");
    EXPECT_EQ(row.value, row.initial_value);
    EXPECT_EQ(row.epochs, 0u);
  }
}

TEST(HousingTableTest, ShapeAndCap) {
  const CsvTable t = SynthesizeHousingTable(2000, 0);
  EXPECT_EQ(t.rows.size(), 2000u);
  EXPECT_EQ(t.header.back(), "median_house_value");
  std::size_t missing = 0;
  for (const auto& r : t.rows) {
    EXPECT_LE(std::stod(r.back()), 5.00001);
    missing += r[4].empty();
  }
  EXPECT_GT(missing, 0u);
  EXPECT_EQ(t.rows, SynthesizeHousingTable(2000, 0).rows);
}

}  // namespace
}  // namespace rfflab
