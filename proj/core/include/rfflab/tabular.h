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

#ifndef RFFLAB_TABULAR_H_
#define RFFLAB_TABULAR_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rfflab/csv.h"
#include "rfflab/matrix.h"
#include "rfflab/rff.h"
#include "rfflab/train.h"

namespace rfflab {

enum class ColumnRole { kNumeric, kCategorical, kTarget };
enum class TaskKind { kBinclass, kMulticlass, kRegression };

std::string_view ToString(ColumnRole role);
std::string_view ToString(TaskKind task);
TaskKind ParseTaskKind(std::string_view name);

struct ColumnInfo {
  std::string name;
  ColumnRole role = ColumnRole::kNumeric;
  bool dropped = false;
  std::string drop_reason;
  std::size_t distinct_values = 0;  // over non-missing cells
  std::size_t missing = 0;
};

struct DatasetSchema {
  std::vector<ColumnInfo> columns;
  std::size_t target = 0;  // index into columns
  TaskKind task = TaskKind::kRegression;
  std::size_t rows = 0;
  std::size_t dropped_rows = 0;  // rows removed for a missing target
  std::vector<std::string> classes;  // classification: sorted class labels
};

// Optional overrides, usually loaded from a JSON sidecar:
//   {"target": "price", "task": "regression",
//    "roles": {"zip": "categorical", "id": "drop"}}
struct SchemaHints {
  std::optional<std::string> target;
  std::optional<TaskKind> task;
  std::map<std::string, std::string> roles;  // numeric | categorical | drop
};

SchemaHints LoadSchemaHints(const std::filesystem::path& path);
SchemaHints ParseSchemaHints(std::string_view json_text);

struct Dataset {
  std::string name;
  CsvTable table;  // rows with a missing target already removed
  DatasetSchema schema;
};

bool IsMissing(std::string_view cell);

// Infers column roles (a column is numeric when every non-missing cell parses
// as a number), the task, and drops categorical columns with more than n/10
// distinct values. Throws IoError for unreadable files and columns with no
// non-missing values.
Dataset IngestCsv(const std::filesystem::path& path, const SchemaHints& hints = {},
                  std::string name = "");
Dataset IngestTable(CsvTable table, const SchemaHints& hints = {},
                    std::string name = "dataset");

struct SplitFractions {
  double train = 0.64;
  double validation = 0.16;
  double test = 0.20;
};

struct Splits {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
  std::vector<std::size_t> test;
};

struct NumericStats {
  std::size_t column = 0;
  double mean = 0.0;
  double sd = 1.0;
  double median = 0.0;  // imputation value
};

struct CategoricalLevels {
  std::size_t column = 0;
  std::vector<std::string> levels;  // sorted; "__missing__" when seen in train
};

// Everything learned from the training split. Nothing here depends on
// validation or test rows.
struct PreprocPlan {
  std::vector<NumericStats> numeric;
  std::vector<CategoricalLevels> categorical;
  std::vector<std::string> dropped;
  SplitFractions fractions;
  std::uint64_t split_seed = 0;
  std::string stratify_by;  // "class", "target_quantile_bins:10" or "none"
  std::vector<std::string> warnings;
  // Regression target standardization (train split).
  double target_mean = 0.0;
  double target_sd = 1.0;
  // Provenance: the training rows every statistic above was computed from.
  std::size_t fitted_rows = 0;
  std::uint64_t fitted_rows_digest = 0;

  std::size_t feature_width() const;
  std::vector<std::string> FeatureNames(const DatasetSchema& schema) const;
  friend bool operator==(const PreprocPlan&, const PreprocPlan&) = default;
};

bool operator==(const NumericStats&, const NumericStats&);
bool operator==(const CategoricalLevels&, const CategoricalLevels&);
bool operator==(const SplitFractions&, const SplitFractions&);

// Stratified split (by class for classification, by 10 target-quantile bins
// for regression). Falls back to an unstratified split, with a warning, when
// some stratum has a single row.
Splits StratifiedSplit(const Dataset& data, std::uint64_t split_seed,
                       const SplitFractions& fractions, std::string* stratify_by,
                       std::vector<std::string>* warnings);

struct FittedPreproc {
  PreprocPlan plan;
  Splits splits;
};

FittedPreproc FitPreproc(const Dataset& data, std::uint64_t split_seed,
                         const SplitFractions& fractions = {});
// Fits the plan on the given training rows only.
PreprocPlan FitPlan(const Dataset& data, const std::vector<std::size_t>& train_rows);

// Features for `rows`: standardized numerics (missing -> train median)
// followed by one-hot blocks in column order.
Mat TransformFeatures(const PreprocPlan& plan, const Dataset& data,
                      const std::vector<std::size_t>& rows);
// Class indices (classification) or standardized targets (regression).
Mat TransformTargets(const PreprocPlan& plan, const Dataset& data,
                     const std::vector<std::size_t>& rows);

struct RffArmConfig {
  SpectralFamily family{SpectralKind::kGaussian, 1.0};
  std::size_t num_frequencies = 512;
  FeatureVariant variant = FeatureVariant::kSinCos;
  FeatureScaling scaling = FeatureScaling::kStandard;
};

struct BenchConfig {
  std::vector<std::size_t> hidden = {128, 128};
  Activation activation = Activation::ReLU();
  bool bias = true;
  double init_scale = 1.4142135623730951;
  Optimizer optimizer = Optimizer::kSgd;
  double learning_rate = 0.05;
  double weight_decay = 0.0;
  std::size_t epochs = 20;
  std::size_t batch_size = 128;
  SplitFractions fractions;
  std::optional<RffArmConfig> rff = RffArmConfig{};  // nullopt: raw arm only
  std::vector<std::uint64_t> seeds = {0, 1, 2};
};

struct ResultRow {
  std::string dataset;
  std::string arm;     // "raw" or "rff"
  std::uint64_t seed = 0;
  std::string metric;  // "accuracy" or "rmse"
  double value = 0.0;        // test metric at the best validation epoch
  double validation = 0.0;   // validation metric at that epoch
  double initial_value = 0.0;  // test metric before training
  std::size_t epochs = 0;      // epochs actually trained
  std::size_t best_epoch = 0;
  std::size_t input_dim = 0;
  bool diverged = false;
  std::string note;
  double wall_seconds = 0.0;  // not part of the CSV (kept reproducible)
};

struct ArmSummary {
  std::string arm;
  std::string metric;
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation over seeds
  std::size_t runs = 0;
};

struct ResultTable {
  std::vector<ResultRow> rows;
  std::vector<ArmSummary> summary;
};

ResultTable RunBenchmark(const Dataset& data, const BenchConfig& config);

bool HigherIsBetter(TaskKind task);

// Deterministic stand-in for the 20,640-row California housing census table:
// eight numeric block-group features, a categorical ocean-proximity column,
// and median_house_value in units of $100k (capped at 5.00001). Location
// effects around metro centres and the coast make the target strongly
// nonlinear in latitude/longitude; room and population counts are
// heavy-tailed and total_bedrooms has ~1% missing cells.
CsvTable SynthesizeHousingTable(std::size_t rows = 20640, std::uint64_t seed = 0);

}  // namespace rfflab

#endif  // RFFLAB_TABULAR_H_
