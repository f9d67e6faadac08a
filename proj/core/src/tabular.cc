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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rfflab/errors.h"
#include "rfflab/random.h"

namespace rfflab {
namespace {

using json = nlohmann::json;

constexpr std::string_view kMissingLevel = "__missing__";

std::optional<double> ParseNumber(std::string_view cell) {
  if (IsMissing(cell)) return std::nullopt;
  const std::string s(cell);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str()) return std::nullopt;
  while (*end == ' ') ++end;
  if (*end != '\0' || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::uint64_t DigestRows(const std::vector<std::size_t>& rows) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t r : rows) h = MixSeed(h ^ static_cast<std::uint64_t>(r));
  return h;
}

double Median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::size_t ClassOf(const DatasetSchema& schema, std::string_view label) {
  const auto it = std::lower_bound(schema.classes.begin(), schema.classes.end(), label);
  Require(it != schema.classes.end() && *it == label,
          "unknown class label '" + std::string(label) + "'");
  return static_cast<std::size_t>(it - schema.classes.begin());
}

bool IsClassification(TaskKind t) { return t != TaskKind::kRegression; }

}  // namespace

std::string_view ToString(ColumnRole role) {
  switch (role) {
    case ColumnRole::kNumeric:
      return "numeric";
    case ColumnRole::kCategorical:
      return "categorical";
    case ColumnRole::kTarget:
      return "target";
  }
  return "?";
}

std::string_view ToString(TaskKind task) {
  switch (task) {
    case TaskKind::kBinclass:
      return "binclass";
    case TaskKind::kMulticlass:
      return "multiclass";
    case TaskKind::kRegression:
      return "regression";
  }
  return "?";
}

TaskKind ParseTaskKind(std::string_view name) {
  if (name == "binclass") return TaskKind::kBinclass;
  if (name == "multiclass") return TaskKind::kMulticlass;
  if (name == "regression") return TaskKind::kRegression;
  throw ContractError("unknown task '" + std::string(name) +
                      "' (valid: binclass, multiclass, regression)");
}

bool IsMissing(std::string_view cell) {
  while (!cell.empty() && cell.front() == ' ') cell.remove_prefix(1);
  while (!cell.empty() && cell.back() == ' ') cell.remove_suffix(1);
  return cell.empty() || cell == "NA" || cell == "N/A" || cell == "?" ||
         cell == "nan" || cell == "NaN" || cell == "null";
}

SchemaHints ParseSchemaHints(std::string_view json_text) {
  SchemaHints hints;
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw IoError(std::string("schema hints: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw IoError("schema hints: top level must be an object");
  if (j.contains("target")) hints.target = j["target"].get<std::string>();
  if (j.contains("task")) hints.task = ParseTaskKind(j["task"].get<std::string>());
  if (j.contains("roles")) {
    for (const auto& [name, role] : j["roles"].items()) {
      const std::string r = role.get<std::string>();
      if (r != "numeric" && r != "categorical" && r != "drop")
        throw IoError("schema hints: role for '" + name +
                      "' must be numeric, categorical or drop");
      hints.roles[name] = r;
    }
  }
  return hints;
}

SchemaHints LoadSchemaHints(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read schema hints '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseSchemaHints(buf.str());
}

Dataset IngestTable(CsvTable table, const SchemaHints& hints, std::string name) {
  const std::size_t cols = table.header.size();
  if (cols < 2) throw IoError("dataset needs at least one feature and a target");

  std::size_t target = cols - 1;
  if (hints.target) {
    const auto it = std::find(table.header.begin(), table.header.end(), *hints.target);
    if (it == table.header.end())
      throw IoError("target column '" + *hints.target + "' not found");
    target = static_cast<std::size_t>(it - table.header.begin());
  }

  Dataset data;
  data.name = std::move(name);
  const std::size_t before = table.rows.size();
  std::erase_if(table.rows, [&](const auto& row) { return IsMissing(row[target]); });
  data.schema.dropped_rows = before - table.rows.size();
  data.schema.rows = table.rows.size();
  data.schema.target = target;
  if (table.rows.empty()) throw IoError("dataset has no rows with a target value");

  const std::size_t n = table.rows.size();
  for (std::size_t c = 0; c < cols; ++c) {
    ColumnInfo info;
    info.name = table.header[c];
    std::set<std::string> distinct;
    bool numeric = true;
    for (const auto& row : table.rows) {
      if (IsMissing(row[c])) {
        ++info.missing;
        continue;
      }
      distinct.insert(row[c]);
      if (numeric && !ParseNumber(row[c])) numeric = false;
    }
    if (info.missing == n)
      throw IoError("column '" + info.name + "' has no non-missing values");
    info.distinct_values = distinct.size();
    info.role = numeric ? ColumnRole::kNumeric : ColumnRole::kCategorical;

    if (const auto it = hints.roles.find(info.name); it != hints.roles.end()) {
      if (it->second == "drop") {
        info.dropped = true;
        info.drop_reason = "schema hint";
      } else if (it->second == "categorical") {
        info.role = ColumnRole::kCategorical;
      } else if (!numeric) {
        throw IoError("column '" + info.name + "' is hinted numeric but has non-numeric cells");
      } else {
        info.role = ColumnRole::kNumeric;
      }
    }

    if (c == target) {
      const bool numeric_target = numeric;
      info.role = ColumnRole::kTarget;
      TaskKind task;
      if (hints.task) {
        task = *hints.task;
      } else if (!numeric_target) {
        task = distinct.size() == 2 ? TaskKind::kBinclass : TaskKind::kMulticlass;
      } else {
        bool integral = true;
        for (const auto& v : distinct) {
          const double d = *ParseNumber(v);
          integral = integral && d == std::floor(d);
        }
        if (integral && distinct.size() <= 10) {
          task = distinct.size() == 2 ? TaskKind::kBinclass : TaskKind::kMulticlass;
        } else {
          task = TaskKind::kRegression;
        }
      }
      if (task == TaskKind::kRegression && !numeric_target)
        throw IoError("regression target '" + info.name + "' has non-numeric values");
      data.schema.task = task;
      if (IsClassification(task)) {
        data.schema.classes.assign(distinct.begin(), distinct.end());
        if (data.schema.classes.size() < 2)
          throw IoError("classification target needs at least two classes");
      }
    } else if (!info.dropped && info.role == ColumnRole::kCategorical &&
               static_cast<double>(info.distinct_values) > static_cast<double>(n) / 10.0) {
      info.dropped = true;
      info.drop_reason = "more than n/10 distinct values";
    }
    data.schema.columns.push_back(std::move(info));
  }
  data.table = std::move(table);
  return data;
}

Dataset IngestCsv(const std::filesystem::path& path, const SchemaHints& hints,
                  std::string name) {
  if (name.empty()) name = path.stem().string();
  return IngestTable(ReadCsv(path), hints, std::move(name));
}

bool operator==(const NumericStats& a, const NumericStats& b) {
  return a.column == b.column && a.mean == b.mean && a.sd == b.sd && a.median == b.median;
}
bool operator==(const CategoricalLevels& a, const CategoricalLevels& b) {
  return a.column == b.column && a.levels == b.levels;
}
bool operator==(const SplitFractions& a, const SplitFractions& b) {
  return a.train == b.train && a.validation == b.validation && a.test == b.test;
}

std::size_t PreprocPlan::feature_width() const {
  std::size_t w = numeric.size();
  for (const auto& c : categorical) w += c.levels.size();
  return w;
}

std::vector<std::string> PreprocPlan::FeatureNames(const DatasetSchema& schema) const {
  std::vector<std::string> names;
  for (const auto& s : numeric) names.push_back(schema.columns[s.column].name);
  for (const auto& c : categorical)
    for (const auto& level : c.levels)
      names.push_back(schema.columns[c.column].name + "=" + level);
  return names;
}

Splits StratifiedSplit(const Dataset& data, std::uint64_t split_seed,
                       const SplitFractions& fractions, std::string* stratify_by,
                       std::vector<std::string>* warnings) {
  Require(fractions.train > 0.0 && fractions.validation >= 0.0 && fractions.test >= 0.0 &&
              std::abs(fractions.train + fractions.validation + fractions.test - 1.0) < 1e-9,
          "split fractions must be non-negative and sum to 1");
  const std::size_t n = data.table.rows.size();
  const std::size_t target = data.schema.target;
  std::vector<std::size_t> key(n, 0);
  std::string how;

  if (IsClassification(data.schema.task)) {
    how = "class";
    std::vector<std::size_t> counts(data.schema.classes.size(), 0);
    for (std::size_t r = 0; r < n; ++r) {
      key[r] = ClassOf(data.schema, data.table.rows[r][target]);
      ++counts[key[r]];
    }
    for (std::size_t c = 0; c < counts.size(); ++c) {
      if (counts[c] == 1) {
        if (warnings)
          warnings->push_back("class '" + data.schema.classes[c] +
                              "' has a single row; using an unstratified split");
        how = "none";
        std::fill(key.begin(), key.end(), 0);
        break;
      }
    }
  } else {
    how = "target_quantile_bins:10";
    std::vector<std::pair<double, std::size_t>> order;
    order.reserve(n);
    for (std::size_t r = 0; r < n; ++r)
      order.emplace_back(*ParseNumber(data.table.rows[r][target]), r);
    std::sort(order.begin(), order.end());
    for (std::size_t i = 0; i < n; ++i) key[order[i].second] = i * 10 / n;
  }
  if (stratify_by) *stratify_by = how;

  std::map<std::size_t, std::vector<std::size_t>> strata;
  for (std::size_t r = 0; r < n; ++r) strata[key[r]].push_back(r);

  SeededRng rng(split_seed, "split");
  Splits splits;
  for (auto& [k, rows] : strata) {
    SeededRng stratum_rng = rng.Fork("stratum/" + std::to_string(k));
    const auto perm = stratum_rng.Permutation(rows.size());
    const double sz = static_cast<double>(rows.size());
    const auto n_train = static_cast<std::size_t>(std::llround(sz * fractions.train));
    const auto n_val = std::min(rows.size() - n_train,
                                static_cast<std::size_t>(std::llround(sz * fractions.validation)));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::size_t r = rows[perm[i]];
      if (i < n_train) {
        splits.train.push_back(r);
      } else if (i < n_train + n_val) {
        splits.validation.push_back(r);
      } else {
        splits.test.push_back(r);
      }
    }
  }
  std::sort(splits.train.begin(), splits.train.end());
  std::sort(splits.validation.begin(), splits.validation.end());
  std::sort(splits.test.begin(), splits.test.end());
  return splits;
}

PreprocPlan FitPlan(const Dataset& data, const std::vector<std::size_t>& train_rows) {
  Require(!train_rows.empty(), "FitPlan: empty training split");
  PreprocPlan plan;
  const auto& schema = data.schema;
  for (std::size_t c = 0; c < schema.columns.size(); ++c) {
    const ColumnInfo& info = schema.columns[c];
    if (c == schema.target) continue;
    if (info.dropped) {
      plan.dropped.push_back(info.name);
      continue;
    }
    if (info.role == ColumnRole::kNumeric) {
      std::vector<double> present;
      for (std::size_t r : train_rows)
        if (auto v = ParseNumber(data.table.rows[r][c])) present.push_back(*v);
      NumericStats s;
      s.column = c;
      s.median = Median(present);
      // Moments of the imputed training column.
      double sum = 0.0;
      for (std::size_t r : train_rows)
        sum += ParseNumber(data.table.rows[r][c]).value_or(s.median);
      s.mean = sum / static_cast<double>(train_rows.size());
      double sq = 0.0;
      for (std::size_t r : train_rows) {
        const double d = ParseNumber(data.table.rows[r][c]).value_or(s.median) - s.mean;
        sq += d * d;
      }
      s.sd = std::sqrt(sq / static_cast<double>(train_rows.size()));
      if (!(s.sd > 1e-12 * (1.0 + std::abs(s.mean)))) s.sd = 1.0;
      plan.numeric.push_back(s);
    } else {
      std::set<std::string> levels;
      bool saw_missing = false;
      for (std::size_t r : train_rows) {
        const std::string& cell = data.table.rows[r][c];
        if (IsMissing(cell)) {
          saw_missing = true;
        } else {
          levels.insert(cell);
        }
      }
      CategoricalLevels cat;
      cat.column = c;
      cat.levels.assign(levels.begin(), levels.end());
      if (saw_missing) cat.levels.emplace_back(kMissingLevel);
      plan.categorical.push_back(std::move(cat));
    }
  }
  if (schema.task == TaskKind::kRegression) {
    double sum = 0.0;
    for (std::size_t r : train_rows) sum += *ParseNumber(data.table.rows[r][schema.target]);
    plan.target_mean = sum / static_cast<double>(train_rows.size());
    double sq = 0.0;
    for (std::size_t r : train_rows) {
      const double d = *ParseNumber(data.table.rows[r][schema.target]) - plan.target_mean;
      sq += d * d;
    }
    plan.target_sd = std::sqrt(sq / static_cast<double>(train_rows.size()));
    if (!(plan.target_sd > 0.0)) plan.target_sd = 1.0;
  }
  plan.fitted_rows = train_rows.size();
  plan.fitted_rows_digest = DigestRows(train_rows);
  return plan;
}

FittedPreproc FitPreproc(const Dataset& data, std::uint64_t split_seed,
                         const SplitFractions& fractions) {
  FittedPreproc out;
  out.splits = StratifiedSplit(data, split_seed, fractions, &out.plan.stratify_by,
                               &out.plan.warnings);
  std::string how = out.plan.stratify_by;
  std::vector<std::string> warnings = out.plan.warnings;
  out.plan = FitPlan(data, out.splits.train);
  out.plan.stratify_by = std::move(how);
  out.plan.warnings = std::move(warnings);
  out.plan.split_seed = split_seed;
  out.plan.fractions = fractions;
  return out;
}

Mat TransformFeatures(const PreprocPlan& plan, const Dataset& data,
                      const std::vector<std::size_t>& rows) {
  Mat out(rows.size(), plan.feature_width());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = data.table.rows[rows[i]];
    auto dst = out.row(i);
    std::size_t j = 0;
    for (const auto& s : plan.numeric)
      dst[j++] = (ParseNumber(row[s.column]).value_or(s.median) - s.mean) / s.sd;
    for (const auto& c : plan.categorical) {
      const std::string& cell = row[c.column];
      const std::string_view key = IsMissing(cell) ? kMissingLevel : std::string_view(cell);
      // The missing level, when present, is appended after the sorted levels.
      const bool has_missing = !c.levels.empty() && c.levels.back() == kMissingLevel;
      const auto sorted_end = c.levels.end() - (has_missing ? 1 : 0);
      std::size_t hit = c.levels.size();
      if (key == kMissingLevel) {
        if (has_missing) hit = c.levels.size() - 1;
      } else if (const auto it = std::lower_bound(c.levels.begin(), sorted_end, key);
                 it != sorted_end && *it == key) {
        hit = static_cast<std::size_t>(it - c.levels.begin());
      }
      if (hit < c.levels.size()) dst[j + hit] = 1.0;
      j += c.levels.size();
    }
  }
  return out;
}

Mat TransformTargets(const PreprocPlan& plan, const Dataset& data,
                     const std::vector<std::size_t>& rows) {
  Mat out(rows.size(), 1);
  const std::size_t t = data.schema.target;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string& cell = data.table.rows[rows[i]][t];
    if (IsClassification(data.schema.task)) {
      out(i, 0) = static_cast<double>(ClassOf(data.schema, cell));
    } else {
      out(i, 0) = (*ParseNumber(cell) - plan.target_mean) / plan.target_sd;
    }
  }
  return out;
}

bool HigherIsBetter(TaskKind task) { return IsClassification(task); }

namespace {

double Metric(TaskKind task, const PreprocPlan& plan, const Mat& pred, const Mat& target) {
  if (target.rows() == 0) return 0.0;
  if (IsClassification(task)) {
    std::size_t hits = 0;
    for (std::size_t r = 0; r < pred.rows(); ++r) {
      const auto row = pred.row(r);
      const auto best = static_cast<std::size_t>(
          std::max_element(row.begin(), row.end()) - row.begin());
      if (static_cast<double>(best) == target(r, 0)) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(pred.rows());
  }
  double sq = 0.0;
  for (std::size_t r = 0; r < pred.rows(); ++r) {
    const double d = (pred(r, 0) - target(r, 0)) * plan.target_sd;
    sq += d * d;
  }
  return std::sqrt(sq / static_cast<double>(pred.rows()));
}

struct ArmData {
  Mat train_x, val_x, test_x;
};

ResultRow TrainArm(const Dataset& data, const BenchConfig& config, const PreprocPlan& plan,
                   const ArmData& arm, const Mat& train_y, const Mat& val_y,
                   const Mat& test_y, std::uint64_t seed, std::string arm_name) {
  const auto start = std::chrono::steady_clock::now();
  const TaskKind task = data.schema.task;
  const bool classify = IsClassification(task);
  const bool higher_better = HigherIsBetter(task);

  std::vector<std::size_t> dims{arm.train_x.cols()};
  dims.insert(dims.end(), config.hidden.begin(), config.hidden.end());
  dims.push_back(classify ? data.schema.classes.size() : 1);
  Mlp net = Mlp::Init(dims, config.activation, config.init_scale,
                      SeededRng(seed, "bench/init"), config.bias);

  ResultRow row;
  row.dataset = data.name;
  row.arm = std::move(arm_name);
  row.seed = seed;
  row.metric = classify ? "accuracy" : "rmse";
  row.input_dim = arm.train_x.cols();

  auto evaluate = [&](const Mlp& m, const Mat& x, const Mat& y) {
    return Metric(task, plan, PredictBatch(m, x), y);
  };
  row.initial_value = evaluate(net, arm.test_x, test_y);
  row.value = row.initial_value;
  row.validation = evaluate(net, arm.val_x, val_y);
  row.best_epoch = 0;

  const std::size_t n = arm.train_x.rows();
  const std::size_t batch = std::min<std::size_t>(std::max<std::size_t>(config.batch_size, 1), n);
  const std::size_t steps_per_epoch = (n + batch - 1) / batch;

  TrainConfig tc;
  tc.loss = classify ? LossSpec::CrossEntropy() : LossSpec::Mse();
  tc.learning_rate = config.learning_rate;
  tc.steps = config.epochs * steps_per_epoch;
  tc.batch_size = batch;
  tc.record_every = steps_per_epoch;
  tc.optimizer = config.optimizer;
  tc.weight_decay = config.weight_decay;
  tc.record_grad_norm = false;

  auto on_record = [&](std::size_t step, const Mlp& m) {
    if (step == 0) return;
    const std::size_t epoch = step / steps_per_epoch;
    row.epochs = epoch;
    const double v = evaluate(m, arm.val_x, val_y);
    const bool better = higher_better ? v > row.validation : v < row.validation;
    if (better) {
      row.validation = v;
      row.best_epoch = epoch;
      row.value = evaluate(m, arm.test_x, test_y);
    }
  };
  try {
    if (tc.steps > 0)
      Train(std::move(net), arm.train_x, train_y, tc, SeededRng(seed, "bench/batches"), {},
            on_record);
  } catch (const NumericError& e) {
    row.diverged = true;
    row.note = e.what();
  }
  row.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

}  // namespace

ResultTable RunBenchmark(const Dataset& data, const BenchConfig& config) {
  Require(!config.seeds.empty(), "RunBenchmark: need at least one seed");
  ResultTable table;
  for (std::uint64_t seed : config.seeds) {
    const FittedPreproc fitted = FitPreproc(data, seed, config.fractions);
    const PreprocPlan& plan = fitted.plan;
    ArmData raw{TransformFeatures(plan, data, fitted.splits.train),
                TransformFeatures(plan, data, fitted.splits.validation),
                TransformFeatures(plan, data, fitted.splits.test)};
    const Mat train_y = TransformTargets(plan, data, fitted.splits.train);
    const Mat val_y = TransformTargets(plan, data, fitted.splits.validation);
    const Mat test_y = TransformTargets(plan, data, fitted.splits.test);

    table.rows.push_back(
        TrainArm(data, config, plan, raw, train_y, val_y, test_y, seed, "raw"));
    if (config.rff) {
      const RffMap map =
          RffMap::Build(config.rff->family, raw.train_x.cols(), config.rff->num_frequencies,
                        config.rff->variant, config.rff->scaling, SeededRng(seed, "bench/map"));
      ArmData rff{map.TransformRows(raw.train_x), map.TransformRows(raw.val_x),
                  map.TransformRows(raw.test_x)};
      table.rows.push_back(
          TrainArm(data, config, plan, rff, train_y, val_y, test_y, seed, "rff"));
    }
  }

  for (const std::string arm : {"raw", "rff"}) {
    ArmSummary s;
    s.arm = arm;
    std::vector<double> values;
    for (const auto& r : table.rows) {
      if (r.arm != arm) continue;
      s.metric = r.metric;
      if (!r.diverged) values.push_back(r.value);
    }
    if (s.metric.empty()) continue;
    s.runs = values.size();
    for (double v : values) s.mean += v;
    if (!values.empty()) s.mean /= static_cast<double>(values.size());
    if (values.size() >= 2) {
      double sq = 0.0;
      for (double v : values) sq += (v - s.mean) * (v - s.mean);
      s.sd = std::sqrt(sq / static_cast<double>(values.size() - 1));
    }
    table.summary.push_back(s);
  }
  return table;
}

CsvTable SynthesizeHousingTable(std::size_t rows, std::uint64_t seed) {
  struct Metro {
    double lat, lon, weight, premium, width;
  };
  // Los Angeles, San Francisco, San Diego, San Jose, Sacramento, Fresno.
  const Metro metros[] = {
      {34.05, -118.25, 0.36, 1.2, 0.45}, {37.77, -122.42, 0.16, 2.2, 0.30},
      {32.72, -117.16, 0.12, 1.0, 0.35}, {37.34, -121.89, 0.10, 1.9, 0.25},
      {38.58, -121.49, 0.08, 0.4, 0.35}, {36.74, -119.79, 0.06, 0.1, 0.35},
  };
  auto coast_lon = [](double lat) {
    // Piecewise-linear coastline: San Diego -> Point Conception -> SF -> Oregon.
    if (lat < 34.45) return -117.2 - (lat - 32.7) * 1.5;
    if (lat < 37.8) return -120.5 - (lat - 34.45) * 0.6;
    return -122.5 - (lat - 37.8) * 0.35;
  };

  SeededRng rng(seed, "housing");
  CsvTable t;
  t.header = {"longitude",  "latitude",   "housing_median_age", "total_rooms",
              "total_bedrooms", "population", "households", "median_income",
              "ocean_proximity", "median_house_value"};
  t.rows.reserve(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    double lat, lon;
    double pick = rng.Uniform01();
    const Metro* home = nullptr;
    for (const Metro& m : metros) {
      if (pick < m.weight) {
        home = &m;
        break;
      }
      pick -= m.weight;
    }
    if (home != nullptr) {
      lat = home->lat + 0.35 * rng.StdNormal();
      lon = home->lon + 0.45 * rng.StdNormal();
    } else {
      lat = rng.Uniform(32.6, 41.9);
      lon = rng.Uniform(-124.2, -114.4);
    }
    const double coast = coast_lon(lat);
    lon = std::max(lon, coast - 0.05);  // stay on land
    const double coast_dist = lon - coast;

    double urban = 0.0, metro_value = 0.0;
    for (const Metro& m : metros) {
      const double d2 = (lat - m.lat) * (lat - m.lat) + (lon - m.lon) * (lon - m.lon);
      const double w = std::exp(-0.5 * d2 / (m.width * m.width));
      urban = std::max(urban, w);
      metro_value += m.premium * w;
    }

    const double age = std::min(52.0, std::floor(rng.Uniform(1.0, 60.0)));
    const double households = std::max(2.0, std::exp(5.9 + 0.25 * urban + 0.75 * rng.StdNormal()));
    const double rooms_per_hh = std::max(1.0, std::exp(1.62 + 0.25 * rng.StdNormal()));
    const double total_rooms = std::round(households * rooms_per_hh);
    const double bedrooms = std::round(total_rooms * std::clamp(0.21 + 0.04 * rng.StdNormal(), 0.08, 0.6));
    const double population =
        std::round(households * std::exp(1.0 + 0.3 * rng.StdNormal() + 0.4 * (rng.Uniform01() < 0.02)));
    const double income =
        std::clamp(std::exp(1.25 + 0.35 * urban - 0.1 * std::tanh(coast_dist) + 0.45 * rng.StdNormal()), 0.5, 15.0001);

    const double coastal = 1.1 * std::exp(-coast_dist / 0.25);
    const double ripple = 0.25 * std::sin(3.0 * lat) * std::cos(2.5 * lon);
    double value = 0.55 + 0.38 * income + metro_value + coastal + ripple +
                   0.004 * (age - 25.0) - 0.08 * std::log(population / households) +
                   0.06 * (rooms_per_hh - 5.0);
    value *= std::exp(0.18 * rng.StdNormal());
    value = std::clamp(value, 0.15, 5.00001);

    std::string proximity;
    const double sf_d2 = (lat - 37.77) * (lat - 37.77) + (lon + 122.3) * (lon + 122.3);
    if (rng.Uniform01() < 0.0003) {
      proximity = "ISLAND";
    } else if (sf_d2 < 0.25 && coast_dist < 0.6) {
      proximity = "NEAR BAY";
    } else if (coast_dist < 0.12) {
      proximity = "NEAR OCEAN";
    } else if (coast_dist < 1.0) {
      proximity = "<1H OCEAN";
    } else {
      proximity = "INLAND";
    }

    const bool bedrooms_missing = rng.Uniform01() < 0.01;
    char buf[32];
    auto fmt = [&](double v, const char* f) {
      std::snprintf(buf, sizeof(buf), f, v);
      return std::string(buf);
    };
    t.rows.push_back({fmt(lon, "%.2f"), fmt(lat, "%.2f"), fmt(age, "%.0f"),
                      fmt(total_rooms, "%.0f"),
                      bedrooms_missing ? std::string() : fmt(bedrooms, "%.0f"),
                      fmt(population, "%.0f"), fmt(households, "%.0f"),
                      fmt(income, "%.4f"), proximity, fmt(value, "%.5f")});
  }
  return t;
}

}  // namespace rfflab
