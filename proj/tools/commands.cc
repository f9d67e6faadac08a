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

#include "commands.h"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "rfflab/csv.h"
#include "rfflab/errors.h"
#include "rfflab/mlp.h"
#include "rfflab/ntk.h"
#include "rfflab/random.h"
#include "rfflab/rff.h"
#include "rfflab/serialize.h"
#include "rfflab/svg_plot.h"
#include "rfflab/synth.h"
#include "rfflab/tabular.h"
#include "rfflab/telescope.h"
#include "rfflab/verify.h"

namespace rfflab::cli {
namespace {

using json = nlohmann::json;

constexpr int kRunFormatVersion = 1;

void WriteJson(OutputDir& out, const std::string& name, const json& j) {
  WriteTextFile(out.File(name), j.dump(2) + "\n");
}

template <typename T>
std::vector<double> AsDoubles(const std::vector<T>& v) {
  return std::vector<double>(v.begin(), v.end());
}

json SuiteJson(const SuiteReport& r) {
  json m = json::object();
  for (const auto& [k, v] : r.metrics) m[k] = v;
  return {{"suite", r.suite}, {"checks", r.checks}, {"failures", r.failure_count},
          {"passed", r.passed()}, {"metrics", m}, {"first_failures", r.failures}};
}

// Largest over median of |grad L| / sqrt(L) along a recorded curve. The raw
// gradient norm shrinks with the loss, so the ratio is taken after dividing
// out sqrt(L).
double NormalizedGradSpread(const std::vector<HistoryPoint>& curve) {
  std::vector<double> v;
  for (const auto& p : curve)
    if (p.loss > 0.0) v.push_back(p.grad_norm / std::sqrt(p.loss));
  if (v.empty()) return 0.0;
  const double peak = *std::max_element(v.begin(), v.end());
  std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
  return peak / v[v.size() / 2];
}

int RunBochner(const BochnerParams& p, OutputDir& out) {
  Require(p.bandwidth > 0.0, "bochner: --bandwidth must be positive");
  Require(!p.frequencies.empty(), "bochner: --frequencies must not be empty");
  Require(std::is_sorted(p.frequencies.begin(), p.frequencies.end()),
          "bochner: --frequencies must be ascending");
  const SpectralFamily family{ParseSpectralKind(p.family), p.bandwidth, p.normalized_cauchy};
  const McErrorCurve curve = MonteCarloErrorCurve(
      family, p.dim, p.pairs, p.frequencies, SeededRng(p.seed, "bochner"),
      {p.pair_distance, ParseFeatureVariant(p.variant), ParseFeatureScaling(p.scaling)});

  CsvWriter w(out.File("bochner.csv"), {"D", "mean_abs_error", "max_abs_error"});
  LinePlot plot{"Monte-Carlo kernel error, " + p.family, "D", "|k_hat - k|", true, true, 640, 420, {}};
  Series mean{"mean", {}, {}}, worst{"max", {}, {}};
  for (const McErrorRow& r : curve.rows) {
    w.Field(r.num_frequencies).Field(r.mean_abs_error).Field(r.max_abs_error).EndRow();
    mean.x.push_back(static_cast<double>(r.num_frequencies));
    mean.y.push_back(r.mean_abs_error);
    worst.x.push_back(static_cast<double>(r.num_frequencies));
    worst.y.push_back(r.max_abs_error);
  }
  plot.series = {mean, worst};
  WriteSvg(out.File("bochner.svg"), plot);
  WriteJson(out, "summary.json", {{"loglog_slope", curve.loglog_slope}});
  std::cout << "log-log error slope " << curve.loglog_slope << "\n";
  return kExitOk;
}

int RunExplosion(const ExplosionParams& p, OutputDir& out) {
  Require(!p.radii.empty(), "explosion: --radii must not be empty");
  for (double r : p.radii) Require(r > 0.0, "explosion: radii must be positive");
  ExplosionConfig cfg;
  cfg.radii = p.radii;
  cfg.input_dim = p.dim;
  cfg.num_frequencies = p.num_frequencies;
  cfg.bandwidth = p.bandwidth;
  cfg.hidden = p.hidden;
  cfg.init_scale = p.init_scale;
  cfg.seed = p.seed;
  const ExplosionResult res = RunKernelExplosion(cfg);

  CsvWriter w(out.File("explosion.csv"),
              {"radius", "k_raw", "k_rff", "gamma", "m", "decomposition_gap"});
  Series raw{"raw K(x,x)", {}, {}}, rff{"rff K(x,x)", {}, {}};
  double worst_gap = 0.0;
  for (const ExplosionRow& r : res.rows) {
    w.Field(r.radius).Field(r.k_raw).Field(r.k_rff).Field(r.gamma).Field(r.m)
        .Field(r.decomposition_gap).EndRow();
    raw.x.push_back(r.radius);
    raw.y.push_back(r.k_raw);
    rff.x.push_back(r.radius);
    rff.y.push_back(r.k_rff);
    worst_gap = std::max(worst_gap, r.decomposition_gap);
  }
  WriteSvg(out.File("explosion.svg"),
           {"Tangent kernel diagonal vs input radius", "|x|", "K(x,x)", true, true, 640, 420,
            {raw, rff}});
  const double growth = res.rows.back().k_raw / res.rows.front().k_raw;
  WriteJson(out, "summary.json",
            {{"raw_loglog_slope", res.raw_loglog_slope},
             {"raw_growth", growth},
             {"rff_max_over_min", res.rff_max_over_min},
             {"upper_block_bound", res.upper_block_bound},
             {"max_decomposition_gap", worst_gap},
             {"direction", res.direction}});
  std::cout << "raw K growth " << growth << ", rff max/min " << res.rff_max_over_min << "\n";
  return kExitOk;
}

json SummaryJson(const ConvergenceSummary& s) {
  return {{"initial_mse", s.initial_mse},
          {"final_mse", s.final_mse},
          {"log_mse_slope", s.slope},
          {"max_grad_norm", s.max_grad_norm},
          {"median_grad_norm", s.median_grad_norm},
          {"normalized_grad_spread", NormalizedGradSpread(s.curve)}};
}

int RunConverge(const ConvergeParams& p, OutputDir& out) {
  Require(p.alpha >= 0.0 && p.alpha <= 1.0, "converge: --alpha must lie in [0, 1]");
  Require(p.record_every >= 1, "converge: --record-every must be positive");
  ConvergenceConfig cfg;
  cfg.data = SynthSpec::FromSeed(p.seed, p.alpha, p.n);
  cfg.data.noise_sd = p.noise;
  cfg.data.input_dim = p.dim;
  cfg.data.num_frequencies = p.num_frequencies;
  cfg.data.bandwidth = p.bandwidth;
  cfg.learning_rate = p.learning_rate;
  cfg.steps = p.steps;
  cfg.record_every = p.record_every;
  cfg.batch_size = p.batch_size;
  cfg.hidden = p.hidden;
  cfg.init_scale = p.init_scale;
  const ConvergenceResult res = RunConvergence(cfg);

  WriteHistoryCsv(out.File("converge_raw.csv"), res.raw.curve, true);
  WriteHistoryCsv(out.File("converge_rff.csv"), res.rff.curve, true);
  SaveRffMap(out.File("rff_map.json"), SynthMap(cfg.data));
  auto series = [](const std::string& label, const ConvergenceSummary& s) {
    Series out{label, {}, {}};
    for (const auto& h : s.curve) {
      out.x.push_back(static_cast<double>(h.step));
      out.y.push_back(h.loss);
    }
    return out;
  };
  WriteSvg(out.File("converge.svg"),
           {"Training MSE, alpha = " + FormatDouble(p.alpha), "step", "MSE", false, true, 640,
            420, {series("raw", res.raw), series("rff", res.rff)}});
  WriteJson(out, "summary.json",
            {{"learning_rate", res.learning_rate},
             {"initial_bias", res.initial_bias},
             {"raw", SummaryJson(res.raw)},
             {"rff", SummaryJson(res.rff)}});
  std::cout << "lr " << res.learning_rate << ": raw slope " << res.raw.slope << ", rff slope "
            << res.rff.slope << ", initial bias " << res.initial_bias << "\n";
  return kExitOk;
}

int RunTelescope(const TelescopeParams& p, OutputDir& out) {
  Require(p.arch.size() >= 2 && p.arch.back() == 1,
          "telescope: --arch needs an input width and a final width of 1");
  Require(!p.learning_rates.empty(), "telescope: --lr must list at least one rate");
  for (double lr : p.learning_rates) Require(lr > 0.0, "telescope: learning rates must be positive");
  Require(p.n >= 2 && p.eval_points >= 1, "telescope: need n >= 2 and at least one eval point");
  const std::size_t d = p.arch.front();
  SeededRng root(p.seed, "telescope");
  SeededRng data = root.Fork("data");
  const Mat x = SampleMatrix(ScalarDistribution::StdNormal(), p.n, d, data);
  Mat y(p.n, 1);
  for (std::size_t i = 0; i < p.n; ++i)
    y(i, 0) = std::sin(x(i, 0)) + (d > 1 ? 0.5 * x(i, 1) : 0.0);
  const Mat eval = SampleMatrix(ScalarDistribution::StdNormal(), p.eval_points, d, data);
  const Activation act = ParseActivation(p.activation);
  const Mlp net0 = Mlp::Init(p.arch, act, act.kind == Activation::Kind::kIdentity ? 1.0 : std::sqrt(2.0),
                             root.Fork("init"));
  SaveMlp(out.File("net_init.json"), net0);
  out.File("kernel_init.csv");
  out.File("kernel_init.json");
  WriteKernelReport(out.root() / "kernel_init", NtkGram(net0, x));

  CsvWriter w(out.File("telescope.csv"),
              {"learning_rate", "steps", "eval_index", "trained_output", "reconstruction",
               "abs_error"});
  Series errors{"max |error|", {}, {}};
  json runs = json::array();
  for (std::size_t k = 0; k < p.learning_rates.size(); ++k) {
    const double lr = p.learning_rates[k];
    const auto steps = static_cast<std::size_t>(
        std::llround(static_cast<double>(p.steps) * p.learning_rates.front() / lr));
    const TelescopeRun run = TelescopeRecord(net0, x, y, lr, steps, eval, p.batch_size,
                                             root.Fork("batches/" + std::to_string(k)));
    const std::string tag = "trace_" + std::to_string(k);
    out.File(tag + ".csv");
    out.File(tag + ".json");
    WriteTelescopeTrace(out.root() / tag, run.trace);
    double worst = 0.0;
    for (std::size_t e = 0; e < p.eval_points; ++e) {
      const double trained = Evaluate(run.trained, eval.row(e));
      const double recon = TelescopeReconstruct(run.trace, e);
      worst = std::max(worst, std::abs(trained - recon));
      w.Field(lr).Field(steps).Field(e).Field(trained).Field(recon)
          .Field(std::abs(trained - recon)).EndRow();
    }
    errors.x.push_back(lr);
    errors.y.push_back(worst);
    runs.push_back({{"learning_rate", lr}, {"steps", steps}, {"max_abs_error", worst}});
    std::cout << "lr " << lr << " x " << steps << " steps: max reconstruction error " << worst
              << "\n";
  }
  WriteSvg(out.File("telescope.svg"),
           {"Telescoping reconstruction error", "learning rate", "max |f_T - recon|", true, true,
            640, 420, {errors}});
  WriteJson(out, "summary.json", {{"runs", runs}});
  return kExitOk;
}

int RunVerify(const VerifyParams& p, OutputDir& out) {
  std::vector<std::string> suites;
  if (p.suite == "all") {
    suites = SuiteNames();
  } else {
    suites = {p.suite};
  }
  CsvWriter w(out.File("verify.csv"), {"suite", "checks", "failures", "passed"});
  Series fails{"failures", {}, {}};
  json reports = json::array();
  bool ok = true;
  for (std::size_t i = 0; i < suites.size(); ++i) {
    const SuiteReport r = RunSuite(suites[i], {p.trials, p.seed});
    w.Field(r.suite).Field(r.checks).Field(r.failure_count).Field(r.passed() ? "1" : "0")
        .EndRow();
    fails.x.push_back(static_cast<double>(i));
    fails.y.push_back(static_cast<double>(r.failure_count));
    reports.push_back(SuiteJson(r));
    std::cout << (r.passed() ? "PASS " : "FAIL ") << r.suite << " (" << r.checks << " checks, "
              << r.failure_count << " failures)\n";
    for (const std::string& f : r.failures) std::cerr << "  violated: " << f << "\n";
    ok = ok && r.passed();
  }
  WriteSvg(out.File("verify.svg"),
           {"Failures per suite", "suite index", "failures", false, false, 640, 420, {fails}});
  WriteJson(out, "verify.json", {{"passed", ok}, {"suites", reports}});
  return ok ? kExitOk : kExitVerifyFailed;
}

Optimizer ParseOptimizer(const std::string& name) {
  if (name == "sgd") return Optimizer::kSgd;
  if (name == "adam") return Optimizer::kAdam;
  throw ContractError("unknown optimizer '" + name + "' (valid: sgd, adam)");
}

int RunBench(const BenchParams& p, OutputDir& out) {
  Require(!p.csv.empty(), "bench: --csv is required");
  Require(!p.seeds.empty(), "bench: need at least one seed");
  const SchemaHints hints = p.schema.empty() ? SchemaHints{} : LoadSchemaHints(p.schema);
  const std::string name =
      p.dataset.empty() ? std::filesystem::path(p.csv).stem().string() : p.dataset;
  const Dataset data = IngestCsv(p.csv, hints, name);

  BenchConfig cfg;
  cfg.hidden = p.hidden;
  cfg.activation = ParseActivation(p.activation);
  cfg.bias = p.bias;
  cfg.optimizer = ParseOptimizer(p.optimizer);
  cfg.learning_rate = p.learning_rate;
  cfg.weight_decay = p.weight_decay;
  cfg.epochs = p.epochs;
  cfg.batch_size = p.batch_size;
  cfg.seeds = p.seeds;
  if (p.rff) {
    RffArmConfig arm;
    arm.family = {ParseSpectralKind(p.family), p.bandwidth};
    arm.num_frequencies = p.num_frequencies;
    cfg.rff = arm;
  } else {
    cfg.rff.reset();
  }
  const ResultTable table = RunBenchmark(data, cfg);

  CsvWriter w(out.File("results.csv"),
              {"dataset", "arm", "seed", "metric", "value", "validation", "initial_value",
               "epochs", "best_epoch", "input_dim", "diverged", "note"});
  json rows = json::array();
  Series raw{"raw", {}, {}}, rff{"rff", {}, {}};
  for (const ResultRow& r : table.rows) {
    w.Field(r.dataset).Field(r.arm).Field(static_cast<unsigned long long>(r.seed)).Field(r.metric)
        .Field(r.value).Field(r.validation).Field(r.initial_value).Field(r.epochs)
        .Field(r.best_epoch).Field(r.input_dim).Field(r.diverged ? "1" : "0").Field(r.note)
        .EndRow();
    rows.push_back({{"arm", r.arm}, {"seed", r.seed}, {"metric", r.metric}, {"value", r.value},
                    {"diverged", r.diverged}, {"wall_seconds", r.wall_seconds}});
    Series& s = r.arm == "raw" ? raw : rff;
    s.x.push_back(static_cast<double>(r.seed));
    s.y.push_back(r.value);
  }
  json summary = json::array();
  for (const ArmSummary& s : table.summary) {
    summary.push_back({{"arm", s.arm}, {"metric", s.metric}, {"mean", s.mean}, {"sd", s.sd},
                       {"runs", s.runs}});
    std::cout << s.arm << " " << s.metric << " " << s.mean << " +- " << s.sd << " (" << s.runs
              << " runs)\n";
  }
  LinePlot plot{"Test metric per seed, " + name, "seed", table.rows.empty() ? "" : table.rows[0].metric,
                false, false, 640, 420, {raw}};
  if (!rff.x.empty()) plot.series.push_back(rff);
  WriteSvg(out.File("bench.svg"), plot);
  WriteJson(out, "results.json",
            {{"dataset", name}, {"task", std::string(ToString(data.schema.task))}, {"rows", rows},
             {"summary", summary}});
  return kExitOk;
}

int RunGenHousing(const GenHousingParams& p, OutputDir& out) {
  Require(p.rows >= 10, "gen-housing: need at least 10 rows");
  const CsvTable t = SynthesizeHousingTable(p.rows, p.seed);
  CsvWriter w(out.File("housing.csv"), t.header);
  for (const auto& row : t.rows) {
    for (const auto& cell : row) w.Field(cell);
    w.EndRow();
  }
  WriteJson(out, "summary.json", {{"rows", t.rows.size()}, {"columns", t.header}});
  std::cout << "wrote " << t.rows.size() << " rows\n";
  return kExitOk;
}

}  // namespace

const std::vector<std::string>& Subcommands() {
  static const std::vector<std::string> kNames = {"bochner", "explosion", "converge", "telescope",
                                                  "verify",  "bench",     "gen-housing"};
  return kNames;
}

int Execute(const std::string& subcommand, const json& params, OutputDir& out) {
  WriteJson(out, "run.json",
            {{"format", "rfflab.run"},
             {"version", kRunFormatVersion},
             {"subcommand", subcommand},
             {"params", params}});
  if (subcommand == "bochner") return RunBochner(params.get<BochnerParams>(), out);
  if (subcommand == "explosion") return RunExplosion(params.get<ExplosionParams>(), out);
  if (subcommand == "converge") return RunConverge(params.get<ConvergeParams>(), out);
  if (subcommand == "telescope") return RunTelescope(params.get<TelescopeParams>(), out);
  if (subcommand == "verify") return RunVerify(params.get<VerifyParams>(), out);
  if (subcommand == "bench") return RunBench(params.get<BenchParams>(), out);
  if (subcommand == "gen-housing") return RunGenHousing(params.get<GenHousingParams>(), out);
  throw ContractError("unknown subcommand '" + subcommand + "'");
}

int Replay(const json& run, OutputDir& out) {
  if (!run.is_object() || run.value("format", "") != "rfflab.run")
    throw IoError("not a run.json document");
  if (run.value("version", 0) != kRunFormatVersion)
    throw IoError("unsupported run.json version");
  return Execute(run.at("subcommand").get<std::string>(), run.at("params"), out);
}

}  // namespace rfflab::cli
