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

// rfflab command-line entry point.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "commands.h"
#include "output_dir.h"
#include "rfflab/errors.h"
#include "rfflab/rff.h"
#include "rfflab/serialize.h"
#include "rfflab/verify.h"

namespace {

using rfflab::cli::OutputDir;
namespace fs = std::filesystem;
using json = nlohmann::json;

std::string Absolute(const std::string& path) {
  return path.empty() ? path : fs::absolute(path).lexically_normal().string();
}

int RunGuarded(OutputDir& out, const std::function<int()>& body) {
  int code = rfflab::cli::kExitOk;
  try {
    code = body();
  } catch (const rfflab::NumericError& e) {
    std::cerr << "error: numeric divergence: " << e.what() << "\n";
    code = rfflab::cli::kExitDiverged;
  } catch (const rfflab::ContractError& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = rfflab::cli::kExitUsage;
  } catch (const rfflab::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = rfflab::cli::kExitUsage;
  } catch (const json::exception& e) {
    std::cerr << "error: bad parameters: " << e.what() << "\n";
    code = rfflab::cli::kExitUsage;
  }
  // A failed verification keeps its report; anything else leaves no files.
  if (code != rfflab::cli::kExitOk && code != rfflab::cli::kExitVerifyFailed) out.Discard();
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rfflab: random Fourier features, tangent kernels and MLP experiments"};
  app.require_subcommand(1);
  std::string out_arg;
  app.add_option("-o,--out", out_arg,
                 "Output directory (default: $RFFLAB_OUT/<subcommand> or rfflab-out/<subcommand>)");

  rfflab::cli::BochnerParams bochner;
  auto* c_bochner = app.add_subcommand("bochner", "Monte-Carlo kernel error against D");
  c_bochner->add_option("--family", bochner.family, "gaussian | laplacian | cauchy")
      ->capture_default_str();
  c_bochner->add_option("--dim", bochner.dim, "Input dimension")->capture_default_str();
  c_bochner->add_option("--frequencies", bochner.frequencies, "Ascending list of D")
      ->delimiter(',')->capture_default_str();
  c_bochner->add_option("--pairs", bochner.pairs, "Probe pairs per D")->capture_default_str();
  c_bochner->add_option("--bandwidth", bochner.bandwidth)->capture_default_str();
  c_bochner->add_option("--pair-distance", bochner.pair_distance, "|x - y| of every pair")
      ->capture_default_str();
  c_bochner->add_option("--variant", bochner.variant, "sincos | cos_offset")->capture_default_str();
  c_bochner->add_option("--scaling", bochner.scaling, "standard | unbiased")->capture_default_str();
  c_bochner->add_flag("--normalized-cauchy", bochner.normalized_cauchy,
                      "Use the unit-height Cauchy kernel");
  c_bochner->add_option("--seed", bochner.seed)->capture_default_str();

  rfflab::cli::ExplosionParams explosion;
  auto* c_explosion = app.add_subcommand("explosion", "Kernel diagonal against input radius");
  c_explosion->add_option("--radii", explosion.radii)->delimiter(',')->capture_default_str();
  c_explosion->add_option("--dim", explosion.dim)->capture_default_str();
  c_explosion->add_option("--frequencies", explosion.num_frequencies, "D")->capture_default_str();
  c_explosion->add_option("--bandwidth", explosion.bandwidth)->capture_default_str();
  c_explosion->add_option("--hidden", explosion.hidden)->delimiter(',')->capture_default_str();
  c_explosion->add_option("--init-scale", explosion.init_scale)->capture_default_str();
  c_explosion->add_option("--seed", explosion.seed)->capture_default_str();

  rfflab::cli::ConvergeParams converge;
  auto* c_converge = app.add_subcommand("converge", "Raw vs RFF training curves on synthetic data");
  c_converge->add_option("--alpha", converge.alpha, "Kernel bias of the target, in [0, 1]")
      ->capture_default_str();
  c_converge->add_option("--lr", converge.learning_rate, "Learning rate (<= 0: automatic)")
      ->capture_default_str();
  c_converge->add_option("--steps", converge.steps)->capture_default_str();
  c_converge->add_option("--record-every", converge.record_every)->capture_default_str();
  c_converge->add_option("--batch", converge.batch_size, "Minibatch size (0: full batch)")
      ->capture_default_str();
  c_converge->add_option("--n", converge.n, "Training rows")->capture_default_str();
  c_converge->add_option("--noise", converge.noise)->capture_default_str();
  c_converge->add_option("--dim", converge.dim)->capture_default_str();
  c_converge->add_option("--frequencies", converge.num_frequencies, "D")->capture_default_str();
  c_converge->add_option("--bandwidth", converge.bandwidth)->capture_default_str();
  c_converge->add_option("--hidden", converge.hidden)->delimiter(',')->capture_default_str();
  c_converge->add_option("--init-scale", converge.init_scale)->capture_default_str();
  c_converge->add_option("--seed", converge.seed)->capture_default_str();

  rfflab::cli::TelescopeParams telescope;
  auto* c_telescope = app.add_subcommand("telescope", "Telescoping reconstruction of training");
  c_telescope->add_option("--arch", telescope.arch, "Layer widths, last must be 1")
      ->delimiter(',')->capture_default_str();
  c_telescope->add_option("--activation", telescope.activation, "relu | identity | leaky_relu:s")
      ->capture_default_str();
  c_telescope->add_option("--lr", telescope.learning_rates, "Learning rates")
      ->delimiter(',')->capture_default_str();
  c_telescope->add_option("--steps", telescope.steps, "Steps at the first rate")
      ->capture_default_str();
  c_telescope->add_option("--n", telescope.n)->capture_default_str();
  c_telescope->add_option("--eval-points", telescope.eval_points)->capture_default_str();
  c_telescope->add_option("--batch", telescope.batch_size, "0: full batch")->capture_default_str();
  c_telescope->add_option("--seed", telescope.seed)->capture_default_str();

  rfflab::cli::VerifyParams verify;
  std::string suites = "all";
  for (const auto& s : rfflab::SuiteNames()) suites += " | " + s;
  auto* c_verify = app.add_subcommand("verify", "Numeric property suites");
  c_verify->add_option("--suite", verify.suite, suites)->capture_default_str();
  c_verify->add_option("--trials", verify.trials, "Probes (0: suite default)")
      ->capture_default_str();
  c_verify->add_option("--seed", verify.seed)->capture_default_str();

  rfflab::cli::BenchParams bench;
  bool no_rff = false;
  auto* c_bench = app.add_subcommand("bench", "Raw vs RFF MLP on a CSV table");
  c_bench->add_option("--csv", bench.csv, "Input table")->required()->check(CLI::ExistingFile);
  c_bench->add_option("--schema", bench.schema, "JSON schema hints")->check(CLI::ExistingFile);
  c_bench->add_option("--name", bench.dataset, "Dataset name (default: file stem)");
  c_bench->add_flag("--no-rff", no_rff, "Run the raw arm only");
  c_bench->add_option("--seeds", bench.seeds)->delimiter(',')->capture_default_str();
  c_bench->add_option("--hidden", bench.hidden)->delimiter(',')->capture_default_str();
  c_bench->add_option("--activation", bench.activation)->capture_default_str();
  c_bench->add_option("--bias", bench.bias)->capture_default_str();
  c_bench->add_option("--optimizer", bench.optimizer, "sgd | adam")->capture_default_str();
  c_bench->add_option("--lr", bench.learning_rate)->capture_default_str();
  c_bench->add_option("--weight-decay", bench.weight_decay)->capture_default_str();
  c_bench->add_option("--epochs", bench.epochs)->capture_default_str();
  c_bench->add_option("--batch", bench.batch_size)->capture_default_str();
  c_bench->add_option("--family", bench.family)->capture_default_str();
  c_bench->add_option("--bandwidth", bench.bandwidth)->capture_default_str();
  c_bench->add_option("--frequencies", bench.num_frequencies, "D")->capture_default_str();

  rfflab::cli::GenHousingParams housing;
  auto* c_housing = app.add_subcommand("gen-housing", "Write the synthetic housing table");
  c_housing->add_option("--rows", housing.rows)->capture_default_str();
  c_housing->add_option("--seed", housing.seed)->capture_default_str();

  std::string run_json;
  auto* c_replay = app.add_subcommand("replay", "Re-run the command recorded in a run.json");
  c_replay->add_option("run_json", run_json, "Path to run.json")->required()
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? rfflab::cli::kExitOk : rfflab::cli::kExitUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  json params;
  json replay_doc;
  if (chosen == c_replay) {
    try {
      replay_doc = json::parse(rfflab::ReadTextFile(run_json));
    } catch (const std::exception& e) {
      std::cerr << "error: cannot read '" << run_json << "': " << e.what() << "\n";
      return rfflab::cli::kExitUsage;
    }
  } else if (chosen == c_bochner) {
    params = bochner;
  } else if (chosen == c_explosion) {
    params = explosion;
  } else if (chosen == c_converge) {
    params = converge;
  } else if (chosen == c_telescope) {
    params = telescope;
  } else if (chosen == c_verify) {
    params = verify;
  } else if (chosen == c_bench) {
    bench.rff = !no_rff;
    bench.csv = Absolute(bench.csv);
    bench.schema = Absolute(bench.schema);
    params = bench;
  } else if (chosen == c_housing) {
    params = housing;
  }

  fs::path out_path;
  if (!out_arg.empty()) {
    out_path = out_arg;
  } else if (chosen == c_replay) {
    out_path = fs::path(run_json).parent_path() / "replay";
  } else {
    out_path = rfflab::cli::DefaultOutputDir(name);
  }

  std::optional<OutputDir> out;
  try {
    out.emplace(out_path);
  } catch (const rfflab::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return rfflab::cli::kExitUsage;
  }
  const int code = RunGuarded(*out, [&] {
    return chosen == c_replay ? rfflab::cli::Replay(replay_doc, *out)
                              : rfflab::cli::Execute(name, params, *out);
  });
  if (code == rfflab::cli::kExitOk) std::cout << "outputs in " << out->root().string() << "\n";
  return code;
}
