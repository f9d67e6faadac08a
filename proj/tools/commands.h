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

#ifndef RFFLAB_TOOLS_COMMANDS_H_
#define RFFLAB_TOOLS_COMMANDS_H_

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "output_dir.h"

namespace rfflab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerifyFailed = 2;
inline constexpr int kExitDiverged = 3;

struct BochnerParams {
  std::string family = "gaussian";
  std::size_t dim = 5;
  std::vector<std::size_t> frequencies = {16, 32, 64, 128, 256, 512, 1024, 2048, 4096};
  std::size_t pairs = 100;
  double bandwidth = 1.0;
  double pair_distance = 1.0;
  std::string variant = "sincos";
  std::string scaling = "unbiased";
  bool normalized_cauchy = false;
  std::uint64_t seed = 0;
};

struct ExplosionParams {
  std::vector<double> radii = {1.0, 10.0, 100.0, 1000.0, 10000.0};
  std::size_t dim = 10;
  std::size_t num_frequencies = 512;
  double bandwidth = 1.0;
  std::vector<std::size_t> hidden = {128, 128};
  double init_scale = 1.4142135623730951;
  std::uint64_t seed = 0;
};

struct ConvergeParams {
  double alpha = 0.0;
  double learning_rate = 0.0;  // <= 0: automatic selection
  std::size_t steps = 5000;
  std::size_t record_every = 100;
  std::size_t batch_size = 128;
  std::size_t n = 4000;
  double noise = 0.1;
  std::size_t dim = 10;
  std::size_t num_frequencies = 512;
  double bandwidth = 1.0;
  std::vector<std::size_t> hidden = {128, 128};
  double init_scale = 1.4142135623730951;
  std::uint64_t seed = 0;
};

struct TelescopeParams {
  std::vector<std::size_t> arch = {5, 64, 1};
  std::string activation = "relu";
  std::vector<double> learning_rates = {0.05, 0.025};
  std::size_t steps = 100;  // at the first learning rate; scaled to keep lr * steps fixed
  std::size_t n = 32;
  std::size_t eval_points = 8;
  std::size_t batch_size = 0;
  std::uint64_t seed = 0;
};

struct VerifyParams {
  std::string suite = "all";
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

struct BenchParams {
  std::string csv;
  std::string schema;
  std::string dataset;
  bool rff = true;
  std::vector<std::uint64_t> seeds = {0, 1, 2};
  std::vector<std::size_t> hidden = {128, 128};
  std::string activation = "relu";
  bool bias = true;
  std::string optimizer = "sgd";
  double learning_rate = 0.05;
  double weight_decay = 0.0;
  std::size_t epochs = 20;
  std::size_t batch_size = 128;
  std::string family = "gaussian";
  double bandwidth = 1.0;
  std::size_t num_frequencies = 512;
};

struct GenHousingParams {
  std::size_t rows = 20640;
  std::uint64_t seed = 0;
};

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(BochnerParams, family, dim, frequencies, pairs,
                                                bandwidth, pair_distance, variant, scaling,
                                                normalized_cauchy, seed)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(ExplosionParams, radii, dim, num_frequencies,
                                                bandwidth, hidden, init_scale, seed)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(ConvergeParams, alpha, learning_rate, steps,
                                                record_every, batch_size, n, noise, dim,
                                                num_frequencies, bandwidth, hidden, init_scale,
                                                seed)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(TelescopeParams, arch, activation,
                                                learning_rates, steps, n, eval_points,
                                                batch_size, seed)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(VerifyParams, suite, trials, seed)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(BenchParams, csv, schema, dataset, rff, seeds,
                                                hidden, activation, bias, optimizer,
                                                learning_rate, weight_decay, epochs, batch_size,
                                                family, bandwidth, num_frequencies)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(GenHousingParams, rows, seed)

// Runs `subcommand` with `params` into `out`, writing run.json first.
// Returns an exit code; throws the core exception types on errors.
int Execute(const std::string& subcommand, const nlohmann::json& params, OutputDir& out);

// Runs the command recorded in a run.json document.
int Replay(const nlohmann::json& run, OutputDir& out);

const std::vector<std::string>& Subcommands();

}  // namespace rfflab::cli

#endif  // RFFLAB_TOOLS_COMMANDS_H_
