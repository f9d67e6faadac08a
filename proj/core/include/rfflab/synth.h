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

#ifndef RFFLAB_SYNTH_H_
#define RFFLAB_SYNTH_H_

#include <cstdint>
#include <vector>

#include "rfflab/matrix.h"
#include "rfflab/mlp.h"
#include "rfflab/rff.h"
#include "rfflab/train.h"

namespace rfflab {

// Regression data with a tunable share of kernel structure:
//
//   y = (1 - alpha) <w_raw, x> + alpha <w_rff, phi(x)> + eps,
//   x ~ N(0, I_d),  eps ~ N(0, noise_sd^2).
//
// w_raw and w_rff have standard-normal entries rescaled so that each branch
// has unit variance over x ~ N(0, I_d); alpha is then a mixture weight.
struct SynthSpec {
  std::size_t input_dim = 10;
  std::size_t num_frequencies = 512;
  double bandwidth = 1.0;
  std::size_t n = 4000;
  double noise_sd = 0.1;
  double alpha = 0.0;
  std::uint64_t seed_w_raw = 1;
  std::uint64_t seed_w_rff = 2;
  std::uint64_t seed_map = 3;
  std::uint64_t seed_x = 4;
  std::uint64_t seed_noise = 5;

  // Derives the five stream seeds from one master seed.
  static SynthSpec FromSeed(std::uint64_t seed, double alpha, std::size_t n = 4000);
};

struct SynthData {
  Mat x;        // n x d
  Mat y;        // n x 1
  Mat clean_y;  // y without noise
  RffMap map;
  Vec w_raw;
  Vec w_rff;
};

SynthData GenerateSynth(const SynthSpec& spec);

// The frozen map used by GenerateSynth (Gaussian, sin/cos, standard scaling).
RffMap SynthMap(const SynthSpec& spec);

// Exact Var_x[<w, phi(x)>] for x ~ N(0, I) and a Gaussian-family sin/cos map.
double RffSignalVariance(const RffMap& map, std::span<const double> w);

// Experiment 1: tangent-kernel diagonal of a raw-input net and an RFF-input
// net of the same hidden architecture as the input radius grows.
struct ExplosionConfig {
  std::vector<double> radii = {1.0, 10.0, 100.0, 1000.0, 10000.0};
  std::size_t input_dim = 10;
  std::size_t num_frequencies = 512;
  double bandwidth = 1.0;
  std::vector<std::size_t> hidden = {128, 128};
  double init_scale = 1.4142135623730951;
  std::uint64_t seed = 0;
};

struct ExplosionRow {
  double radius = 0.0;
  double k_raw = 0.0;    // K(x, x), raw net
  double k_rff = 0.0;    // K~(x, x), RFF net
  double gamma = 0.0;
  double m = 0.0;
  double decomposition_gap = 0.0;  // |gamma + m - k_rff| / k_rff
};

struct ExplosionResult {
  std::vector<ExplosionRow> rows;
  Vec direction;                // unit direction shared by all radii
  double upper_block_bound = 0.0;  // B certificate of the RFF net
  double raw_loglog_slope = 0.0;
  double rff_max_over_min = 0.0;
};

ExplosionResult RunKernelExplosion(const ExplosionConfig& config);

// Experiment 2: raw vs RFF convergence on synthetic data.
struct ConvergenceConfig {
  SynthSpec data;
  double learning_rate = 0.0;  // <= 0: pick with SelectLearningRate
  std::size_t steps = 5000;
  std::size_t record_every = 100;
  std::size_t batch_size = 0;  // 0 = full batch
  std::vector<std::size_t> hidden = {128, 128};
  double init_scale = 1.4142135623730951;
  std::uint64_t init_seed = 7;
};

struct ConvergenceSummary {
  std::vector<HistoryPoint> curve;
  double initial_mse = 0.0;
  double final_mse = 0.0;
  double slope = 0.0;  // least-squares slope of log(mse) against step
  double max_grad_norm = 0.0;
  double median_grad_norm = 0.0;
};

struct ConvergenceResult {
  ConvergenceSummary raw;
  ConvergenceSummary rff;
  double learning_rate = 0.0;
  double initial_bias = 0.0;  // raw.initial_mse - rff.initial_mse
};

ConvergenceSummary Summarize(std::vector<HistoryPoint> curve);
ConvergenceResult RunConvergence(const ConvergenceConfig& config);

// Largest lr in {2^-4, ..., 2^-10} at which the raw-input model trains
// stably on alpha = 0 data (finite, and final MSE below initial MSE).
double SelectLearningRate(const ConvergenceConfig& config);

}  // namespace rfflab

#endif  // RFFLAB_SYNTH_H_
