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

#include "rfflab/synth.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "rfflab/errors.h"
#include "rfflab/ntk.h"

namespace rfflab {

SynthSpec SynthSpec::FromSeed(std::uint64_t seed, double alpha, std::size_t n) {
  SynthSpec spec;
  spec.alpha = alpha;
  spec.n = n;
  spec.seed_w_raw = MixSeed(seed * 5 + 1);
  spec.seed_w_rff = MixSeed(seed * 5 + 2);
  spec.seed_map = MixSeed(seed * 5 + 3);
  spec.seed_x = MixSeed(seed * 5 + 4);
  spec.seed_noise = MixSeed(seed * 5 + 5);
  return spec;
}

RffMap SynthMap(const SynthSpec& spec) {
  return RffMap::Build({SpectralKind::kGaussian, spec.bandwidth}, spec.input_dim,
                       spec.num_frequencies, FeatureVariant::kSinCos,
                       FeatureScaling::kStandard, SeededRng(spec.seed_map, "synth/map"));
}

double RffSignalVariance(const RffMap& map, std::span<const double> w) {
  Require(map.variant() == FeatureVariant::kSinCos &&
              map.family().kind == SpectralKind::kGaussian,
          "RffSignalVariance: Gaussian sin/cos maps only");
  const std::size_t big_d = map.num_frequencies();
  Require(w.size() == 2 * big_d, "RffSignalVariance: weight length mismatch");
  const double sigma = map.family().bandwidth;
  Mat gram = MatMulTransA(map.omega(), map.omega());
  gram *= 1.0 / (sigma * sigma);
  const double s = map.scale();

  double mean = 0.0;
  for (std::size_t i = 0; i < big_d; ++i)
    mean += w[big_d + i] * std::exp(-0.5 * gram(i, i));
  mean *= s;

  double second = 0.0;
  for (std::size_t i = 0; i < big_d; ++i) {
    for (std::size_t j = 0; j < big_d; ++j) {
      const double minus = std::exp(-0.5 * (gram(i, i) + gram(j, j) - 2.0 * gram(i, j)));
      const double plus = std::exp(-0.5 * (gram(i, i) + gram(j, j) + 2.0 * gram(i, j)));
      second += w[i] * w[j] * 0.5 * (minus - plus) +
                w[big_d + i] * w[big_d + j] * 0.5 * (minus + plus);
    }
  }
  second *= s * s;
  return second - mean * mean;
}

SynthData GenerateSynth(const SynthSpec& spec) {
  Require(spec.n >= 1, "GenerateSynth: n must be >= 1");
  Require(spec.alpha >= 0.0 && spec.alpha <= 1.0, "GenerateSynth: alpha must lie in [0, 1]");
  Require(spec.noise_sd >= 0.0, "GenerateSynth: noise_sd must be >= 0");

  RffMap map = SynthMap(spec);
  SeededRng raw_rng(spec.seed_w_raw, "synth/w_raw");
  SeededRng rff_rng(spec.seed_w_rff, "synth/w_rff");
  SeededRng x_rng(spec.seed_x, "synth/x");
  SeededRng noise_rng(spec.seed_noise, "synth/noise");

  Vec w_raw = SampleVector(ScalarDistribution::StdNormal(), spec.input_dim, raw_rng);
  const double raw_sd = Norm2(w_raw);  // Var <w, x> = |w|^2 for x ~ N(0, I)
  for (double& v : w_raw) v /= raw_sd;

  Vec w_rff = SampleVector(ScalarDistribution::StdNormal(), map.feature_dim(), rff_rng);
  const double rff_sd = std::sqrt(RffSignalVariance(map, w_rff));
  for (double& v : w_rff) v /= rff_sd;

  Mat x = SampleMatrix(ScalarDistribution::StdNormal(), spec.n, spec.input_dim, x_rng);
  Mat clean(spec.n, 1), y(spec.n, 1);
  for (std::size_t r = 0; r < spec.n; ++r) {
    const double raw_part = Dot(w_raw, x.row(r));
    const double rff_part = spec.alpha > 0.0 ? Dot(w_rff, map.Transform(x.row(r))) : 0.0;
    clean(r, 0) = (1.0 - spec.alpha) * raw_part + spec.alpha * rff_part;
    y(r, 0) = clean(r, 0) + spec.noise_sd * noise_rng.StdNormal();
  }
  return {std::move(x), std::move(y), std::move(clean), std::move(map),
          std::move(w_raw), std::move(w_rff)};
}

ExplosionResult RunKernelExplosion(const ExplosionConfig& config) {
  Require(!config.radii.empty(), "RunKernelExplosion: no radii");
  for (std::size_t i = 0; i < config.radii.size(); ++i) {
    Require(config.radii[i] > 0.0, "RunKernelExplosion: radii must be positive");
    Require(i == 0 || config.radii[i] > config.radii[i - 1],
            "RunKernelExplosion: radii must be ascending");
  }
  SeededRng rng(config.seed, "explosion");
  const RffMap map =
      RffMap::Build({SpectralKind::kGaussian, config.bandwidth}, config.input_dim,
                    config.num_frequencies, FeatureVariant::kSinCos,
                    FeatureScaling::kStandard, rng.Fork("map"));

  std::vector<std::size_t> raw_dims{config.input_dim};
  std::vector<std::size_t> rff_dims{map.feature_dim()};
  for (std::size_t h : config.hidden) {
    raw_dims.push_back(h);
    rff_dims.push_back(h);
  }
  raw_dims.push_back(1);
  rff_dims.push_back(1);
  const Mlp raw_net =
      Mlp::Init(raw_dims, Activation::ReLU(), config.init_scale, rng.Fork("init"));
  const Mlp rff_net =
      Mlp::Init(rff_dims, Activation::ReLU(), config.init_scale, rng.Fork("init"));

  SeededRng dir_rng = rng.Fork("direction");
  Vec dir = SampleVector(ScalarDistribution::StdNormal(), config.input_dim, dir_rng);
  const double nd = Norm2(dir);
  for (double& v : dir) v /= nd;

  ExplosionResult result;
  result.direction = dir;
  result.upper_block_bound = *ComputeBounds(rff_net, &map).upper_block_bound;
  std::vector<double> log_r, log_k;
  double lo = 0.0, hi = 0.0;
  for (double r : config.radii) {
    Vec x(dir);
    for (double& v : x) v *= r;
    ExplosionRow row;
    row.radius = r;
    row.k_raw = NtkValue(raw_net, x, x);
    const KernelDecomposition dec = NtkDecompose(rff_net, map, x, x);
    row.k_rff = dec.total;
    row.gamma = dec.gamma;
    row.m = dec.m;
    row.decomposition_gap =
        std::abs(dec.gamma + dec.m - dec.total) / std::max(std::abs(dec.total), 1e-300);
    result.rows.push_back(row);
    log_r.push_back(std::log(r));
    log_k.push_back(std::log(row.k_raw));
    lo = result.rows.size() == 1 ? row.k_rff : std::min(lo, row.k_rff);
    hi = result.rows.size() == 1 ? row.k_rff : std::max(hi, row.k_rff);
  }
  result.raw_loglog_slope = log_r.size() >= 2 ? LinearSlope(log_r, log_k) : 0.0;
  result.rff_max_over_min = lo > 0.0 ? hi / lo : INFINITY;
  return result;
}

ConvergenceSummary Summarize(std::vector<HistoryPoint> curve) {
  Require(!curve.empty(), "Summarize: empty curve");
  ConvergenceSummary s;
  s.initial_mse = curve.front().loss;
  s.final_mse = curve.back().loss;
  std::vector<double> steps, logs, norms;
  for (const HistoryPoint& p : curve) {
    steps.push_back(static_cast<double>(p.step));
    logs.push_back(std::log(p.loss));
    norms.push_back(p.grad_norm);
  }
  s.slope = curve.size() >= 2 ? LinearSlope(steps, logs) : 0.0;
  std::sort(norms.begin(), norms.end());
  s.max_grad_norm = norms.back();
  const std::size_t n = norms.size();
  s.median_grad_norm = n % 2 == 1 ? norms[n / 2] : 0.5 * (norms[n / 2 - 1] + norms[n / 2]);
  s.curve = std::move(curve);
  return s;
}

namespace {

std::vector<std::size_t> Dims(std::size_t input, const std::vector<std::size_t>& hidden) {
  std::vector<std::size_t> dims{input};
  dims.insert(dims.end(), hidden.begin(), hidden.end());
  dims.push_back(1);
  return dims;
}

TrainConfig MakeTrainConfig(const ConvergenceConfig& config, double lr) {
  TrainConfig tc;
  tc.loss = LossSpec::Mse();
  tc.learning_rate = lr;
  tc.steps = config.steps;
  tc.record_every = config.record_every;
  tc.batch_size = config.batch_size;
  return tc;
}

std::vector<HistoryPoint> TrainArm(const ConvergenceConfig& config, const Mat& x,
                                   const Mat& y, double lr) {
  const Mlp net = Mlp::Init(Dims(x.cols(), config.hidden), Activation::ReLU(),
                            config.init_scale, SeededRng(config.init_seed, "converge/init"));
  return Train(net, x, y, MakeTrainConfig(config, lr),
               SeededRng(config.init_seed, "converge/batches"))
      .history;
}

}  // namespace

double SelectLearningRate(const ConvergenceConfig& config) {
  SynthSpec spec = config.data;
  spec.alpha = 0.0;
  const SynthData data = GenerateSynth(spec);
  for (int e = 4; e <= 10; ++e) {
    const double lr = std::ldexp(1.0, -e);
    try {
      const auto curve = TrainArm(config, data.x, data.y, lr);
      bool finite = true;
      for (const auto& p : curve) finite = finite && std::isfinite(p.loss);
      if (finite && curve.back().loss < curve.front().loss) return lr;
    } catch (const NumericError&) {
      // unstable at this rate; try the next smaller one
    }
  }
  throw NumericError("SelectLearningRate: no stable learning rate in 2^-4..2^-10");
}

ConvergenceResult RunConvergence(const ConvergenceConfig& config) {
  ConvergenceResult result;
  result.learning_rate =
      config.learning_rate > 0.0 ? config.learning_rate : SelectLearningRate(config);
  const SynthData data = GenerateSynth(config.data);
  const Mat features = data.map.TransformRows(data.x);
  result.raw = Summarize(TrainArm(config, data.x, data.y, result.learning_rate));
  result.rff = Summarize(TrainArm(config, features, data.y, result.learning_rate));
  result.initial_bias = result.raw.initial_mse - result.rff.initial_mse;
  return result;
}

}  // namespace rfflab
