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

#ifndef RFFLAB_TRAIN_H_
#define RFFLAB_TRAIN_H_

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "rfflab/matrix.h"
#include "rfflab/mlp.h"
#include "rfflab/random.h"

namespace rfflab {

// MSE trains on (1/B) sum_i 1/2 |f(x_i) - y_i|^2 and reports the plain mean
// squared error. CrossEntropy takes class indices in Y's single column and
// applies softmax to the net's outputs.
struct LossSpec {
  enum class Kind { kMse, kCrossEntropy };
  Kind kind = Kind::kMse;
  static LossSpec Mse() { return {Kind::kMse}; }
  static LossSpec CrossEntropy() { return {Kind::kCrossEntropy}; }
};

// Reported loss of predictions against targets: MSE, or mean negative
// log-likelihood for cross-entropy.
double EvaluateLoss(const LossSpec& loss, const Mat& predictions, const Mat& targets);

// d(training objective)/d(prediction) for every row, including the 1/B factor.
Mat LossGradients(const LossSpec& loss, const Mat& predictions, const Mat& targets);

enum class Optimizer { kSgd, kAdam };

struct TrainConfig {
  LossSpec loss;
  double learning_rate = 0.01;
  std::size_t steps = 1000;
  std::size_t batch_size = 0;  // 0 means full batch
  std::size_t record_every = 100;
  Optimizer optimizer = Optimizer::kSgd;
  double weight_decay = 0.0;  // L2 penalty on weights (not biases)
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;
  bool record_grad_norm = true;
};

// Handed to the step hook before update t is applied (t = 1..steps).
struct StepContext {
  std::size_t step;                       // t
  const Mlp& params_before;               // theta_{t-1}
  std::span<const std::size_t> rows;      // indices into X of this batch
  const Mat& loss_grads;                  // g_it per batch row, learning rate excluded
};
using StepHook = std::function<void(const StepContext&)>;
// Called at every history point with the parameters theta_t.
using RecordHook = std::function<void(std::size_t step, const Mlp& net)>;

struct HistoryPoint {
  std::size_t step = 0;
  double loss = 0.0;
  double grad_norm = 0.0;  // full-data gradient norm at this step
};

struct TrainResult {
  Mlp net;
  std::vector<HistoryPoint> history;
};

// Deterministic gradient training. History is recorded at step 0 and every
// `record_every` steps on the full (X, Y). Minibatches walk a fresh seeded
// permutation each epoch. Throws NumericError with the step index when the
// loss or a gradient becomes non-finite.
TrainResult Train(Mlp net, const Mat& x, const Mat& y, const TrainConfig& config,
                  SeededRng rng, const StepHook& hook = {},
                  const RecordHook& on_record = {});

// Full-data loss and gradient norm at the current parameters.
HistoryPoint Measure(const Mlp& net, const Mat& x, const Mat& y,
                     const LossSpec& loss, bool with_grad_norm = true);

// Rows of `src` selected by `rows`.
Mat GatherRows(const Mat& src, std::span<const std::size_t> rows);

}  // namespace rfflab

#endif  // RFFLAB_TRAIN_H_
