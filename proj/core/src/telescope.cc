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

#include "rfflab/telescope.h"

#include <algorithm>

#include "rfflab/errors.h"
#include "rfflab/ntk.h"
#include "rfflab/train.h"

namespace rfflab {

TelescopeRun TelescopeRecord(const Mlp& net, const Mat& x, const Mat& y,
                             double learning_rate, std::size_t steps,
                             const Mat& eval_points, std::size_t batch_size,
                             SeededRng rng) {
  Require(net.output_dim() == 1, "TelescopeRecord: scalar-output net required");
  Require(y.cols() == 1, "TelescopeRecord: targets must be a single column");
  Require(eval_points.cols() == net.input_dim(),
          "TelescopeRecord: evaluation points have the wrong dimension");

  TelescopeTrace trace;
  trace.eval_points = eval_points;
  trace.learning_rate = learning_rate;
  trace.steps = steps;
  trace.initial_outputs.resize(eval_points.rows());
  for (std::size_t e = 0; e < eval_points.rows(); ++e)
    trace.initial_outputs[e] = Evaluate(net, eval_points.row(e));

  TrainConfig config;
  config.loss = LossSpec::Mse();
  config.learning_rate = learning_rate;
  config.steps = steps;
  config.batch_size = batch_size;
  config.record_every = std::max<std::size_t>(steps, 1);
  config.record_grad_norm = false;

  auto hook = [&](const StepContext& ctx) {
    std::vector<Vec> eval_grads(eval_points.rows());
    for (std::size_t e = 0; e < eval_points.rows(); ++e)
      eval_grads[e] = ParameterGradient(ctx.params_before, eval_points.row(e));
    Mat k(eval_points.rows(), ctx.rows.size());
    Vec g(ctx.rows.size());
    for (std::size_t i = 0; i < ctx.rows.size(); ++i) {
      const Vec gi = ParameterGradient(ctx.params_before, x.row(ctx.rows[i]));
      for (std::size_t e = 0; e < eval_points.rows(); ++e)
        k(e, i) = Dot(eval_grads[e], gi);
      g[i] = ctx.loss_grads(i, 0);
    }
    trace.kernel_rows.push_back(std::move(k));
    trace.batch_rows.emplace_back(ctx.rows.begin(), ctx.rows.end());
    trace.loss_grads.push_back(std::move(g));
  };

  TrainResult trained = Train(net, x, y, config, std::move(rng), hook);
  return {std::move(trained.net), std::move(trace)};
}

double TelescopeReconstruct(const TelescopeTrace& trace, std::size_t eval_index) {
  Require(eval_index < trace.initial_outputs.size(),
          "TelescopeReconstruct: evaluation index out of range");
  double sum = 0.0;
  for (std::size_t t = 0; t < trace.kernel_rows.size(); ++t) {
    const Mat& k = trace.kernel_rows[t];
    const Vec& g = trace.loss_grads[t];
    for (std::size_t i = 0; i < g.size(); ++i) sum += k(eval_index, i) * g[i];
  }
  return trace.initial_outputs[eval_index] - trace.learning_rate * sum;
}

double TelescopeReconstruct(const TelescopeTrace& trace, std::span<const double> x) {
  for (std::size_t e = 0; e < trace.eval_points.rows(); ++e) {
    const auto row = trace.eval_points.row(e);
    if (row.size() == x.size() && std::equal(row.begin(), row.end(), x.begin()))
      return TelescopeReconstruct(trace, e);
  }
  throw ContractError("TelescopeReconstruct: point is not one of the trace's "
                      "evaluation points");
}

}  // namespace rfflab
