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

#ifndef RFFLAB_TELESCOPE_H_
#define RFFLAB_TELESCOPE_H_

#include <cstddef>
#include <span>
#include <vector>

#include "rfflab/matrix.h"
#include "rfflab/mlp.h"
#include "rfflab/random.h"

namespace rfflab {

// Record of a gradient-descent run in the form
//
//   f_T(x) ~= f_0(x) - lr * sum_{t=1..T} sum_i K_t(x, x_i) g_it
//
// where K_t is the tangent kernel at theta_{t-1} and g_it the per-example
// derivative of the training objective with respect to f(x_i). The
// reconstruction is exact when f is linear in its parameters.
struct TelescopeTrace {
  Mat eval_points;              // one evaluation point per row
  Vec initial_outputs;          // f_0 at each evaluation point
  double learning_rate = 0.0;
  std::size_t steps = 0;
  // Per step t (index t-1): kernel rows (n_eval x batch), the batch's training
  // row indices, and g_it for those rows.
  std::vector<Mat> kernel_rows;
  std::vector<std::vector<std::size_t>> batch_rows;
  std::vector<Vec> loss_grads;
};

struct TelescopeRun {
  Mlp trained;
  TelescopeTrace trace;
};

// Trains `net` on (x, y) with MSE for `steps` gradient steps and records the
// telescoping terms at `eval_points`. batch_size 0 means full batch.
TelescopeRun TelescopeRecord(const Mlp& net, const Mat& x, const Mat& y,
                             double learning_rate, std::size_t steps,
                             const Mat& eval_points, std::size_t batch_size = 0,
                             SeededRng rng = SeededRng(0, "telescope"));

// Reconstruction at evaluation point `eval_index`.
double TelescopeReconstruct(const TelescopeTrace& trace, std::size_t eval_index);
// Reconstruction at a point, which must be one of the trace's evaluation
// points (exact match); ContractError otherwise.
double TelescopeReconstruct(const TelescopeTrace& trace, std::span<const double> x);

}  // namespace rfflab

#endif  // RFFLAB_TELESCOPE_H_
