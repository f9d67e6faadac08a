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

#include <cmath>

#include <gtest/gtest.h>

#include "rfflab/errors.h"

namespace rfflab {
namespace {

struct Problem {
  Mat x, y, eval;
};

Problem MakeProblem() {
  SeededRng rng(2, "tele");
  Problem p;
  p.x = SampleMatrix(ScalarDistribution::StdNormal(), 24, 4, rng);
  p.y = Mat(24, 1);
  for (std::size_t i = 0; i < 24; ++i) p.y(i, 0) = std::cos(p.x(i, 0)) - p.x(i, 2);
  p.eval = SampleMatrix(ScalarDistribution::StdNormal(), 5, 4, rng);
  return p;
}

double MaxError(const TelescopeRun& run, const Mat& eval) {
  double worst = 0.0;
  for (std::size_t e = 0; e < eval.rows(); ++e)
    worst = std::max(worst, std::abs(TelescopeReconstruct(run.trace, e) -
                                     Evaluate(run.trained, eval.row(e))));
  return worst;
}

TEST(TelescopeTest, ZeroStepsReturnsInitialOutput) {
  const Problem p = MakeProblem();
  const Mlp net = Mlp::Init({4, 16, 1}, Activation::ReLU(), std::sqrt(2.0), SeededRng(0, "n"));
  const TelescopeRun run = TelescopeRecord(net, p.x, p.y, 0.1, 0, p.eval);
  for (std::size_t e = 0; e < 5; ++e)
    EXPECT_EQ(TelescopeReconstruct(run.trace, e), Evaluate(net, p.eval.row(e)));
}

TEST(TelescopeTest, ExactForParameterLinearModel) {
  const Problem p = MakeProblem();
  const Mlp net = Mlp::Init({4, 1}, Activation::Identity(), 1.0, SeededRng(0, "n"));
  const TelescopeRun run = TelescopeRecord(net, p.x, p.y, 0.1, 60, p.eval);
  EXPECT_LT(MaxError(run, p.eval), 1e-9);
  EXPECT_EQ(run.trace.steps, 60u);
  EXPECT_EQ(run.trace.kernel_rows.size(), 60u);
  EXPECT_EQ(run.trace.kernel_rows[0].cols(), 24u);
}

TEST(TelescopeTest, MinibatchStillExactForLinearModel) {
  const Problem p = MakeProblem();
  const Mlp net = Mlp::Init({4, 1}, Activation::Identity(), 1.0, SeededRng(0, "n"));
  const TelescopeRun run = TelescopeRecord(net, p.x, p.y, 0.1, 30, p.eval, 6);
  EXPECT_LT(MaxError(run, p.eval), 1e-9);
  EXPECT_EQ(run.trace.kernel_rows[0].cols(), 6u);
}

TEST(TelescopeTest, ErrorShrinksWithLearningRate) {
  const Problem p = MakeProblem();
  const Mlp net = Mlp::Init({4, 32, 1}, Activation::ReLU(), std::sqrt(2.0), SeededRng(1, "n"));
  const double full = MaxError(TelescopeRecord(net, p.x, p.y, 0.05, 80, p.eval), p.eval);
  const double half = MaxError(TelescopeRecord(net, p.x, p.y, 0.025, 160, p.eval), p.eval);
  EXPECT_GT(full, 0.0);
  EXPECT_GE(full / half, 1.6);
}

TEST(TelescopeTest, PointLookup) {
  const Problem p = MakeProblem();
  const Mlp net = Mlp::Init({4, 1}, Activation::Identity(), 1.0, SeededRng(0, "n"));
  const TelescopeRun run = TelescopeRecord(net, p.x, p.y, 0.1, 5, p.eval);
  EXPECT_EQ(TelescopeReconstruct(run.trace, p.eval.row(3)), TelescopeReconstruct(run.trace, 3));
  EXPECT_THROW(TelescopeReconstruct(run.trace, Vec{9, 9, 9, 9}), ContractError);
}

}  // namespace
}  // namespace rfflab
