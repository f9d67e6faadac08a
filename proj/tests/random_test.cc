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

#include "rfflab/random.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "rfflab/errors.h"

namespace rfflab {
namespace {

TEST(SeededRngTest, SameSeedAndLabelGiveSameStream) {
  SeededRng a(42, "omega"), b(42, "omega");
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.NextU64(), b.NextU64());
}

TEST(SeededRngTest, LabelsAndForksSeparateStreams) {
  SeededRng a(42, "omega"), b(42, "offset");
  EXPECT_NE(a.NextU64(), b.NextU64());
  SeededRng root(1, "root");
  EXPECT_NE(root.Fork("x").NextU64(), root.Fork("y").NextU64());
  EXPECT_EQ(root.Fork("x").NextU64(), root.Fork("x").NextU64());
}

TEST(SampleMatrixTest, Deterministic) {
  SeededRng a(9, "m"), b(9, "m");
  EXPECT_EQ(SampleMatrix(ScalarDistribution::StdNormal(), 4, 6, a),
            SampleMatrix(ScalarDistribution::StdNormal(), 4, 6, b));
}

TEST(SampleMatrixTest, RejectsEmptyShape) {
  SeededRng rng(0, "m");
  EXPECT_THROW(SampleMatrix(ScalarDistribution::StdNormal(), 0, 3, rng), ContractError);
}

TEST(SampleMatrixTest, StdNormalMoments) {
  SeededRng rng(5, "normal");
  const Mat m = SampleMatrix(ScalarDistribution::StdNormal(), 1000, 100, rng);
  double sum = 0.0, sq = 0.0;
  for (double v : m.values()) {
    sum += v;
    sq += v * v;
  }
  const double n = static_cast<double>(m.size());
  const double mean = sum / n;
  EXPECT_NEAR(mean, 0.0, 0.02);
  EXPECT_NEAR(sq / n - mean * mean, 1.0, 0.05);
}

TEST(SampleMatrixTest, UniformStaysInHalfOpenRange) {
  SeededRng rng(5, "uniform");
  const double two_pi = 2.0 * std::numbers::pi;
  const Mat m = SampleMatrix(ScalarDistribution::Uniform(0.0, two_pi), 200, 500, rng);
  for (double v : m.values()) {
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, two_pi);
  }
}

TEST(ScalarDistributionTest, UniformNeedsOrderedBounds) {
  EXPECT_THROW(ScalarDistribution::Uniform(1.0, 1.0), ContractError);
  EXPECT_THROW(ScalarDistribution::Uniform(2.0, 1.0), ContractError);
}

// Empirical quantiles against the closed-form inverse CDFs.
double EmpiricalQuantile(std::vector<double> v, double q) {
  const auto k = static_cast<std::size_t>(q * static_cast<double>(v.size() - 1));
  std::nth_element(v.begin(), v.begin() + static_cast<long>(k), v.end());
  return v[k];
}

TEST(ScalarDistributionTest, CauchyQuantiles) {
  SeededRng rng(7, "cauchy");
  const Vec s = SampleVector(ScalarDistribution::StdCauchy(), 100000, rng);
  for (double q : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    const double expected = std::tan(std::numbers::pi * (q - 0.5));
    EXPECT_NEAR(EmpiricalQuantile(s, q), expected, 0.03 * (1 + std::abs(expected))) << q;
  }
}

TEST(ScalarDistributionTest, LaplaceQuantilesAndVariance) {
  SeededRng rng(7, "laplace");
  const Vec s = SampleVector(ScalarDistribution::StdLaplace(), 100000, rng);
  // Inverse CDF: -ln(2(1-q)) for q >= 1/2.
  EXPECT_NEAR(EmpiricalQuantile(s, 0.75), std::log(2.0), 0.02);
  EXPECT_NEAR(EmpiricalQuantile(s, 0.25), -std::log(2.0), 0.02);
  double sq = 0.0;
  for (double v : s) sq += v * v;
  EXPECT_NEAR(sq / static_cast<double>(s.size()), 2.0, 0.05);
}

TEST(SeededRngTest, PermutationIsAPermutation) {
  SeededRng rng(1, "perm");
  std::vector<std::size_t> p = rng.Permutation(1000);
  std::sort(p.begin(), p.end());
  for (std::size_t i = 0; i < p.size(); ++i) EXPECT_EQ(p[i], i);
}

TEST(SeededRngTest, UniformIndexCoversRange) {
  SeededRng rng(1, "index");
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 7000; ++i) ++counts[rng.UniformIndex(7)];
  for (int c : counts) EXPECT_NEAR(c, 1000, 150);
}

}  // namespace
}  // namespace rfflab
