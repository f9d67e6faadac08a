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

#include "rfflab/ntk.h"

#include <cmath>

#include <gtest/gtest.h>

#include "rfflab/errors.h"

namespace rfflab {
namespace {

Mlp ReluNet(std::vector<std::size_t> dims, std::uint64_t seed = 0) {
  return Mlp::Init(dims, Activation::ReLU(), std::sqrt(2.0), SeededRng(seed, "net"));
}

TEST(NtkValueTest, DiagonalIsSquaredGradientNorm) {
  const Mlp net = ReluNet({4, 16, 1});
  const Vec x{0.5, -1.0, 2.0, 0.1};
  const double g = Norm2(ParameterGradient(net, x));
  EXPECT_NEAR(NtkValue(net, x, x), g * g, 1e-12 * g * g);
  EXPECT_GE(NtkValue(net, x, x), 0.0);
}

TEST(NtkValueTest, LinearNetKernelIsInnerProduct) {
  const Mlp net = Mlp::FromWeights({Mat{{0.3, -0.7, 1.1}}}, {Activation::Identity()});
  EXPECT_DOUBLE_EQ(NtkValue(net, Vec{1, 2, 3}, Vec{-1, 0, 2}), 5.0);
}

TEST(NtkValueTest, QuadraticInInputScale) {
  const Mlp net = ReluNet({5, 32, 32, 1}, 2);
  const Vec x{0.1, 0.2, -0.3, 0.4, 0.5}, xp{-1.0, 0.3, 0.3, 0.0, 0.8};
  const double k = NtkValue(net, x, xp);
  for (double a : {0.5, 2.0, 10.0}) {
    Vec ax = x, axp = xp;
    for (double& v : ax) v *= a;
    for (double& v : axp) v *= a;
    EXPECT_NEAR(NtkValue(net, ax, axp), a * a * k, 1e-10 * std::abs(a * a * k));
  }
}

TEST(NtkGramTest, LinearNetGramIsXXt) {
  const Mlp net = Mlp::FromWeights({Mat{{1.0, 2.0}}}, {Activation::Identity()});
  const Mat x{{1, 0}, {0, 1}, {1, 1}};
  const KernelReport r = NtkGram(net, x);
  EXPECT_LT(MaxAbsDiff(r.gram, MatMulTransB(x, x)), 1e-14);
  EXPECT_EQ(r.numerical_rank, 2u);
}

TEST(NtkGramTest, IdenticalRowsGiveRankOne) {
  const Mlp net = ReluNet({3, 8, 1});
  const KernelReport r = NtkGram(net, Mat{{1, 2, 3}, {1, 2, 3}});
  EXPECT_EQ(r.numerical_rank, 1u);
  EXPECT_NEAR(r.spectrum[1], 0.0, 1e-9 * r.spectrum[0]);
}

TEST(NtkGramTest, RandomReluGramIsPsdAndSymmetric) {
  const Mlp net = ReluNet({6, 64, 64, 1}, 4);
  SeededRng rng(1, "x");
  const Mat x = SampleMatrix(ScalarDistribution::StdNormal(), 32, 6, rng);
  const KernelReport r = NtkGram(net, x);
  EXPECT_EQ(r.gram, r.gram.Transposed());
  EXPECT_GE(r.min_eigenvalue, -1e-8);
  EXPECT_GE(r.condition_number, 1.0);
}

TEST(NtkGramTest, NeedsTwoRows) {
  EXPECT_THROW(NtkGram(ReluNet({2, 4, 1}), Mat{{1, 2}}), ContractError);
}

TEST(BoundsTest, IdentityWeights) {
  const Mlp net = Mlp::FromWeights({Mat::Identity(3), Mat::Identity(3), Mat::Identity(3)},
                                   {Activation::ReLU(), Activation::ReLU(), Activation::Identity()});
  const BoundCertificates b = ComputeBounds(net);
  for (double s : b.forward_prefix) EXPECT_NEAR(s, 1.0, 1e-12);
  for (double t : b.backward_suffix) EXPECT_NEAR(t, 1.0, 1e-12);
  EXPECT_NEAR(b.c1, 3.0, 1e-12);
}

TEST(BoundsTest, GradientBoundedByC1) {
  const Mlp net = ReluNet({8, 32, 32, 1}, 6);
  const BoundCertificates b = ComputeBounds(net);
  SeededRng rng(3, "x");
  for (int t = 0; t < 1000; ++t) {
    const Vec x = SampleVector(ScalarDistribution::StdNormal(), 8, rng);
    EXPECT_LE(Norm2(ParameterGradient(net, x)), b.c1 * Norm2(x));
  }
}

TEST(BoundsTest, LowerBoundWitnessHolds) {
  const Mlp net = ReluNet({8, 32, 32, 1}, 7);
  const LowerBoundWitness w = FindLowerBoundWitness(net, 500, SeededRng(1, "w"));
  ASSERT_GT(w.c2, 0.0);
  for (double a : {2.0, 10.0, 100.0}) {
    Vec ax = w.direction;
    for (double& v : ax) v *= a;
    EXPECT_GE(Norm2(ParameterGradient(net, ax)), w.c2 * a);
  }
}

class DecompositionTest : public ::testing::Test {
 protected:
  DecompositionTest()
      : map_(RffMap::Build({SpectralKind::kGaussian, 1.0}, 4, 64, FeatureVariant::kSinCos,
                           FeatureScaling::kStandard, SeededRng(0, "map"))),
        net_(ReluNet({128, 32, 32, 1}, 9)) {}
  RffMap map_;
  Mlp net_;
};

TEST_F(DecompositionTest, BlocksSumToKernel) {
  const Vec x{0.1, 2.0, -1.0, 0.5}, xp{30.0, -4.0, 0.0, 1.0};
  const KernelDecomposition k = NtkDecompose(net_, map_, x, xp);
  EXPECT_NEAR(k.gamma + k.m, k.total, 1e-12 * std::abs(k.total));
  EXPECT_NEAR(k.total, NtkValue(net_, map_.Transform(x), map_.Transform(xp)),
              1e-12 * std::abs(k.total));
  EXPECT_NEAR(k.m, k.first_layer_factor * k.feature_kernel, 1e-12 * std::abs(k.m));
}

TEST_F(DecompositionTest, DiagonalMIsTwiceFirstLayerNorm) {
  const Vec x{1.0, -3.0, 0.25, 7.0};
  const KernelDecomposition k = NtkDecompose(net_, map_, x, x);
  EXPECT_NEAR(k.feature_kernel, 2.0, 1e-13);
  EXPECT_NEAR(k.m, 2.0 * k.first_layer_factor, 1e-12 * k.m);
}

TEST_F(DecompositionTest, GammaBoundedAcrossRadii) {
  const double bound = *ComputeBounds(net_, &map_).upper_block_bound;
  for (double r : {1.0, 10.0, 1e4}) {
    const Vec x{r, 0.0, 0.0, 0.0};
    const KernelDecomposition k = NtkDecompose(net_, map_, x, x);
    EXPECT_LE(std::abs(k.gamma), bound);
    EXPECT_LE(k.upper_block_sq_norm_x, bound);
  }
}

TEST_F(DecompositionTest, RejectsWrongWidth) {
  EXPECT_THROW(NtkDecompose(ReluNet({4, 8, 1}), map_, Vec(4), Vec(4)), ContractError);
}

TEST(ExpectedFeatureKernelTest, StandardScaleIsTwiceKernel) {
  const RffMap m = RffMap::Build({SpectralKind::kGaussian, 1.0}, 2, 32, FeatureVariant::kSinCos,
                                 FeatureScaling::kStandard, SeededRng(0, "m"));
  EXPECT_NEAR(ExpectedFeatureKernel(m, Vec{0.6, 0.8}), 2 * 0.6065306597, 1e-9);
}

}  // namespace
}  // namespace rfflab
