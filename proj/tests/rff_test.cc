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

#include "rfflab/rff.h"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "rfflab/errors.h"
#include "rfflab/sym_eigen.h"

namespace rfflab {
namespace {

RffMap Gaussian(std::size_t d, std::size_t big_d, FeatureVariant v = FeatureVariant::kSinCos,
                FeatureScaling s = FeatureScaling::kStandard, std::uint64_t seed = 0) {
  return RffMap::Build({SpectralKind::kGaussian, 1.0}, d, big_d, v, s, SeededRng(seed, "map"));
}

TEST(RffMapTest, ShapeAndDeterminism) {
  const RffMap a = Gaussian(2, 3);
  EXPECT_EQ(a.omega().rows(), 2u);
  EXPECT_EQ(a.omega().cols(), 3u);
  EXPECT_EQ(a.feature_dim(), 6u);
  EXPECT_EQ(a.omega(), Gaussian(2, 3).omega());
  EXPECT_NE(a.omega(), Gaussian(2, 3, FeatureVariant::kSinCos, FeatureScaling::kStandard, 1).omega());
  const RffMap c = Gaussian(2, 3, FeatureVariant::kCosOffset);
  EXPECT_EQ(c.feature_dim(), 3u);
  EXPECT_EQ(c.offsets().size(), 3u);
}

TEST(RffMapTest, RejectsNonPositiveBandwidth) {
  EXPECT_THROW(RffMap::Build({SpectralKind::kGaussian, 0.0}, 2, 3, FeatureVariant::kSinCos,
                             FeatureScaling::kStandard, SeededRng(0, "m")),
               ContractError);
}

TEST(RffMapTest, LaplacianFrequenciesAreCauchy) {
  const RffMap m = RffMap::Build({SpectralKind::kLaplacian, 1.0}, 1, 100000,
                                 FeatureVariant::kSinCos, FeatureScaling::kStandard,
                                 SeededRng(3, "m"));
  // Share of |w| > tan(3 pi / 8) ~= 2.414 is 1/4 for a standard Cauchy.
  std::size_t tail = 0;
  for (double w : m.omega().values()) tail += std::abs(w) > std::tan(3 * std::numbers::pi / 8);
  EXPECT_NEAR(static_cast<double>(tail) / 1e5, 0.25, 0.006);
}

TEST(TransformTest, ZeroInput) {
  const RffMap m = Gaussian(3, 4);
  const Vec phi = m.Transform(Vec{0, 0, 0});
  const double c = std::sqrt(2.0 / 4.0);
  EXPECT_EQ(phi, (Vec{0, 0, 0, 0, c, c, c, c}));
}

TEST(TransformTest, HandComputedSingleFrequency) {
  const RffMap m = RffMap::FromParts({SpectralKind::kGaussian, 1.0}, FeatureVariant::kSinCos,
                                     FeatureScaling::kStandard, 0, Mat{{2.0}}, {});
  const Vec phi = m.Transform(Vec{std::numbers::pi / 4});
  EXPECT_NEAR(phi[0], std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(phi[1], 0.0, 1e-15);
}

TEST(TransformTest, NormIsConstant) {
  const RffMap standard = Gaussian(10, 256);
  const RffMap unbiased = Gaussian(10, 256, FeatureVariant::kSinCos, FeatureScaling::kUnbiased);
  SeededRng rng(1, "x");
  for (int t = 0; t < 200; ++t) {
    Vec x = SampleVector(ScalarDistribution::StdNormal(), 10, rng);
    for (double& v : x) v *= std::pow(10.0, t % 5);
    EXPECT_NEAR(Norm2(standard.Transform(x)), std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(Norm2(unbiased.Transform(x)), 1.0, 1e-12);
  }
  EXPECT_DOUBLE_EQ(standard.MaxFeatureNorm(), std::sqrt(2.0));
}

TEST(TransformTest, CosOffsetScalings) {
  const RffMap standard = Gaussian(2, 8, FeatureVariant::kCosOffset, FeatureScaling::kStandard, 4);
  const RffMap unb = Gaussian(2, 8, FeatureVariant::kCosOffset, FeatureScaling::kUnbiased, 4);
  const Vec x{0.3, -1.2};
  const Vec a = standard.Transform(x), b = unb.Transform(x);
  for (std::size_t i = 0; i < 8; ++i) {
    const double z = standard.omega()(0, i) * x[0] + standard.omega()(1, i) * x[1] + standard.offsets()[i];
    EXPECT_NEAR(a[i], std::cos(z) / std::sqrt(8.0), 1e-14);
    EXPECT_NEAR(b[i], std::sqrt(2.0 / 8.0) * std::cos(z), 1e-14);
  }
}

TEST(TransformTest, BandwidthDividesFrequencies) {
  const RffMap wide = RffMap::Build({SpectralKind::kGaussian, 2.0}, 3, 16, FeatureVariant::kSinCos,
                                    FeatureScaling::kStandard, SeededRng(0, "map"));
  const RffMap unit = Gaussian(3, 16);
  const Vec x{1.0, -2.0, 0.5};
  EXPECT_EQ(wide.omega(), unit.omega());
  const Vec a = wide.Transform(x);
  const Vec b = unit.Transform(Vec{0.5, -1.0, 0.25});
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-15);
}

TEST(TransformTest, LengthMismatchThrows) {
  EXPECT_THROW(Gaussian(3, 4).Transform(Vec{1, 2}), ContractError);
}

TEST(AnalyticKernelTest, FamilyValues) {
  EXPECT_DOUBLE_EQ(AnalyticKernel({SpectralKind::kGaussian, 1.0}, Vec{0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(AnalyticKernel({SpectralKind::kLaplacian, 1.0}, Vec{0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(AnalyticKernel({SpectralKind::kCauchy, 1.0}, Vec{0, 0, 0}), 8.0);
  EXPECT_DOUBLE_EQ(AnalyticKernel({SpectralKind::kCauchy, 1.0, true}, Vec{0, 0, 0}), 1.0);
  EXPECT_NEAR(AnalyticKernel({SpectralKind::kGaussian, 1.0}, Vec{0.6, 0.8}), 0.606531, 1e-6);
  EXPECT_NEAR(AnalyticKernel({SpectralKind::kLaplacian, 1.0}, Vec{1.5, -0.5}), 0.135335, 1e-6);
  // Cauchy: prod 2 / (1 + d^2) at d = (1, 2) is 1 * 0.4.
  EXPECT_NEAR(AnalyticKernel({SpectralKind::kCauchy, 1.0}, Vec{1, 2}), 0.4, 1e-15);
  // Bandwidth: k(delta / sigma).
  EXPECT_NEAR(AnalyticKernel({SpectralKind::kGaussian, 2.0}, Vec{2, 0}), 0.606531, 1e-6);
}

TEST(EmpiricalKernelTest, DiagonalIdentities) {
  const Vec x{0.2, -0.4, 1.0};
  EXPECT_NEAR(EmpiricalKernel(Gaussian(3, 64, FeatureVariant::kSinCos, FeatureScaling::kUnbiased),
                              x, x), 1.0, 1e-14);
  EXPECT_NEAR(EmpiricalKernel(Gaussian(3, 64), x, x), 2.0, 1e-14);
}

TEST(EmpiricalKernelTest, TranslationInvariantSinCosIdentity) {
  const RffMap m = Gaussian(4, 128);
  const Vec x{0.1, 0.5, -0.3, 2.0}, y{-1.0, 0.4, 0.0, 1.5}, c{3.0, -7.0, 0.25, 11.0};
  Vec xc = x, yc = y, delta(4);
  for (std::size_t i = 0; i < 4; ++i) {
    xc[i] += c[i];
    yc[i] += c[i];
    delta[i] = x[i] - y[i];
  }
  EXPECT_NEAR(EmpiricalKernel(m, x, y), EmpiricalKernel(m, xc, yc), 1e-10);
  EXPECT_NEAR(EmpiricalKernel(m, x, y), SinCosKernelFromDifference(m, delta), 1e-12);
}

TEST(EmpiricalKernelTest, GaussianWithinToleranceAtUnitDistance) {
  // Pairs at |x - y| = 1 over 100 independent maps: at least 95 land within
  // 0.05 of exp(-1/2).
  int within = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const RffMap m = Gaussian(5, 4096, FeatureVariant::kSinCos, FeatureScaling::kUnbiased, s);
    const Vec x{0.2, 0.1, -0.3, 0.0, 0.5};
    Vec y = x;
    y[s % 5] += 1.0;
    within += std::abs(EmpiricalKernel(m, x, y) - 0.606531) <= 0.05;
  }
  EXPECT_GE(within, 95);
}

TEST(EmpiricalKernelTest, UnbiasedOverIndependentMaps) {
  const SpectralFamily fam{SpectralKind::kLaplacian, 1.0};
  const Vec x{0.3, -0.2}, y{-0.1, 0.4};
  const double target = AnalyticKernel(fam, Vec{0.4, -0.6});
  double sum = 0.0, sq = 0.0;
  const int reps = 200;
  for (int r = 0; r < reps; ++r) {
    const RffMap m = RffMap::Build(fam, 2, 512, FeatureVariant::kSinCos, FeatureScaling::kUnbiased,
                                   SeededRng(static_cast<std::uint64_t>(r), "unbiased"));
    const double k = EmpiricalKernel(m, x, y);
    sum += k;
    sq += k * k;
  }
  const double mean = sum / reps;
  const double se = std::sqrt((sq / reps - mean * mean) / reps);
  EXPECT_LE(std::abs(mean - target), 3 * se);
}

TEST(EmpiricalKernelTest, GramIsPositiveSemidefinite) {
  const RffMap m = Gaussian(3, 32);
  SeededRng rng(2, "x");
  const Mat x = SampleMatrix(ScalarDistribution::StdNormal(), 40, 3, rng);
  const Mat phi = m.TransformRows(x);
  const Vec ev = SymEigenvalues(MatMulTransB(phi, phi));
  EXPECT_GE(ev.back(), -1e-9);
}

TEST(McErrorCurveTest, ErrorShrinksAtMonteCarloRate) {
  const McErrorCurve c = MonteCarloErrorCurve({SpectralKind::kGaussian, 1.0}, 5, 100,
                                              {16, 64, 256, 1024}, SeededRng(0, "mc"));
  ASSERT_EQ(c.rows.size(), 4u);
  EXPECT_LT(c.rows.back().mean_abs_error, c.rows.front().mean_abs_error);
  EXPECT_NEAR(c.loglog_slope, -0.5, 0.2);
}

TEST(McErrorCurveTest, ZeroDistanceHasNoError) {
  const McErrorCurve c = MonteCarloErrorCurve({SpectralKind::kCauchy, 1.0}, 3, 10, {64},
                                              SeededRng(0, "mc"), {0.0});
  EXPECT_NEAR(c.rows[0].mean_abs_error, 0.0, 1e-14);
}

TEST(McErrorCurveTest, RequiresAscendingD) {
  EXPECT_THROW(MonteCarloErrorCurve({SpectralKind::kGaussian, 1.0}, 2, 5, {64, 16},
                                    SeededRng(0, "mc")),
               ContractError);
}

TEST(ParseTest, NamesRoundTripAndErrorsListOptions) {
  for (SpectralKind k : {SpectralKind::kGaussian, SpectralKind::kLaplacian, SpectralKind::kCauchy})
    EXPECT_EQ(ParseSpectralKind(ToString(k)), k);
  try {
    ParseSpectralKind("rbf");
    FAIL();
  } catch (const ContractError& e) {
    EXPECT_NE(std::string(e.what()).find("gaussian"), std::string::npos);
  }
  EXPECT_EQ(ParseFeatureVariant("cos_offset"), FeatureVariant::kCosOffset);
  EXPECT_EQ(ParseFeatureScaling("unbiased"), FeatureScaling::kUnbiased);
}

}  // namespace
}  // namespace rfflab
