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

#include "rfflab/sym_eigen.h"

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "rfflab/errors.h"
#include "rfflab/random.h"

namespace rfflab {
namespace {

Mat RandomSymmetric(std::size_t n, std::uint64_t seed) {
  SeededRng rng(seed, "sym");
  const Mat g = SampleMatrix(ScalarDistribution::StdNormal(), n, n, rng);
  return (g + g.Transposed()) * 0.5;
}

TEST(SymEigTest, Identity) {
  const SymEigenResult r = SymEig(Mat::Identity(4));
  for (double v : r.values) EXPECT_DOUBLE_EQ(v, 1.0);
}

TEST(SymEigTest, DiagonalIsSortedDescending) {
  const SymEigenResult r = SymEig(Mat::Diagonal(Vec{3, 1, 2}));
  EXPECT_EQ(r.values, (Vec{3, 2, 1}));
}

TEST(SymEigTest, ReconstructsRandomSymmetric) {
  const Mat a = RandomSymmetric(8, 1);
  const SymEigenResult r = SymEig(a);
  const Mat recon = MatMul(MatMul(r.vectors, Mat::Diagonal(r.values)), r.vectors.Transposed());
  EXPECT_LT(MaxAbsDiff(recon, a), 1e-8);
  EXPECT_LT(MaxAbsDiff(MatMulTransA(r.vectors, r.vectors), Mat::Identity(8)), 1e-8);
}

TEST(SymEigTest, EigenpairsAndTrace) {
  const Mat a = RandomSymmetric(20, 2);
  const SymEigenResult r = SymEig(a);
  double sum = 0.0;
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    const Vec v = r.vectors.column(i);
    const Vec av = MatVec(a, v);
    for (std::size_t k = 0; k < v.size(); ++k)
      EXPECT_NEAR(av[k], r.values[i] * v[k], 1e-8 * std::abs(r.values.front()));
    sum += r.values[i];
  }
  EXPECT_NEAR(sum, Trace(a), 1e-9 * std::abs(Trace(a)) + 1e-12);
  EXPECT_TRUE(std::is_sorted(r.values.rbegin(), r.values.rend()));
}

TEST(SymEigTest, MatchesEigenSelfAdjointSolver) {
  const Mat a = RandomSymmetric(30, 3);
  Eigen::MatrixXd e(30, 30);
  for (std::size_t i = 0; i < 30; ++i)
    for (std::size_t j = 0; j < 30; ++j) e(static_cast<long>(i), static_cast<long>(j)) = a(i, j);
  const Eigen::VectorXd ref = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(e).eigenvalues();
  const Vec ours = SymEigenvalues(a);
  for (std::size_t i = 0; i < 30; ++i) EXPECT_NEAR(ours[i], ref(29 - static_cast<long>(i)), 1e-10);
}

TEST(SymEigTest, RejectsNonSymmetric) {
  EXPECT_THROW(SymEig(Mat{{1, 2}, {3, 4}}), ContractError);
  EXPECT_THROW(SymEig(Mat(2, 3)), ContractError);
}

}  // namespace
}  // namespace rfflab
