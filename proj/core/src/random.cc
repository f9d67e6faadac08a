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

#include <cmath>
#include <numbers>

#include "rfflab/errors.h"

namespace rfflab {

std::uint64_t MixSeed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t HashLabel(std::string_view label) {
  // FNV-1a, 64-bit.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

SeededRng::SeededRng(std::uint64_t seed, std::string label)
    : seed_(seed),
      label_(std::move(label)),
      engine_(MixSeed(seed ^ MixSeed(HashLabel(label_)))) {}

SeededRng SeededRng::Fork(std::string_view sublabel) const {
  return SeededRng(seed_, label_ + "/" + std::string(sublabel));
}

double SeededRng::Uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double SeededRng::UniformOpen01() {
  double u;
  do {
    u = Uniform01();
  } while (u == 0.0);
  return u;
}

double SeededRng::Uniform(double lo, double hi) {
  return lo + (hi - lo) * Uniform01();
}

std::uint64_t SeededRng::UniformIndex(std::uint64_t n) {
  Require(n > 0, "UniformIndex: n must be positive");
  // Rejection sampling removes modulo bias.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

double SeededRng::StdNormal() {
  if (has_spare_normal_) {
    has_spare_normal_ = false;
    return spare_normal_;
  }
  // Box-Muller.
  const double u1 = UniformOpen01();
  const double u2 = Uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_normal_ = r * std::sin(theta);
  has_spare_normal_ = true;
  return r * std::cos(theta);
}

double SeededRng::StdCauchy() {
  double u;
  do {
    u = Uniform01();
  } while (u == 0.0 || u == 0.5);  // tan(+-pi/2) is not finite
  return std::tan(std::numbers::pi * (u - 0.5));
}

double SeededRng::StdLaplace() {
  // Inverse CDF with u in (-1/2, 1/2).
  const double u = UniformOpen01() - 0.5;
  const double sign = u < 0.0 ? -1.0 : 1.0;
  return -sign * std::log(1.0 - 2.0 * std::abs(u));
}

std::vector<std::size_t> SeededRng::Permutation(std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(UniformIndex(i));
    std::swap(p[i - 1], p[j]);
  }
  return p;
}

ScalarDistribution ScalarDistribution::Uniform(double lo, double hi) {
  Require(lo < hi, "Uniform distribution requires lo < hi");
  return {Kind::kUniform, lo, hi};
}

double Sample(const ScalarDistribution& dist, SeededRng& rng) {
  switch (dist.kind) {
    case ScalarDistribution::Kind::kStdNormal:
      return rng.StdNormal();
    case ScalarDistribution::Kind::kStdCauchy:
      return rng.StdCauchy();
    case ScalarDistribution::Kind::kStdLaplace:
      return rng.StdLaplace();
    case ScalarDistribution::Kind::kUniform:
      Require(dist.lo < dist.hi, "Uniform distribution requires lo < hi");
      return rng.Uniform(dist.lo, dist.hi);
  }
  return 0.0;
}

Mat SampleMatrix(const ScalarDistribution& dist, std::size_t rows,
                 std::size_t cols, SeededRng& rng) {
  Require(rows >= 1 && cols >= 1, "SampleMatrix: rows and cols must be >= 1");
  Mat m(rows, cols);
  for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] = Sample(dist, rng);
  return m;
}

Vec SampleVector(const ScalarDistribution& dist, std::size_t n, SeededRng& rng) {
  Vec v(n);
  for (double& x : v) x = Sample(dist, rng);
  return v;
}

}  // namespace rfflab
