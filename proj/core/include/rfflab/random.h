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

#ifndef RFFLAB_RANDOM_H_
#define RFFLAB_RANDOM_H_

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "rfflab/matrix.h"

namespace rfflab {

// A labelled, seeded random stream. Streams with equal (seed, label) produce
// identical sequences on every platform: the engine is mt19937_64, whose output
// is fully specified by the standard, and every transform to a real-valued law
// below is written out here rather than delegated to <random> distributions
// (those are implementation-defined).
class SeededRng {
 public:
  SeededRng(std::uint64_t seed, std::string label);

  std::uint64_t seed() const { return seed_; }
  const std::string& label() const { return label_; }

  // Independent child stream, e.g. Fork("omega") or Fork("init/layer2").
  SeededRng Fork(std::string_view sublabel) const;

  std::uint64_t NextU64() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double Uniform01();
  // Uniform on the open interval (0, 1).
  double UniformOpen01();
  double Uniform(double lo, double hi);
  // Uniform integer in [0, n).
  std::uint64_t UniformIndex(std::uint64_t n);
  double StdNormal();
  double StdCauchy();
  double StdLaplace();

  // Deterministic Fisher-Yates permutation of 0..n-1.
  std::vector<std::size_t> Permutation(std::size_t n);

 private:
  std::uint64_t seed_;
  std::string label_;
  std::mt19937_64 engine_;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

struct ScalarDistribution {
  enum class Kind { kStdNormal, kStdCauchy, kStdLaplace, kUniform };
  Kind kind = Kind::kStdNormal;
  double lo = 0.0;
  double hi = 1.0;

  static ScalarDistribution StdNormal() { return {Kind::kStdNormal}; }
  static ScalarDistribution StdCauchy() { return {Kind::kStdCauchy}; }
  static ScalarDistribution StdLaplace() { return {Kind::kStdLaplace}; }
  static ScalarDistribution Uniform(double lo, double hi);
};

double Sample(const ScalarDistribution& dist, SeededRng& rng);

// rows x cols matrix of i.i.d. draws, filled in row-major order.
Mat SampleMatrix(const ScalarDistribution& dist, std::size_t rows,
                 std::size_t cols, SeededRng& rng);
Vec SampleVector(const ScalarDistribution& dist, std::size_t n, SeededRng& rng);

// splitmix64 finalizer; exposed for seed derivation in the harnesses.
std::uint64_t MixSeed(std::uint64_t x);
std::uint64_t HashLabel(std::string_view label);

}  // namespace rfflab

#endif  // RFFLAB_RANDOM_H_
