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

#ifndef RFFLAB_VERIFY_H_
#define RFFLAB_VERIFY_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace rfflab {

// Numeric property suites over randomized probes. Each suite counts its
// checks, keeps the first few violations verbatim (invariant plus the
// offending probe) and a handful of summary metrics.
struct SuiteReport {
  std::string suite;
  std::size_t checks = 0;
  std::size_t failure_count = 0;
  std::vector<std::string> failures;  // at most kMaxRecordedFailures
  std::vector<std::pair<std::string, double>> metrics;

  bool passed() const { return failure_count == 0; }
  double metric(const std::string& name) const;
};

inline constexpr std::size_t kMaxRecordedFailures = 8;

struct VerifyOptions {
  std::size_t trials = 0;  // 0: the suite's default
  std::uint64_t seed = 0;
};

// |phi(x)| = sqrt(2) under standard scaling, d in {1, 10, 100}, every family.
// Default 10000 probes.
SuiteReport VerifyNorm(const VerifyOptions& opts);
// Gaussian, d = 5, unbiased sin/cos, D = 4096: |k_hat - k| <= 0.05 on at
// least 95% of random pairs (default 100), and log-log error slope over
// D in {16, ..., 4096} within -0.5 +- 0.2.
SuiteReport VerifyBochner(const VerifyOptions& opts);
// LeakyReLU(0.5) net [10, 32, 32, 1]: analytic parameter gradient against
// central differences, 1e-6 relative. Default 100 probes.
SuiteReport VerifyGradient(const VerifyOptions& opts);
// Bias-free ReLU nets: f(a x) = a f(x) and K(a x, a x') = a^2 K(x, x'),
// a in {0.5, 2, 10}, 1e-10 relative. Default 1000 probes.
SuiteReport VerifyHomogeneity(const VerifyOptions& opts);
// |grad f(x)| <= C1 |x|, |h^k| <= S_k |x|, |grad_{h^k} f| <= T_k over five
// architectures. Default 1000 probes per architecture.
SuiteReport VerifyBounds(const VerifyOptions& opts);
// |grad f(a x*)| >= C2 a at a in {2, 10, 100} over five architectures.
// Default 1000 witness candidates per architecture.
SuiteReport VerifyLowerBound(const VerifyOptions& opts);
// RFF net: gamma + m = K to 1e-12 relative and |gamma| <= B, with inputs of
// norm 1 to 1e4. Default 200 pairs.
SuiteReport VerifyDecomposition(const VerifyOptions& opts);
// Telescoping reconstruction: exact (1e-9) for a parameter-linear model;
// for a 2-layer ReLU net the error at (lr/2, 2T) is at least 1.6x smaller
// than at (lr, T). `trials` sets the number of evaluation points (default 8).
SuiteReport VerifyTelescope(const VerifyOptions& opts);

// "norm", "bochner", "gradient", "homogeneity", "bounds", "lower-bound",
// "decomposition", "telescope".
const std::vector<std::string>& SuiteNames();
// Throws ContractError for an unknown name, listing the valid ones.
SuiteReport RunSuite(const std::string& name, const VerifyOptions& opts);

}  // namespace rfflab

#endif  // RFFLAB_VERIFY_H_
