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

#ifndef RFFLAB_RFF_H_
#define RFFLAB_RFF_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rfflab/matrix.h"
#include "rfflab/random.h"

namespace rfflab {

// Matched (kernel, spectral density) pairs:
//
//   Gaussian   k(D) = exp(-|D|_2^2 / 2)     <->  w ~ N(0, I)
//   Laplacian  k(D) = exp(-|D|_1)           <->  w_j ~ Cauchy(0, 1)
//   Cauchy     k(D) = prod_j 2 / (1 + D_j^2) <->  w_j ~ Laplace(0, 1)
//
// The Cauchy kernel is kept unnormalized (k(0) = 2^d) unless
// `normalized_cauchy` is set, in which case it is divided by 2^d and becomes
// the characteristic function of the Laplace law.
enum class SpectralKind { kGaussian, kLaplacian, kCauchy };

struct SpectralFamily {
  SpectralKind kind = SpectralKind::kGaussian;
  double bandwidth = 1.0;  // sigma; frequencies are used as w / sigma
  bool normalized_cauchy = false;
};

std::string_view ToString(SpectralKind kind);
// Accepts "gaussian", "laplacian", "cauchy"; throws ContractError otherwise
// with the list of valid names.
SpectralKind ParseSpectralKind(std::string_view name);
ScalarDistribution FrequencyDistribution(SpectralKind kind);

enum class FeatureVariant {
  kSinCos,     // [sin(W^T x), cos(W^T x)], 2D features
  kCosOffset,  // cos(W^T x + b), b ~ U(0, 2 pi), D features
};

enum class FeatureScaling {
  kStandard,  // sqrt(2/D) for sin/cos, D^{-1/2} for cos+offset
  kUnbiased,  // E[phi(x)^T phi(y)] = k(x - y)
};

std::string_view ToString(FeatureVariant v);
std::string_view ToString(FeatureScaling s);
FeatureVariant ParseFeatureVariant(std::string_view name);
FeatureScaling ParseFeatureScaling(std::string_view name);

// Frozen random Fourier feature map. The frequency matrix and offsets are
// drawn once in Build() and never change afterwards.
class RffMap {
 public:
  static RffMap Build(const SpectralFamily& family, std::size_t input_dim,
                      std::size_t num_frequencies, FeatureVariant variant,
                      FeatureScaling scaling, SeededRng rng);
  // Reassemble a map from stored parts (used by the JSON sidecar loader).
  static RffMap FromParts(const SpectralFamily& family, FeatureVariant variant,
                          FeatureScaling scaling, std::uint64_t seed,
                          Mat omega, Vec offsets);

  std::size_t input_dim() const { return omega_.rows(); }
  std::size_t num_frequencies() const { return omega_.cols(); }
  std::size_t feature_dim() const;
  const SpectralFamily& family() const { return family_; }
  FeatureVariant variant() const { return variant_; }
  FeatureScaling scaling() const { return scaling_; }
  std::uint64_t seed() const { return seed_; }
  // Unit-bandwidth draws, d x D. The effective frequencies are omega / sigma.
  const Mat& omega() const { return omega_; }
  const Vec& offsets() const { return offsets_; }
  double scale() const;
  // sup_x |phi(x)|: sqrt(2) or 1 for sin/cos, an upper bound for cos+offset.
  double MaxFeatureNorm() const;

  Vec Transform(std::span<const double> x) const;
  // Row-wise transform of an n x d matrix into n x feature_dim().
  Mat TransformRows(const Mat& x) const;

 private:
  RffMap() = default;
  // W^T x / sigma, length D.
  Vec Project(std::span<const double> x) const;

  SpectralFamily family_;
  FeatureVariant variant_ = FeatureVariant::kSinCos;
  FeatureScaling scaling_ = FeatureScaling::kStandard;
  std::uint64_t seed_ = 0;
  Mat omega_;
  Vec offsets_;
};

// k(delta / sigma) for the family.
double AnalyticKernel(const SpectralFamily& family, std::span<const double> delta);

// phi(x)^T phi(y).
double EmpiricalKernel(const RffMap& map, std::span<const double> x,
                       std::span<const double> y);

// Closed form of phi(x)^T phi(y) for the sin/cos variant:
// scale^2 * D * mean_i cos(w_i^T (x - y) / sigma). Depends on x - y only.
double SinCosKernelFromDifference(const RffMap& map, std::span<const double> delta);

struct McErrorRow {
  std::size_t num_frequencies = 0;
  double mean_abs_error = 0.0;
  double max_abs_error = 0.0;
};

struct McErrorCurve {
  std::vector<McErrorRow> rows;
  // Least-squares slope of log(mean error) against log(D); about -1/2 when
  // the estimator converges at the Monte-Carlo rate.
  double loglog_slope = 0.0;
};

struct McPairOptions {
  double pair_distance = 1.0;  // |x - y|_2 of every probe pair
  FeatureVariant variant = FeatureVariant::kSinCos;
  FeatureScaling scaling = FeatureScaling::kUnbiased;
};

// Mean absolute kernel approximation error over `pair_count` random pairs,
// with a freshly drawn map per D. `frequency_counts` must be ascending.
McErrorCurve MonteCarloErrorCurve(const SpectralFamily& family,
                                  std::size_t input_dim, std::size_t pair_count,
                                  const std::vector<std::size_t>& frequency_counts,
                                  SeededRng rng, const McPairOptions& options = {});

// Least-squares slope of y against x.
double LinearSlope(std::span<const double> x, std::span<const double> y);

}  // namespace rfflab

#endif  // RFFLAB_RFF_H_
