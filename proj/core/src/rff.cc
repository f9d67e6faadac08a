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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "rfflab/errors.h"

namespace rfflab {

std::string_view ToString(SpectralKind kind) {
  switch (kind) {
    case SpectralKind::kGaussian:
      return "gaussian";
    case SpectralKind::kLaplacian:
      return "laplacian";
    case SpectralKind::kCauchy:
      return "cauchy";
  }
  return "?";
}

SpectralKind ParseSpectralKind(std::string_view name) {
  if (name == "gaussian") return SpectralKind::kGaussian;
  if (name == "laplacian") return SpectralKind::kLaplacian;
  if (name == "cauchy") return SpectralKind::kCauchy;
  throw ContractError("unknown kernel family '" + std::string(name) +
                      "' (valid: gaussian, laplacian, cauchy)");
}

ScalarDistribution FrequencyDistribution(SpectralKind kind) {
  switch (kind) {
    case SpectralKind::kGaussian:
      return ScalarDistribution::StdNormal();
    case SpectralKind::kLaplacian:
      return ScalarDistribution::StdCauchy();
    case SpectralKind::kCauchy:
      return ScalarDistribution::StdLaplace();
  }
  return ScalarDistribution::StdNormal();
}

std::string_view ToString(FeatureVariant v) {
  return v == FeatureVariant::kSinCos ? "sincos" : "cos_offset";
}

std::string_view ToString(FeatureScaling s) {
  return s == FeatureScaling::kStandard ? "standard" : "unbiased";
}

FeatureVariant ParseFeatureVariant(std::string_view name) {
  if (name == "sincos") return FeatureVariant::kSinCos;
  if (name == "cos_offset") return FeatureVariant::kCosOffset;
  throw ContractError("unknown feature variant '" + std::string(name) +
                      "' (valid: sincos, cos_offset)");
}

FeatureScaling ParseFeatureScaling(std::string_view name) {
  if (name == "standard") return FeatureScaling::kStandard;
  if (name == "unbiased") return FeatureScaling::kUnbiased;
  throw ContractError("unknown feature scaling '" + std::string(name) +
                      "' (valid: standard, unbiased)");
}

RffMap RffMap::Build(const SpectralFamily& family, std::size_t input_dim,
                     std::size_t num_frequencies, FeatureVariant variant,
                     FeatureScaling scaling, SeededRng rng) {
  Require(input_dim >= 1 && num_frequencies >= 1,
          "RffMap: input_dim and num_frequencies must be >= 1");
  Require(family.bandwidth > 0.0 && std::isfinite(family.bandwidth),
          "RffMap: bandwidth must be positive, got " +
              std::to_string(family.bandwidth));
  RffMap map;
  map.family_ = family;
  map.variant_ = variant;
  map.scaling_ = scaling;
  map.seed_ = rng.seed();
  SeededRng omega_rng = rng.Fork("omega");
  map.omega_ = SampleMatrix(FrequencyDistribution(family.kind), input_dim,
                            num_frequencies, omega_rng);
  if (variant == FeatureVariant::kCosOffset) {
    SeededRng offset_rng = rng.Fork("offset");
    map.offsets_ =
        SampleVector(ScalarDistribution::Uniform(0.0, 2.0 * std::numbers::pi),
                     num_frequencies, offset_rng);
  }
  return map;
}

RffMap RffMap::FromParts(const SpectralFamily& family, FeatureVariant variant,
                         FeatureScaling scaling, std::uint64_t seed, Mat omega,
                         Vec offsets) {
  Require(family.bandwidth > 0.0, "RffMap: bandwidth must be positive");
  Require(omega.rows() >= 1 && omega.cols() >= 1, "RffMap: empty omega");
  Require(variant == FeatureVariant::kSinCos || offsets.size() == omega.cols(),
          "RffMap: cos_offset variant needs one offset per frequency");
  RffMap map;
  map.family_ = family;
  map.variant_ = variant;
  map.scaling_ = scaling;
  map.seed_ = seed;
  map.omega_ = std::move(omega);
  if (variant == FeatureVariant::kCosOffset) map.offsets_ = std::move(offsets);
  return map;
}

std::size_t RffMap::feature_dim() const {
  return variant_ == FeatureVariant::kSinCos ? 2 * num_frequencies()
                                             : num_frequencies();
}

double RffMap::scale() const {
  const double d = static_cast<double>(num_frequencies());
  const bool sincos = variant_ == FeatureVariant::kSinCos;
  const bool standard = scaling_ == FeatureScaling::kStandard;
  if (sincos) return standard ? std::sqrt(2.0 / d) : std::sqrt(1.0 / d);
  return standard ? 1.0 / std::sqrt(d) : std::sqrt(2.0 / d);
}

double RffMap::MaxFeatureNorm() const {
  return scale() * std::sqrt(static_cast<double>(num_frequencies()));
}

Vec RffMap::Project(std::span<const double> x) const {
  Require(x.size() == input_dim(),
          "RffMap::Transform: input has length " + std::to_string(x.size()) +
              ", map expects " + std::to_string(input_dim()));
  Vec p = MatTVec(omega_, x);
  for (double& v : p) v /= family_.bandwidth;
  return p;
}

Vec RffMap::Transform(std::span<const double> x) const {
  const Vec p = Project(x);
  const std::size_t big_d = num_frequencies();
  const double s = scale();
  Vec out(feature_dim());
  if (variant_ == FeatureVariant::kSinCos) {
    for (std::size_t i = 0; i < big_d; ++i) {
      out[i] = s * std::sin(p[i]);
      out[big_d + i] = s * std::cos(p[i]);
    }
  } else {
    for (std::size_t i = 0; i < big_d; ++i)
      out[i] = s * std::cos(p[i] + offsets_[i]);
  }
  return out;
}

Mat RffMap::TransformRows(const Mat& x) const {
  Require(x.cols() == input_dim(),
          "RffMap::TransformRows: input has " + std::to_string(x.cols()) +
              " columns, map expects " + std::to_string(input_dim()));
  Mat out(x.rows(), feature_dim());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const Vec phi = Transform(x.row(r));
    std::copy(phi.begin(), phi.end(), out.row(r).begin());
  }
  return out;
}

double AnalyticKernel(const SpectralFamily& family, std::span<const double> delta) {
  const double sigma = family.bandwidth;
  switch (family.kind) {
    case SpectralKind::kGaussian: {
      double sq = 0.0;
      for (double v : delta) sq += (v / sigma) * (v / sigma);
      return std::exp(-0.5 * sq);
    }
    case SpectralKind::kLaplacian: {
      double l1 = 0.0;
      for (double v : delta) l1 += std::abs(v / sigma);
      return std::exp(-l1);
    }
    case SpectralKind::kCauchy: {
      double k = 1.0;
      for (double v : delta) {
        const double u = v / sigma;
        k *= 2.0 / (1.0 + u * u);
      }
      if (family.normalized_cauchy) k /= std::pow(2.0, static_cast<double>(delta.size()));
      return k;
    }
  }
  return 0.0;
}

double EmpiricalKernel(const RffMap& map, std::span<const double> x,
                       std::span<const double> y) {
  return Dot(map.Transform(x), map.Transform(y));
}

double SinCosKernelFromDifference(const RffMap& map, std::span<const double> delta) {
  Require(map.variant() == FeatureVariant::kSinCos,
          "SinCosKernelFromDifference: sin/cos variant only");
  const Vec p = MatTVec(map.omega(), delta);
  double acc = 0.0;
  for (double v : p) acc += std::cos(v / map.family().bandwidth);
  const double s = map.scale();
  return s * s * acc;
}

double LinearSlope(std::span<const double> x, std::span<const double> y) {
  Require(x.size() == y.size() && x.size() >= 2,
          "LinearSlope: need at least two paired points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  Require(sxx > 0.0, "LinearSlope: x values are all equal");
  return sxy / sxx;
}

McErrorCurve MonteCarloErrorCurve(const SpectralFamily& family,
                                  std::size_t input_dim, std::size_t pair_count,
                                  const std::vector<std::size_t>& frequency_counts,
                                  SeededRng rng, const McPairOptions& options) {
  Require(!frequency_counts.empty(), "MonteCarloErrorCurve: empty D list");
  Require(std::is_sorted(frequency_counts.begin(), frequency_counts.end()),
          "MonteCarloErrorCurve: D list must be ascending");
  Require(pair_count >= 1, "MonteCarloErrorCurve: pair_count must be >= 1");

  // One fixed set of probe pairs, reused across D.
  SeededRng pair_rng = rng.Fork("pairs");
  std::vector<Vec> xs(pair_count), ys(pair_count);
  for (std::size_t p = 0; p < pair_count; ++p) {
    xs[p] = SampleVector(ScalarDistribution::StdNormal(), input_dim, pair_rng);
    Vec dir = SampleVector(ScalarDistribution::StdNormal(), input_dim, pair_rng);
    const double nd = Norm2(dir);
    ys[p] = xs[p];
    if (nd > 0.0) {
      for (std::size_t j = 0; j < input_dim; ++j)
        ys[p][j] += options.pair_distance * dir[j] / nd;
    }
  }

  // The estimator targets the normalized kernel (k(0) = 1).
  SpectralFamily target = family;
  target.normalized_cauchy = true;

  McErrorCurve curve;
  std::vector<double> log_d, log_err;
  for (std::size_t big_d : frequency_counts) {
    const RffMap map =
        RffMap::Build(family, input_dim, big_d, options.variant, options.scaling,
                      rng.Fork("map/D=" + std::to_string(big_d)));
    McErrorRow row;
    row.num_frequencies = big_d;
    for (std::size_t p = 0; p < pair_count; ++p) {
      Vec delta(input_dim);
      for (std::size_t j = 0; j < input_dim; ++j) delta[j] = xs[p][j] - ys[p][j];
      const double err =
          std::abs(EmpiricalKernel(map, xs[p], ys[p]) - AnalyticKernel(target, delta));
      row.mean_abs_error += err;
      row.max_abs_error = std::max(row.max_abs_error, err);
    }
    row.mean_abs_error /= static_cast<double>(pair_count);
    curve.rows.push_back(row);
    if (row.mean_abs_error > 0.0) {
      log_d.push_back(std::log(static_cast<double>(big_d)));
      log_err.push_back(std::log(row.mean_abs_error));
    }
  }
  curve.loglog_slope = log_d.size() >= 2 ? LinearSlope(log_d, log_err) : 0.0;
  return curve;
}

}  // namespace rfflab
