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

#include <algorithm>
#include <cmath>
#include <string>

#include "rfflab/errors.h"
#include "rfflab/sym_eigen.h"

namespace rfflab {
namespace {

void RequireScalarOutput(const Mlp& net, const char* who) {
  Require(net.output_dim() == 1,
          std::string(who) + ": tangent kernel needs a scalar-output net");
}

double BlockDot(const Mat& a, const Mat& b) { return Dot(a.values(), b.values()); }

}  // namespace

Vec ParameterGradient(const Mlp& net, std::span<const double> x) {
  RequireScalarOutput(net, "ParameterGradient");
  return Backward(net, Forward(net, x)).Flatten();
}

double NtkValue(const Mlp& net, std::span<const double> x,
                std::span<const double> x_prime) {
  return Dot(ParameterGradient(net, x), ParameterGradient(net, x_prime));
}

BoundCertificates ComputeBounds(const Mlp& net, const RffMap* map) {
  const std::size_t m = net.num_layers();
  BoundCertificates b;
  for (std::size_t k = 0; k < m; ++k)
    b.spectral_norms.push_back(SpectralNorm(net.weight(k), 1000, 1e-13));
  b.forward_prefix.assign(m + 1, 1.0);
  for (std::size_t k = 1; k <= m; ++k)
    b.forward_prefix[k] = b.forward_prefix[k - 1] * b.spectral_norms[k - 1];
  b.backward_suffix.assign(m + 1, 1.0);
  for (std::size_t k = m; k-- > 0;)
    b.backward_suffix[k] = b.backward_suffix[k + 1] * b.spectral_norms[k];
  for (std::size_t k = 0; k < m; ++k)
    b.c1 += b.backward_suffix[k + 1] * b.forward_prefix[k];

  if (map != nullptr) {
    Require(map->feature_dim() == net.input_dim(),
            "ComputeBounds: map feature dim does not match net input dim");
    const double h1_bound = map->MaxFeatureNorm() * b.spectral_norms[0];
    double root = 0.0;
    double restarted_prefix = 1.0;  // S'_k
    for (std::size_t k = 1; k < m; ++k) {
      root += b.backward_suffix[k + 1] * restarted_prefix * h1_bound;
      restarted_prefix *= b.spectral_norms[k];
    }
    b.upper_block_bound = root * root;
  }
  return b;
}

LowerBoundWitness FindLowerBoundWitness(const Mlp& net, std::size_t probes,
                                        SeededRng rng) {
  RequireScalarOutput(net, "FindLowerBoundWitness");
  Require(probes >= 1, "FindLowerBoundWitness: need at least one probe");
  LowerBoundWitness best;
  for (std::size_t p = 0; p < probes; ++p) {
    Vec x = SampleVector(ScalarDistribution::StdNormal(), net.input_dim(), rng);
    const GradientBundle g = Backward(net, Forward(net, x));
    const double norm = Norm2(g.preact_grads[1]);
    if (p == 0 || norm > best.first_layer_grad_norm) {
      best.first_layer_grad_norm = norm;
      best.direction = std::move(x);
    }
  }
  best.c2 = best.first_layer_grad_norm * Norm2(best.direction);
  return best;
}

void AnalyzeSpectrum(KernelReport& report) {
  report.spectrum = SymEigenvalues(report.gram);
  report.min_eigenvalue = report.spectrum.empty() ? 0.0 : report.spectrum.back();
  report.numerical_rank = 0;
  double smallest_above_floor = 0.0;
  for (double v : report.spectrum) {
    if (v > kEigenFloor) {
      ++report.numerical_rank;
      smallest_above_floor = v;
    }
  }
  report.condition_number = report.numerical_rank == 0
                                ? 0.0
                                : report.spectrum.front() / smallest_above_floor;
}

KernelReport NtkGram(const Mlp& net, const Mat& x) {
  RequireScalarOutput(net, "NtkGram");
  Require(x.rows() >= 2, "NtkGram: need at least two rows");
  const std::size_t n = x.rows();
  std::vector<Vec> grads(n);
  for (std::size_t i = 0; i < n; ++i) grads[i] = ParameterGradient(net, x.row(i));
  KernelReport report;
  report.gram = Mat(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double v = Dot(grads[i], grads[j]);
      report.gram(i, j) = v;
      report.gram(j, i) = v;
    }
  report.bounds = ComputeBounds(net);
  AnalyzeSpectrum(report);
  return report;
}

KernelReport NtkGram(const Mlp& net, const RffMap& map, const Mat& x) {
  RequireScalarOutput(net, "NtkGram");
  Require(x.rows() >= 2, "NtkGram: need at least two rows");
  Require(map.feature_dim() == net.input_dim(),
          "NtkGram: map feature dim does not match net input dim");
  const std::size_t n = x.rows();
  std::vector<GradientBundle> bundles;
  bundles.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    bundles.push_back(Backward(net, Forward(net, map.Transform(x.row(i)))));

  KernelReport report;
  report.gram = Mat(n, n);
  Mat gamma(n, n), m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double upper = 0.0;
      for (std::size_t k = 1; k < net.num_layers(); ++k)
        upper += BlockDot(bundles[i].weight_grads[k], bundles[j].weight_grads[k]);
      const double first =
          BlockDot(bundles[i].weight_grads[0], bundles[j].weight_grads[0]);
      gamma(i, j) = gamma(j, i) = upper;
      m(i, j) = m(j, i) = first;
      report.gram(i, j) = report.gram(j, i) = upper + first;
    }
  report.gamma = std::move(gamma);
  report.m = std::move(m);
  report.bounds = ComputeBounds(net, &map);
  AnalyzeSpectrum(report);
  return report;
}

double ExpectedFeatureKernel(const RffMap& map, std::span<const double> delta) {
  SpectralFamily normalized = map.family();
  normalized.normalized_cauchy = true;
  const double s = map.scale();
  const double d = static_cast<double>(map.num_frequencies());
  const double factor =
      map.variant() == FeatureVariant::kSinCos ? s * s * d : 0.5 * s * s * d;
  return factor * AnalyticKernel(normalized, delta);
}

KernelDecomposition NtkDecompose(const Mlp& net, const RffMap& map,
                                 std::span<const double> x,
                                 std::span<const double> x_prime) {
  RequireScalarOutput(net, "NtkDecompose");
  Require(map.feature_dim() == net.input_dim(),
          "NtkDecompose: map feature dim " + std::to_string(map.feature_dim()) +
              " does not match net input dim " + std::to_string(net.input_dim()));
  Require(x.size() == map.input_dim() && x_prime.size() == map.input_dim(),
          "NtkDecompose: inputs must have the map's input dimension");

  const Vec phi = map.Transform(x);
  const Vec phi_prime = map.Transform(x_prime);
  const GradientBundle g = Backward(net, Forward(net, phi));
  const GradientBundle gp = Backward(net, Forward(net, phi_prime));

  KernelDecomposition out;
  for (std::size_t k = 1; k < net.num_layers(); ++k) {
    out.gamma += BlockDot(g.weight_grads[k], gp.weight_grads[k]);
    out.upper_block_sq_norm_x += BlockDot(g.weight_grads[k], g.weight_grads[k]);
    out.upper_block_sq_norm_x_prime += BlockDot(gp.weight_grads[k], gp.weight_grads[k]);
  }
  out.m = BlockDot(g.weight_grads[0], gp.weight_grads[0]);
  out.total = Dot(g.Flatten(), gp.Flatten());
  out.first_layer_factor = Dot(g.preact_grads[1], gp.preact_grads[1]);
  out.feature_kernel = Dot(phi, phi_prime);

  Vec delta(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) delta[i] = x[i] - x_prime[i];
  out.m_shift_invariant = out.first_layer_factor * ExpectedFeatureKernel(map, delta);
  return out;
}

}  // namespace rfflab
