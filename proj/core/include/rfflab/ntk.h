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

#ifndef RFFLAB_NTK_H_
#define RFFLAB_NTK_H_

#include <optional>
#include <span>
#include <vector>

#include "rfflab/matrix.h"
#include "rfflab/mlp.h"
#include "rfflab/rff.h"

namespace rfflab {

// grad_theta f(x), flattened in GradientBundle order. Scalar-output nets only.
Vec ParameterGradient(const Mlp& net, std::span<const double> x);

// Empirical tangent kernel grad f(x)^T grad f(x').
double NtkValue(const Mlp& net, std::span<const double> x,
                std::span<const double> x_prime);

// Layer-norm products bounding hidden activations and hidden gradients:
//   S_k = prod_{i<k} |W_i|_2   (S_0 = 1)
//   T_k = prod_{i>=k} |W_i|_2  (T_m = 1)
//   C1  = sum_{k<m} T_{k+1} S_k, so that |grad_theta f(x)| <= C1 |x|.
// With a feature map in front of the net, `upper_block_bound` (B) bounds the
// squared gradient norm of every block except W_0, uniformly in x:
//   B = (sum_{k=1}^{m-1} T_{k+1} S'_k r |W_0|_2)^2,
// where S'_k = prod_{1<=i<k} |W_i|_2 and r = sup_x |phi(x)|.
struct BoundCertificates {
  std::vector<double> spectral_norms;  // |W_k|_2
  std::vector<double> forward_prefix;  // S_0..S_m
  std::vector<double> backward_suffix; // T_0..T_m
  double c1 = 0.0;
  std::optional<double> upper_block_bound;
};

BoundCertificates ComputeBounds(const Mlp& net, const RffMap* map = nullptr);

// Lower-bound witness: |grad_theta f(a x*)| >= c2 * a for a > 0, where
// c2 = |delta^1(x*)| |x*| and delta^1 is the gradient with respect to the
// first-layer pre-activation.
struct LowerBoundWitness {
  Vec direction;
  double first_layer_grad_norm = 0.0;
  double c2 = 0.0;
};

// Picks x* as the probe maximizing the first-layer gradient norm among
// `probes` standard-normal draws.
LowerBoundWitness FindLowerBoundWitness(const Mlp& net, std::size_t probes,
                                        SeededRng rng);

struct KernelReport {
  Mat gram;               // n x n
  Vec spectrum;           // eigenvalues, descending
  double min_eigenvalue = 0.0;
  double condition_number = 0.0;  // lambda_1 / smallest eigenvalue above floor
  std::size_t numerical_rank = 0;
  BoundCertificates bounds;
  // Per-pair split when the Gram was built on RFF inputs.
  std::optional<Mat> gamma;
  std::optional<Mat> m;
};

inline constexpr double kEigenFloor = 1e-12;

// Gram matrix of the tangent kernel over the rows of x (n >= 2), with its
// spectrum and pseudo condition number.
KernelReport NtkGram(const Mlp& net, const Mat& x);
// Same, for a net fed with map(x); also fills gamma and m.
KernelReport NtkGram(const Mlp& net, const RffMap& map, const Mat& x);

// Fills spectrum, min eigenvalue, rank and condition number from `gram`.
void AnalyzeSpectrum(KernelReport& report);

// Exact split of the RFF-net kernel K(x, x') = gamma + m:
//   gamma  inner product of the W_1..W_{m-1} gradient blocks,
//   m      inner product of the W_0 blocks = <delta1(x), delta1(x')> phi(x)^T phi(x').
struct KernelDecomposition {
  double gamma = 0.0;
  double m = 0.0;
  double total = 0.0;               // K(x, x') from the full flattened gradients
  double first_layer_factor = 0.0;  // <delta1(x), delta1(x')>
  double feature_kernel = 0.0;      // phi(x)^T phi(x')
  // <delta1(x), delta1(x')> times E_omega[phi(x)^T phi(x')]; the gap to `m`
  // is the Monte-Carlo error of the feature kernel.
  double m_shift_invariant = 0.0;
  double upper_block_sq_norm_x = 0.0;        // |grad_psi g(h^1(x))|^2
  double upper_block_sq_norm_x_prime = 0.0;
};

KernelDecomposition NtkDecompose(const Mlp& net, const RffMap& map,
                                 std::span<const double> x,
                                 std::span<const double> x_prime);

// E_omega[phi(x)^T phi(y)] for the map's variant and scaling.
double ExpectedFeatureKernel(const RffMap& map, std::span<const double> delta);

}  // namespace rfflab

#endif  // RFFLAB_NTK_H_
