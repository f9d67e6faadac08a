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

#ifndef RFFLAB_MLP_H_
#define RFFLAB_MLP_H_

#include <string>
#include <string_view>
#include <vector>

#include "rfflab/matrix.h"
#include "rfflab/random.h"

namespace rfflab {

// Positively 1-homogeneous, 1-Lipschitz activations. The derivative at 0 is
// the negative-side slope (0 for ReLU).
struct Activation {
  enum class Kind { kReLU, kLeakyReLU, kIdentity };
  Kind kind = Kind::kReLU;
  double slope = 0.0;  // negative-side slope for LeakyReLU

  static Activation ReLU() { return {Kind::kReLU, 0.0}; }
  static Activation LeakyReLU(double slope) { return {Kind::kLeakyReLU, slope}; }
  static Activation Identity() { return {Kind::kIdentity, 1.0}; }

  double Apply(double z) const {
    switch (kind) {
      case Kind::kReLU:
        return z > 0.0 ? z : 0.0;
      case Kind::kLeakyReLU:
        return z > 0.0 ? z : slope * z;
      case Kind::kIdentity:
        return z;
    }
    return z;
  }
  double Derivative(double z) const {
    switch (kind) {
      case Kind::kReLU:
        return z > 0.0 ? 1.0 : 0.0;
      case Kind::kLeakyReLU:
        return z > 0.0 ? 1.0 : slope;
      case Kind::kIdentity:
        return 1.0;
    }
    return 1.0;
  }

  friend bool operator==(const Activation&, const Activation&) = default;
};

std::string ToString(const Activation& a);
// "relu", "identity", "leaky_relu" (slope 0.01) or "leaky_relu:0.5".
Activation ParseActivation(std::string_view name);

// Multi-layer perceptron h^{k+1} = act_k(W_k h^k (+ b_k)), h^0 = x, f = h^m.
//
// Weights W_k are d_{k+1} x d_k. Biases are off unless requested; every
// homogeneity and kernel-bound check in this library assumes a bias-free net.
class Mlp {
 public:
  // W_k entries ~ N(0, init_scale^2 / d_k). Hidden layers use `hidden`, the
  // output layer uses Identity.
  static Mlp Init(const std::vector<std::size_t>& layer_dims, Activation hidden,
                  double init_scale, SeededRng rng, bool with_bias = false);
  static Mlp FromWeights(std::vector<Mat> weights,
                         std::vector<Activation> activations,
                         std::vector<Vec> biases = {});

  std::size_t num_layers() const { return weights_.size(); }
  const std::vector<std::size_t>& layer_dims() const { return dims_; }
  std::size_t input_dim() const { return dims_.front(); }
  std::size_t output_dim() const { return dims_.back(); }
  bool has_bias() const { return !biases_.empty(); }
  std::size_t ParameterCount() const;

  const Mat& weight(std::size_t k) const { return weights_[k]; }
  Mat& mutable_weight(std::size_t k) { return weights_[k]; }
  const std::vector<Mat>& weights() const { return weights_; }
  const Vec& bias(std::size_t k) const { return biases_[k]; }
  Vec& mutable_bias(std::size_t k) { return biases_[k]; }
  const Activation& activation(std::size_t k) const { return activations_[k]; }
  const std::vector<Activation>& activations() const { return activations_; }

  friend bool operator==(const Mlp&, const Mlp&) = default;

 private:
  Mlp() = default;
  void Validate() const;

  std::vector<std::size_t> dims_;
  std::vector<Mat> weights_;
  std::vector<Vec> biases_;
  std::vector<Activation> activations_;
};

// Every layer of one forward pass. post[k] = h^k for k = 0..m; pre[k] is the
// pre-activation W_{k-1} h^{k-1} for k = 1..m (pre[0] is empty).
struct ForwardTrace {
  std::vector<Vec> pre;
  std::vector<Vec> post;

  const Vec& output() const { return post.back(); }
  double scalar_output() const;
};

// Throws NumericError carrying the layer index if any activation is non-finite.
ForwardTrace Forward(const Mlp& net, std::span<const double> x);
double Evaluate(const Mlp& net, std::span<const double> x);

// Reverse-mode gradients of one output for one input.
struct GradientBundle {
  std::vector<Mat> weight_grads;  // df/dW_k, same shape as W_k
  std::vector<Vec> bias_grads;    // empty for bias-free nets
  std::vector<Vec> hidden_grads;  // grad w.r.t. h^k (post-activation), k = 0..m
  std::vector<Vec> preact_grads;  // grad w.r.t. pre[k], k = 1..m; [0] empty

  // Flattened parameter gradient. Blocks are ordered W_{m-1}, ..., W_1, W_0,
  // each row-major, followed by bias blocks in the same layer order if present.
  Vec Flatten() const;
};

// Gradient of output component `output_index`.
GradientBundle Backward(const Mlp& net, const ForwardTrace& trace,
                        std::size_t output_index = 0);

// Batched forward pass over the rows of x (n x d_0). Rows of post[k] are h^k.
struct BatchTrace {
  std::vector<Mat> pre;
  std::vector<Mat> post;
  const Mat& output() const { return post.back(); }
};

BatchTrace ForwardBatch(const Mlp& net, const Mat& x);
Mat PredictBatch(const Mlp& net, const Mat& x);

struct ParameterGrads {
  std::vector<Mat> weights;
  std::vector<Vec> biases;
  double SquaredNorm() const;
};

// Sum over rows of output_grads(r, :)^T d f(x_r) / d theta, i.e. the gradient
// of sum_r <output_grads_r, f(x_r)>.
ParameterGrads BackwardBatch(const Mlp& net, const BatchTrace& trace,
                             const Mat& output_grads);

}  // namespace rfflab

#endif  // RFFLAB_MLP_H_
