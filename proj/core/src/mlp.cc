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

#include "rfflab/mlp.h"

#include <cmath>
#include <cstdlib>
#include <string>

#include "rfflab/errors.h"

namespace rfflab {

std::string ToString(const Activation& a) {
  switch (a.kind) {
    case Activation::Kind::kReLU:
      return "relu";
    case Activation::Kind::kIdentity:
      return "identity";
    case Activation::Kind::kLeakyReLU: {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "leaky_relu:%.17g", a.slope);
      return buf;
    }
  }
  return "?";
}

Activation ParseActivation(std::string_view name) {
  if (name == "relu") return Activation::ReLU();
  if (name == "identity") return Activation::Identity();
  if (name == "leaky_relu") return Activation::LeakyReLU(0.01);
  constexpr std::string_view kLeaky = "leaky_relu:";
  if (name.substr(0, kLeaky.size()) == kLeaky) {
    const std::string slope_text(name.substr(kLeaky.size()));
    char* end = nullptr;
    const double slope = std::strtod(slope_text.c_str(), &end);
    Require(end != slope_text.c_str() && *end == '\0' && slope >= 0.0 &&
                slope <= 1.0,
            "leaky_relu slope must be a number in [0, 1], got '" + slope_text + "'");
    return Activation::LeakyReLU(slope);
  }
  throw ContractError("unknown activation '" + std::string(name) +
                      "' (valid: relu, identity, leaky_relu[:slope])");
}

Mlp Mlp::Init(const std::vector<std::size_t>& layer_dims, Activation hidden,
              double init_scale, SeededRng rng, bool with_bias) {
  Require(layer_dims.size() >= 2, "Mlp::Init: need at least input and output dims");
  for (std::size_t d : layer_dims) Require(d >= 1, "Mlp::Init: layer dims must be >= 1");
  Mlp net;
  net.dims_ = layer_dims;
  const std::size_t m = layer_dims.size() - 1;
  for (std::size_t k = 0; k < m; ++k) {
    SeededRng layer_rng = rng.Fork("W" + std::to_string(k));
    Mat w = SampleMatrix(ScalarDistribution::StdNormal(), layer_dims[k + 1],
                         layer_dims[k], layer_rng);
    w *= init_scale / std::sqrt(static_cast<double>(layer_dims[k]));
    net.weights_.push_back(std::move(w));
    net.activations_.push_back(k + 1 == m ? Activation::Identity() : hidden);
    if (with_bias) net.biases_.emplace_back(layer_dims[k + 1], 0.0);
  }
  return net;
}

Mlp Mlp::FromWeights(std::vector<Mat> weights, std::vector<Activation> activations,
                     std::vector<Vec> biases) {
  Require(!weights.empty(), "Mlp::FromWeights: no layers");
  Mlp net;
  net.dims_.push_back(weights.front().cols());
  for (const Mat& w : weights) net.dims_.push_back(w.rows());
  net.weights_ = std::move(weights);
  net.activations_ = std::move(activations);
  net.biases_ = std::move(biases);
  net.Validate();
  return net;
}

void Mlp::Validate() const {
  Require(activations_.size() == weights_.size(),
          "Mlp: one activation per layer required");
  Require(biases_.empty() || biases_.size() == weights_.size(),
          "Mlp: biases must be absent or one per layer");
  for (std::size_t k = 0; k < weights_.size(); ++k) {
    Require(weights_[k].cols() == dims_[k] && weights_[k].rows() == dims_[k + 1],
            "Mlp: weight shapes do not chain at layer " + std::to_string(k));
    if (!biases_.empty())
      Require(biases_[k].size() == dims_[k + 1],
              "Mlp: bias length mismatch at layer " + std::to_string(k));
  }
}

std::size_t Mlp::ParameterCount() const {
  std::size_t n = 0;
  for (const Mat& w : weights_) n += w.size();
  for (const Vec& b : biases_) n += b.size();
  return n;
}

double ForwardTrace::scalar_output() const {
  Require(output().size() == 1, "scalar_output: net output is not scalar");
  return output()[0];
}

ForwardTrace Forward(const Mlp& net, std::span<const double> x) {
  Require(x.size() == net.input_dim(),
          "Forward: input has length " + std::to_string(x.size()) +
              ", net expects " + std::to_string(net.input_dim()));
  const std::size_t m = net.num_layers();
  ForwardTrace trace;
  trace.pre.resize(m + 1);
  trace.post.resize(m + 1);
  trace.post[0].assign(x.begin(), x.end());
  for (std::size_t k = 0; k < m; ++k) {
    Vec z = MatVec(net.weight(k), trace.post[k]);
    if (net.has_bias())
      for (std::size_t i = 0; i < z.size(); ++i) z[i] += net.bias(k)[i];
    Vec h(z.size());
    const Activation& act = net.activation(k);
    for (std::size_t i = 0; i < z.size(); ++i) {
      h[i] = act.Apply(z[i]);
      if (!std::isfinite(h[i]))
        throw NumericError("Forward: non-finite activation at layer " +
                               std::to_string(k + 1),
                           static_cast<long>(k + 1));
    }
    trace.pre[k + 1] = std::move(z);
    trace.post[k + 1] = std::move(h);
  }
  return trace;
}

double Evaluate(const Mlp& net, std::span<const double> x) {
  return Forward(net, x).scalar_output();
}

GradientBundle Backward(const Mlp& net, const ForwardTrace& trace,
                        std::size_t output_index) {
  const std::size_t m = net.num_layers();
  Require(trace.post.size() == m + 1 && trace.pre.size() == m + 1,
          "Backward: trace does not match net depth");
  for (std::size_t k = 0; k <= m; ++k)
    Require(trace.post[k].size() == net.layer_dims()[k],
            "Backward: trace shape mismatch at layer " + std::to_string(k));
  Require(output_index < net.output_dim(), "Backward: output index out of range");

  GradientBundle g;
  g.weight_grads.resize(m);
  g.hidden_grads.resize(m + 1);
  g.preact_grads.resize(m + 1);
  if (net.has_bias()) g.bias_grads.resize(m);

  g.hidden_grads[m].assign(net.output_dim(), 0.0);
  g.hidden_grads[m][output_index] = 1.0;
  for (std::size_t k = m; k-- > 0;) {
    const Vec& upstream = g.hidden_grads[k + 1];
    const Vec& z = trace.pre[k + 1];
    Vec delta(z.size());
    for (std::size_t i = 0; i < z.size(); ++i)
      delta[i] = upstream[i] * net.activation(k).Derivative(z[i]);
    const Vec& h = trace.post[k];
    Mat dw(delta.size(), h.size());
    for (std::size_t i = 0; i < delta.size(); ++i)
      for (std::size_t j = 0; j < h.size(); ++j) dw(i, j) = delta[i] * h[j];
    g.weight_grads[k] = std::move(dw);
    if (net.has_bias()) g.bias_grads[k] = delta;
    g.hidden_grads[k] = MatTVec(net.weight(k), delta);
    g.preact_grads[k + 1] = std::move(delta);
  }
  return g;
}

Vec GradientBundle::Flatten() const {
  Vec flat;
  std::size_t total = 0;
  for (const Mat& w : weight_grads) total += w.size();
  for (const Vec& b : bias_grads) total += b.size();
  flat.reserve(total);
  for (std::size_t k = weight_grads.size(); k-- > 0;)
    flat.insert(flat.end(), weight_grads[k].values().begin(),
                weight_grads[k].values().end());
  for (std::size_t k = bias_grads.size(); k-- > 0;)
    flat.insert(flat.end(), bias_grads[k].begin(), bias_grads[k].end());
  return flat;
}

BatchTrace ForwardBatch(const Mlp& net, const Mat& x) {
  Require(x.cols() == net.input_dim(),
          "ForwardBatch: input has " + std::to_string(x.cols()) +
              " columns, net expects " + std::to_string(net.input_dim()));
  const std::size_t m = net.num_layers();
  BatchTrace trace;
  trace.pre.resize(m + 1);
  trace.post.resize(m + 1);
  trace.post[0] = x;
  for (std::size_t k = 0; k < m; ++k) {
    Mat z = MatMulTransB(trace.post[k], net.weight(k));
    if (net.has_bias()) {
      const Vec& b = net.bias(k);
      for (std::size_t r = 0; r < z.rows(); ++r) {
        auto row = z.row(r);
        for (std::size_t i = 0; i < row.size(); ++i) row[i] += b[i];
      }
    }
    Mat h(z.rows(), z.cols());
    const Activation& act = net.activation(k);
    for (std::size_t i = 0; i < z.size(); ++i) {
      h.data()[i] = act.Apply(z.data()[i]);
      if (!std::isfinite(h.data()[i]))
        throw NumericError("ForwardBatch: non-finite activation at layer " +
                               std::to_string(k + 1),
                           static_cast<long>(k + 1));
    }
    trace.pre[k + 1] = std::move(z);
    trace.post[k + 1] = std::move(h);
  }
  return trace;
}

Mat PredictBatch(const Mlp& net, const Mat& x) {
  return std::move(ForwardBatch(net, x).post.back());
}

double ParameterGrads::SquaredNorm() const {
  double s = 0.0;
  for (const Mat& w : weights) s += Dot(w.values(), w.values());
  for (const Vec& b : biases) s += Dot(b, b);
  return s;
}

ParameterGrads BackwardBatch(const Mlp& net, const BatchTrace& trace,
                             const Mat& output_grads) {
  const std::size_t m = net.num_layers();
  Require(trace.post.size() == m + 1, "BackwardBatch: trace depth mismatch");
  Require(output_grads.rows() == trace.output().rows() &&
              output_grads.cols() == net.output_dim(),
          "BackwardBatch: output gradient shape mismatch");
  ParameterGrads grads;
  grads.weights.resize(m);
  if (net.has_bias()) grads.biases.resize(m);

  Mat upstream = output_grads;
  for (std::size_t k = m; k-- > 0;) {
    const Mat& z = trace.pre[k + 1];
    Mat delta(z.rows(), z.cols());
    const Activation& act = net.activation(k);
    for (std::size_t i = 0; i < z.size(); ++i)
      delta.data()[i] = upstream.data()[i] * act.Derivative(z.data()[i]);
    grads.weights[k] = MatMulTransA(delta, trace.post[k]);
    if (net.has_bias()) {
      Vec db(delta.cols(), 0.0);
      for (std::size_t r = 0; r < delta.rows(); ++r) {
        auto row = delta.row(r);
        for (std::size_t i = 0; i < row.size(); ++i) db[i] += row[i];
      }
      grads.biases[k] = std::move(db);
    }
    if (k > 0) upstream = MatMul(delta, net.weight(k));
  }
  return grads;
}

}  // namespace rfflab
