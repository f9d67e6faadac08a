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

#include "rfflab/train.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "rfflab/errors.h"

namespace rfflab {
namespace {

std::vector<double> Softmax(std::span<const double> logits) {
  const double mx = *std::max_element(logits.begin(), logits.end());
  std::vector<double> p(logits.size());
  double z = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    p[i] = std::exp(logits[i] - mx);
    z += p[i];
  }
  for (double& v : p) v /= z;
  return p;
}

std::size_t ClassIndex(double label, std::size_t classes) {
  Require(label >= 0.0 && label == std::floor(label) &&
              label < static_cast<double>(classes),
          "cross-entropy target must be a class index below " +
              std::to_string(classes));
  return static_cast<std::size_t>(label);
}

void CheckShapes(const LossSpec& loss, const Mat& predictions, const Mat& targets) {
  Require(predictions.rows() == targets.rows(),
          "loss: prediction and target row counts differ");
  if (loss.kind == LossSpec::Kind::kMse) {
    Require(predictions.cols() == targets.cols(),
            "MSE: prediction and target widths differ");
  } else {
    Require(targets.cols() == 1, "cross-entropy: targets must be one column");
    Require(predictions.cols() >= 2, "cross-entropy: need at least two logits");
  }
}

}  // namespace

double EvaluateLoss(const LossSpec& loss, const Mat& predictions, const Mat& targets) {
  CheckShapes(loss, predictions, targets);
  if (predictions.rows() == 0) return 0.0;
  double total = 0.0;
  if (loss.kind == LossSpec::Kind::kMse) {
    for (std::size_t i = 0; i < predictions.size(); ++i) {
      const double r = predictions.data()[i] - targets.data()[i];
      total += r * r;
    }
    return total / static_cast<double>(predictions.size());
  }
  for (std::size_t r = 0; r < predictions.rows(); ++r) {
    const auto p = Softmax(predictions.row(r));
    const std::size_t c = ClassIndex(targets(r, 0), predictions.cols());
    total -= std::log(std::max(p[c], 1e-300));
  }
  return total / static_cast<double>(predictions.rows());
}

Mat LossGradients(const LossSpec& loss, const Mat& predictions, const Mat& targets) {
  CheckShapes(loss, predictions, targets);
  Mat g(predictions.rows(), predictions.cols());
  if (predictions.rows() == 0) return g;
  const double inv_b = 1.0 / static_cast<double>(predictions.rows());
  if (loss.kind == LossSpec::Kind::kMse) {
    for (std::size_t i = 0; i < g.size(); ++i)
      g.data()[i] = (predictions.data()[i] - targets.data()[i]) * inv_b;
    return g;
  }
  for (std::size_t r = 0; r < predictions.rows(); ++r) {
    const auto p = Softmax(predictions.row(r));
    const std::size_t c = ClassIndex(targets(r, 0), predictions.cols());
    for (std::size_t j = 0; j < p.size(); ++j)
      g(r, j) = (p[j] - (j == c ? 1.0 : 0.0)) * inv_b;
  }
  return g;
}

Mat GatherRows(const Mat& src, std::span<const std::size_t> rows) {
  Mat out(rows.size(), src.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Require(rows[i] < src.rows(), "GatherRows: row index out of range");
    std::copy(src.row(rows[i]).begin(), src.row(rows[i]).end(), out.row(i).begin());
  }
  return out;
}

HistoryPoint Measure(const Mlp& net, const Mat& x, const Mat& y,
                     const LossSpec& loss, bool with_grad_norm) {
  HistoryPoint point;
  const BatchTrace trace = ForwardBatch(net, x);
  point.loss = EvaluateLoss(loss, trace.output(), y);
  if (with_grad_norm) {
    const Mat g = LossGradients(loss, trace.output(), y);
    point.grad_norm = std::sqrt(BackwardBatch(net, trace, g).SquaredNorm());
  }
  return point;
}

TrainResult Train(Mlp net, const Mat& x, const Mat& y, const TrainConfig& config,
                  SeededRng rng, const StepHook& hook,
                  const RecordHook& on_record) {
  Require(x.rows() == y.rows(), "Train: X and Y row counts differ");
  Require(x.rows() >= 1, "Train: empty dataset");
  Require(config.learning_rate >= 0.0 && std::isfinite(config.learning_rate),
          "Train: learning rate must be finite and non-negative");
  Require(config.record_every >= 1, "Train: record_every must be >= 1");

  const std::size_t n = x.rows();
  const bool full_batch = config.batch_size == 0 || config.batch_size >= n;
  const std::size_t batch = full_batch ? n : config.batch_size;
  const std::size_t m = net.num_layers();

  std::vector<std::size_t> all_rows(n);
  for (std::size_t i = 0; i < n; ++i) all_rows[i] = i;
  std::vector<std::size_t> order;
  std::size_t cursor = n;  // forces a shuffle on first use
  SeededRng batch_rng = rng.Fork("batches");

  // Adam moments.
  std::vector<Mat> m_w, v_w;
  std::vector<Vec> m_b, v_b;
  if (config.optimizer == Optimizer::kAdam) {
    for (std::size_t k = 0; k < m; ++k) {
      m_w.emplace_back(net.weight(k).rows(), net.weight(k).cols());
      v_w.emplace_back(net.weight(k).rows(), net.weight(k).cols());
      if (net.has_bias()) {
        m_b.emplace_back(net.bias(k).size(), 0.0);
        v_b.emplace_back(net.bias(k).size(), 0.0);
      }
    }
  }

  TrainResult result{net, {}};
  auto record = [&](std::size_t step) {
    HistoryPoint p = Measure(net, x, y, config.loss, config.record_grad_norm);
    p.step = step;
    if (!std::isfinite(p.loss))
      throw NumericError("Train: loss became non-finite at step " + std::to_string(step),
                         static_cast<long>(step));
    result.history.push_back(p);
    if (on_record) on_record(step, net);
  };
  record(0);

  std::vector<std::size_t> rows;
  for (std::size_t t = 1; t <= config.steps; ++t) {
    if (full_batch) {
      rows = all_rows;
    } else {
      rows.clear();
      while (rows.size() < batch) {
        if (cursor >= n) {
          order = batch_rng.Permutation(n);
          cursor = 0;
        }
        rows.push_back(order[cursor++]);
      }
    }
    const Mat bx = full_batch ? x : GatherRows(x, rows);
    const Mat by = full_batch ? y : GatherRows(y, rows);
    BatchTrace trace;
    try {
      trace = ForwardBatch(net, bx);
    } catch (const NumericError& e) {
      throw NumericError(std::string(e.what()) + " (training step " +
                             std::to_string(t) + ")",
                         static_cast<long>(t));
    }
    const Mat g = LossGradients(config.loss, trace.output(), by);
    if (hook) hook(StepContext{t, net, rows, g});
    ParameterGrads grads = BackwardBatch(net, trace, g);
    if (!std::isfinite(grads.SquaredNorm()))
      throw NumericError("Train: non-finite gradient at step " + std::to_string(t),
                         static_cast<long>(t));

    const double lr = config.learning_rate;
    if (config.optimizer == Optimizer::kSgd) {
      for (std::size_t k = 0; k < m; ++k) {
        Mat& w = net.mutable_weight(k);
        const Mat& gw = grads.weights[k];
        for (std::size_t i = 0; i < w.size(); ++i)
          w.data()[i] -= lr * (gw.data()[i] + config.weight_decay * w.data()[i]);
        if (net.has_bias()) {
          Vec& b = net.mutable_bias(k);
          for (std::size_t i = 0; i < b.size(); ++i) b[i] -= lr * grads.biases[k][i];
        }
      }
    } else {
      const double b1 = config.adam_beta1, b2 = config.adam_beta2;
      const double c1 = 1.0 - std::pow(b1, static_cast<double>(t));
      const double c2 = 1.0 - std::pow(b2, static_cast<double>(t));
      auto adam = [&](double& param, double grad, double& mom, double& vel) {
        mom = b1 * mom + (1.0 - b1) * grad;
        vel = b2 * vel + (1.0 - b2) * grad * grad;
        param -= lr * (mom / c1) / (std::sqrt(vel / c2) + config.adam_epsilon);
      };
      for (std::size_t k = 0; k < m; ++k) {
        Mat& w = net.mutable_weight(k);
        for (std::size_t i = 0; i < w.size(); ++i) {
          const double gi = grads.weights[k].data()[i] + config.weight_decay * w.data()[i];
          adam(w.data()[i], gi, m_w[k].data()[i], v_w[k].data()[i]);
        }
        if (net.has_bias()) {
          Vec& b = net.mutable_bias(k);
          for (std::size_t i = 0; i < b.size(); ++i)
            adam(b[i], grads.biases[k][i], m_b[k][i], v_b[k][i]);
        }
      }
    }
    if (t % config.record_every == 0) record(t);
  }
  result.net = std::move(net);
  return result;
}

}  // namespace rfflab
