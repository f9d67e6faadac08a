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

#include "rfflab/verify.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "rfflab/errors.h"
#include "rfflab/mlp.h"
#include "rfflab/ntk.h"
#include "rfflab/random.h"
#include "rfflab/rff.h"
#include "rfflab/telescope.h"

namespace rfflab {
namespace {

std::size_t Trials(const VerifyOptions& opts, std::size_t fallback) {
  return opts.trials == 0 ? fallback : opts.trials;
}

std::string Fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string Describe(std::span<const double> x) {
  std::ostringstream out;
  out << "x[" << x.size() << "]=(";
  const std::size_t shown = std::min<std::size_t>(x.size(), 4);
  for (std::size_t i = 0; i < shown; ++i) out << (i ? ", " : "") << Fmt(x[i]);
  if (shown < x.size()) out << ", ...";
  out << ") |x|=" << Fmt(Norm2(x));
  return out.str();
}

std::string ArchName(const std::vector<std::size_t>& dims) {
  std::string s = "[";
  for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? "," : "") + std::to_string(dims[i]);
  return s + "]";
}

class Recorder {
 public:
  explicit Recorder(std::string suite) { report_.suite = std::move(suite); }

  // Records one check; `what` is built only on failure.
  template <typename F>
  void Check(bool ok, F&& what) {
    ++report_.checks;
    if (ok) return;
    ++report_.failure_count;
    if (report_.failures.size() < kMaxRecordedFailures) report_.failures.push_back(what());
  }
  void Metric(std::string name, double value) {
    report_.metrics.emplace_back(std::move(name), value);
  }
  SuiteReport Finish() { return std::move(report_); }

 private:
  SuiteReport report_;
};

// Inputs with norms spread log-uniformly over [1e-2, 1e4].
Vec ScaledProbe(std::size_t d, SeededRng& rng) {
  Vec x = SampleVector(ScalarDistribution::StdNormal(), d, rng);
  const double radius = std::pow(10.0, rng.Uniform(-2.0, 4.0));
  const double n = Norm2(x);
  for (double& v : x) v *= radius / n;
  return x;
}

const std::vector<std::vector<std::size_t>>& Architectures() {
  static const std::vector<std::vector<std::size_t>> kArchs = {
      {10, 64, 1}, {10, 32, 32, 1}, {5, 128, 128, 1}, {20, 16, 16, 16, 1}, {3, 256, 64, 1}};
  return kArchs;
}

double Relative(double a, double b) {
  const double denom = std::max(std::abs(a), std::abs(b));
  return denom == 0.0 ? 0.0 : std::abs(a - b) / denom;
}

}  // namespace

double SuiteReport::metric(const std::string& name) const {
  for (const auto& [k, v] : metrics)
    if (k == name) return v;
  throw ContractError("SuiteReport: no metric '" + name + "'");
}

SuiteReport VerifyNorm(const VerifyOptions& opts) {
  Recorder rec("norm");
  const std::size_t trials = Trials(opts, 10000);
  const std::size_t dims[] = {1, 10, 100};
  const SpectralKind kinds[] = {SpectralKind::kGaussian, SpectralKind::kLaplacian,
                                SpectralKind::kCauchy};
  SeededRng root(opts.seed, "verify/norm");
  std::vector<RffMap> maps;
  for (std::size_t d : dims)
    for (SpectralKind kind : kinds)
      maps.push_back(RffMap::Build({kind, 1.0}, d, 512, FeatureVariant::kSinCos,
                                   FeatureScaling::kStandard,
                                   root.Fork("map/" + std::to_string(d) + "/" +
                                             std::string(ToString(kind)))));
  SeededRng rng = root.Fork("probes");
  double worst = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const RffMap& map = maps[t % maps.size()];
    const Vec x = ScaledProbe(map.input_dim(), rng);
    const double err = std::abs(Norm2(map.Transform(x)) - std::sqrt(2.0));
    worst = std::max(worst, err);
    rec.Check(err <= 1e-12, [&] {
      return "|phi(x)| = sqrt(2) violated by " + Fmt(err) + " (" +
             std::string(ToString(map.family().kind)) + ", " + Describe(x) + ")";
    });
  }
  rec.Metric("max_abs_error", worst);
  return rec.Finish();
}

SuiteReport VerifyBochner(const VerifyOptions& opts) {
  Recorder rec("bochner");
  const std::size_t pairs = Trials(opts, 100);
  const SpectralFamily family{SpectralKind::kGaussian, 1.0};
  SeededRng root(opts.seed, "verify/bochner");
  const RffMap map = RffMap::Build(family, 5, 4096, FeatureVariant::kSinCos,
                                   FeatureScaling::kUnbiased, root.Fork("map"));
  SeededRng rng = root.Fork("pairs");
  std::size_t within = 0;
  double worst = 0.0;
  for (std::size_t p = 0; p < pairs; ++p) {
    Vec x = SampleVector(ScalarDistribution::StdNormal(), 5, rng);
    Vec y = SampleVector(ScalarDistribution::StdNormal(), 5, rng);
    for (double& v : x) v *= 0.5;
    for (double& v : y) v *= 0.5;
    Vec delta(5);
    for (std::size_t i = 0; i < 5; ++i) delta[i] = x[i] - y[i];
    const double err = std::abs(EmpiricalKernel(map, x, y) - AnalyticKernel(family, delta));
    worst = std::max(worst, err);
    if (err <= 0.05) ++within;
  }
  const double share = static_cast<double>(within) / static_cast<double>(pairs);
  rec.Check(share >= 0.95, [&] {
    return "|k_hat - k| <= 0.05 held on " + std::to_string(within) + " of " +
           std::to_string(pairs) + " pairs (need 95%)";
  });

  std::vector<std::size_t> ds;
  for (std::size_t d = 16; d <= 4096; d *= 2) ds.push_back(d);
  const McErrorCurve curve = MonteCarloErrorCurve(
      family, 5, 200, ds, root.Fork("curve"),
      {1.0, FeatureVariant::kSinCos, FeatureScaling::kUnbiased});
  rec.Check(curve.loglog_slope >= -0.7 && curve.loglog_slope <= -0.3, [&] {
    return "log-log error slope " + Fmt(curve.loglog_slope) + " outside -0.5 +- 0.2";
  });
  rec.Metric("pairs_within", static_cast<double>(within));
  rec.Metric("max_abs_error", worst);
  rec.Metric("loglog_slope", curve.loglog_slope);
  return rec.Finish();
}

SuiteReport VerifyGradient(const VerifyOptions& opts) {
  Recorder rec("gradient");
  const std::size_t probes = Trials(opts, 100);
  const std::vector<std::size_t> dims = {10, 32, 32, 1};
  SeededRng root(opts.seed, "verify/gradient");
  SeededRng xs = root.Fork("x");
  constexpr double kStep = 1e-5;
  double worst = 0.0;
  for (std::size_t p = 0; p < probes; ++p) {
    Mlp net = Mlp::Init(dims, Activation::LeakyReLU(0.5), std::sqrt(2.0),
                        root.Fork("net/" + std::to_string(p)));
    const Vec x = SampleVector(ScalarDistribution::StdNormal(), dims[0], xs);
    const GradientBundle g = Backward(net, Forward(net, x));
    double max_diff = 0.0, max_fd = 0.0;
    for (std::size_t k = 0; k < net.num_layers(); ++k) {
      Mat& w = net.mutable_weight(k);
      for (std::size_t i = 0; i < w.size(); ++i) {
        double& entry = w.data()[i];
        const double saved = entry;
        entry = saved + kStep;
        const double up = Evaluate(net, x);
        entry = saved - kStep;
        const double down = Evaluate(net, x);
        entry = saved;
        const double fd = (up - down) / (2.0 * kStep);
        max_diff = std::max(max_diff, std::abs(fd - g.weight_grads[k].data()[i]));
        max_fd = std::max(max_fd, std::abs(fd));
      }
    }
    const double rel = max_fd == 0.0 ? max_diff : max_diff / max_fd;
    worst = std::max(worst, rel);
    rec.Check(rel <= 1e-6, [&] {
      return "central-difference gradient mismatch " + Fmt(rel) + " relative at " + Describe(x);
    });
  }
  rec.Metric("max_relative_error", worst);
  return rec.Finish();
}

SuiteReport VerifyHomogeneity(const VerifyOptions& opts) {
  Recorder rec("homogeneity");
  const std::size_t probes = Trials(opts, 1000);
  SeededRng root(opts.seed, "verify/homogeneity");
  std::vector<Mlp> nets;
  for (std::size_t a = 0; a < Architectures().size(); ++a)
    nets.push_back(Mlp::Init(Architectures()[a], Activation::ReLU(), std::sqrt(2.0),
                             root.Fork("net/" + std::to_string(a))));
  SeededRng rng = root.Fork("probes");
  double worst_f = 0.0, worst_k = 0.0;
  for (std::size_t p = 0; p < probes; ++p) {
    const Mlp& net = nets[p % nets.size()];
    const Vec x = ScaledProbe(net.input_dim(), rng);
    const Vec xp = ScaledProbe(net.input_dim(), rng);
    const double f = Evaluate(net, x);
    const double k = NtkValue(net, x, xp);
    for (double a : {0.5, 2.0, 10.0}) {
      Vec ax = x, axp = xp;
      for (double& v : ax) v *= a;
      for (double& v : axp) v *= a;
      const double rf = Relative(Evaluate(net, ax), a * f);
      const double rk = Relative(NtkValue(net, ax, axp), a * a * k);
      worst_f = std::max(worst_f, rf);
      worst_k = std::max(worst_k, rk);
      rec.Check(rf <= 1e-10, [&] {
        return "f(a x) = a f(x) off by " + Fmt(rf) + " relative, a=" + Fmt(a) + ", net " +
               ArchName(net.layer_dims()) + ", " + Describe(x);
      });
      rec.Check(rk <= 1e-10, [&] {
        return "K(a x, a x') = a^2 K(x, x') off by " + Fmt(rk) + " relative, a=" + Fmt(a) +
               ", net " + ArchName(net.layer_dims()) + ", " + Describe(x);
      });
    }
  }
  rec.Metric("max_relative_error_f", worst_f);
  rec.Metric("max_relative_error_k", worst_k);
  return rec.Finish();
}

SuiteReport VerifyBounds(const VerifyOptions& opts) {
  Recorder rec("bounds");
  // Some bounds are attained exactly (|h^0| = S_0 |x|, and the last hidden
  // gradient is W_{m-1}^T), so allow for rounding in the norm products.
  constexpr double kSlack = 1.0 + 1e-12;
  const std::size_t probes = Trials(opts, 1000);
  SeededRng root(opts.seed, "verify/bounds");
  double tightest_c1 = 0.0, tightest_s = 0.0, tightest_t = 0.0;
  for (std::size_t a = 0; a < Architectures().size(); ++a) {
    const Mlp net = Mlp::Init(Architectures()[a], Activation::ReLU(), std::sqrt(2.0),
                              root.Fork("net/" + std::to_string(a)));
    const BoundCertificates b = ComputeBounds(net);
    const std::size_t m = net.num_layers();
    SeededRng rng = root.Fork("probes/" + std::to_string(a));
    for (std::size_t p = 0; p < probes; ++p) {
      const Vec x = ScaledProbe(net.input_dim(), rng);
      const double xn = Norm2(x);
      const ForwardTrace tr = Forward(net, x);
      const GradientBundle g = Backward(net, tr);
      const double gn = Norm2(g.Flatten());
      tightest_c1 = std::max(tightest_c1, gn / (b.c1 * xn));
      rec.Check(gn <= b.c1 * xn * kSlack, [&] {
        return "|grad f(x)| = " + Fmt(gn) + " exceeds C1 |x| = " + Fmt(b.c1 * xn) + ", net " +
               ArchName(net.layer_dims()) + ", " + Describe(x);
      });
      for (std::size_t k = 0; k <= m; ++k) {
        const double hn = Norm2(tr.post[k]);
        const double hg = Norm2(g.hidden_grads[k]);
        tightest_s = std::max(tightest_s, hn / (b.forward_prefix[k] * xn));
        tightest_t = std::max(tightest_t, hg / b.backward_suffix[k]);
        rec.Check(hn <= b.forward_prefix[k] * xn * kSlack, [&] {
          return "|h^" + std::to_string(k) + "| exceeds S_k |x|, net " +
                 ArchName(net.layer_dims()) + ", " + Describe(x);
        });
        rec.Check(hg <= b.backward_suffix[k] * kSlack, [&] {
          return "|grad_h^" + std::to_string(k) + " f| exceeds T_k, net " +
                 ArchName(net.layer_dims()) + ", " + Describe(x);
        });
      }
    }
  }
  // Largest observed ratio to each bound; all must stay <= 1.
  rec.Metric("max_ratio_c1", tightest_c1);
  rec.Metric("max_ratio_s", tightest_s);
  rec.Metric("max_ratio_t", tightest_t);
  return rec.Finish();
}

SuiteReport VerifyLowerBound(const VerifyOptions& opts) {
  Recorder rec("lower-bound");
  const std::size_t probes = Trials(opts, 1000);
  SeededRng root(opts.seed, "verify/lower-bound");
  double min_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < Architectures().size(); ++a) {
    const Mlp net = Mlp::Init(Architectures()[a], Activation::ReLU(), std::sqrt(2.0),
                              root.Fork("net/" + std::to_string(a)));
    const LowerBoundWitness w =
        FindLowerBoundWitness(net, probes, root.Fork("witness/" + std::to_string(a)));
    for (double alpha : {2.0, 10.0, 100.0}) {
      Vec ax = w.direction;
      for (double& v : ax) v *= alpha;
      const double gn = Norm2(ParameterGradient(net, ax));
      min_ratio = std::min(min_ratio, gn / (w.c2 * alpha));
      rec.Check(w.c2 > 0.0 && gn >= w.c2 * alpha, [&] {
        return "|grad f(a x*)| = " + Fmt(gn) + " below C2 a = " + Fmt(w.c2 * alpha) +
               ", a=" + Fmt(alpha) + ", net " + ArchName(net.layer_dims()) + ", " +
               Describe(w.direction);
      });
    }
  }
  rec.Metric("min_ratio", min_ratio);
  return rec.Finish();
}

SuiteReport VerifyDecomposition(const VerifyOptions& opts) {
  Recorder rec("decomposition");
  const std::size_t pairs = Trials(opts, 200);
  SeededRng root(opts.seed, "verify/decomposition");
  const std::size_t d = 10;
  const RffMap map = RffMap::Build({SpectralKind::kGaussian, 1.0}, d, 512,
                                   FeatureVariant::kSinCos, FeatureScaling::kStandard,
                                   root.Fork("map"));
  const Mlp net = Mlp::Init({map.feature_dim(), 128, 128, 1}, Activation::ReLU(),
                            std::sqrt(2.0), root.Fork("net"));
  const double bound = *ComputeBounds(net, &map).upper_block_bound;
  SeededRng rng = root.Fork("pairs");
  double worst_gap = 0.0, max_gamma = 0.0, max_block = 0.0;
  for (std::size_t p = 0; p < pairs; ++p) {
    Vec x = SampleVector(ScalarDistribution::StdNormal(), d, rng);
    const double radius = std::pow(10.0, rng.Uniform(0.0, 4.0));
    const double xn = Norm2(x);
    for (double& v : x) v *= radius / xn;
    // Every fourth pair is a diagonal pair (x, x).
    Vec xp = x;
    if (p % 4 != 0) xp = ScaledProbe(d, rng);
    const KernelDecomposition k = NtkDecompose(net, map, x, xp);
    const double gap = std::abs(k.gamma + k.m - k.total) / std::abs(k.total);
    worst_gap = std::max(worst_gap, gap);
    max_gamma = std::max(max_gamma, std::abs(k.gamma));
    max_block = std::max({max_block, k.upper_block_sq_norm_x, k.upper_block_sq_norm_x_prime});
    rec.Check(gap <= 1e-12, [&] {
      return "gamma + m = K off by " + Fmt(gap) + " relative at " + Describe(x);
    });
    rec.Check(std::abs(k.gamma) <= bound, [&] {
      return "|gamma| = " + Fmt(k.gamma) + " exceeds B = " + Fmt(bound) + " at " + Describe(x);
    });
    rec.Check(std::max(k.upper_block_sq_norm_x, k.upper_block_sq_norm_x_prime) <= bound, [&] {
      return "upper-block gradient norm^2 exceeds B = " + Fmt(bound) + " at " + Describe(x);
    });
  }
  rec.Metric("max_relative_gap", worst_gap);
  rec.Metric("max_abs_gamma", max_gamma);
  rec.Metric("max_upper_block_sq_norm", max_block);
  rec.Metric("B", bound);
  return rec.Finish();
}

SuiteReport VerifyTelescope(const VerifyOptions& opts) {
  Recorder rec("telescope");
  const std::size_t n_eval = Trials(opts, 8);
  SeededRng root(opts.seed, "verify/telescope");
  const std::size_t d = 5, n = 32;
  SeededRng data = root.Fork("data");
  const Mat x = SampleMatrix(ScalarDistribution::StdNormal(), n, d, data);
  Mat y(n, 1);
  for (std::size_t i = 0; i < n; ++i) y(i, 0) = std::sin(x(i, 0)) + 0.5 * x(i, 1);
  const Mat eval = SampleMatrix(ScalarDistribution::StdNormal(), n_eval, d, data);

  auto max_error = [&](const TelescopeRun& run) {
    double worst = 0.0;
    for (std::size_t e = 0; e < n_eval; ++e)
      worst = std::max(worst, std::abs(TelescopeReconstruct(run.trace, e) -
                                       Evaluate(run.trained, eval.row(e))));
    return worst;
  };

  // Parameter-linear model f(x) = w^T x.
  const Mlp linear = Mlp::Init({d, 1}, Activation::Identity(), 1.0, root.Fork("linear"));
  const double linear_err = max_error(TelescopeRecord(linear, x, y, 0.1, 100, eval));
  rec.Check(linear_err <= 1e-9, [&] {
    return "linear-model reconstruction error " + Fmt(linear_err) + " exceeds 1e-9";
  });

  const Mlp relu = Mlp::Init({d, 64, 1}, Activation::ReLU(), std::sqrt(2.0), root.Fork("relu"));
  const double lr = 0.05;
  const std::size_t steps = 100;
  const double err_full = max_error(TelescopeRecord(relu, x, y, lr, steps, eval));
  const double err_half = max_error(TelescopeRecord(relu, x, y, lr / 2, 2 * steps, eval));
  const double ratio = err_full / err_half;
  rec.Check(ratio >= 1.6, [&] {
    return "reconstruction error ratio (lr, T) / (lr/2, 2T) = " + Fmt(ratio) + " below 1.6";
  });
  rec.Metric("linear_max_error", linear_err);
  rec.Metric("relu_error_lr", err_full);
  rec.Metric("relu_error_half_lr", err_half);
  rec.Metric("error_ratio", ratio);
  return rec.Finish();
}

const std::vector<std::string>& SuiteNames() {
  static const std::vector<std::string> kNames = {"norm",   "bochner",  "gradient",
                                                  "homogeneity", "bounds", "lower-bound",
                                                  "decomposition", "telescope"};
  return kNames;
}

SuiteReport RunSuite(const std::string& name, const VerifyOptions& opts) {
  if (name == "norm") return VerifyNorm(opts);
  if (name == "bochner") return VerifyBochner(opts);
  if (name == "gradient") return VerifyGradient(opts);
  if (name == "homogeneity") return VerifyHomogeneity(opts);
  if (name == "bounds") return VerifyBounds(opts);
  if (name == "lower-bound") return VerifyLowerBound(opts);
  if (name == "decomposition") return VerifyDecomposition(opts);
  if (name == "telescope") return VerifyTelescope(opts);
  std::string valid;
  for (const auto& s : SuiteNames()) valid += (valid.empty() ? "" : ", ") + s;
  throw ContractError("unknown suite '" + name + "' (valid: " + valid + ")");
}

}  // namespace rfflab
