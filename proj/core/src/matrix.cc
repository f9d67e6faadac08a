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

#include "rfflab/matrix.h"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Core>

#include "rfflab/errors.h"

namespace rfflab {
namespace {

using RowMajor =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const RowMajor>;
using MutMap = Eigen::Map<RowMajor>;

std::string Shape(const Mat& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

ConstMap View(const Mat& m) { return ConstMap(m.data(), m.rows(), m.cols()); }
MutMap View(Mat& m) { return MutMap(m.data(), m.rows(), m.cols()); }

}  // namespace

Mat::Mat(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  Require(data_.size() == rows * cols,
          "Mat: data length " + std::to_string(data_.size()) +
              " does not match shape " + std::to_string(rows) + "x" +
              std::to_string(cols));
}

Mat::Mat(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    Require(r.size() == cols_, "Mat: ragged initializer list");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Mat Mat::Identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Mat Mat::Diagonal(std::span<const double> diag) {
  Mat m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Mat Mat::ColumnVector(std::span<const double> v) {
  return Mat(v.size(), 1, std::vector<double>(v.begin(), v.end()));
}

Vec Mat::column(std::size_t c) const {
  Vec out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

Mat Mat::Transposed() const {
  Mat t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool Mat::AllFinite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

Mat& Mat::operator+=(const Mat& other) {
  Require(rows_ == other.rows_ && cols_ == other.cols_,
          "Mat +=: shape mismatch " + Shape(*this) + " vs " + Shape(other));
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Mat& Mat::operator-=(const Mat& other) {
  Require(rows_ == other.rows_ && cols_ == other.cols_,
          "Mat -=: shape mismatch " + Shape(*this) + " vs " + Shape(other));
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Mat& Mat::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Mat operator+(Mat a, const Mat& b) { return a += b; }
Mat operator-(Mat a, const Mat& b) { return a -= b; }
Mat operator*(Mat a, double s) { return a *= s; }

Mat MatMul(const Mat& a, const Mat& b) {
  Require(a.cols() == b.rows(),
          "MatMul: dimension mismatch " + Shape(a) + " * " + Shape(b));
  Mat out(a.rows(), b.cols());
  if (a.cols() == 0) return out;
  View(out).noalias() = View(a) * View(b);
  return out;
}

Mat MatMulTransB(const Mat& a, const Mat& b) {
  Require(a.cols() == b.cols(),
          "MatMulTransB: dimension mismatch " + Shape(a) + " * " + Shape(b) +
              "^T");
  Mat out(a.rows(), b.rows());
  if (a.cols() == 0) return out;
  View(out).noalias() = View(a) * View(b).transpose();
  return out;
}

Mat MatMulTransA(const Mat& a, const Mat& b) {
  Require(a.rows() == b.rows(),
          "MatMulTransA: dimension mismatch " + Shape(a) + "^T * " + Shape(b));
  Mat out(a.cols(), b.cols());
  if (a.rows() == 0) return out;
  View(out).noalias() = View(a).transpose() * View(b);
  return out;
}

Vec MatVec(const Mat& a, std::span<const double> x) {
  Require(a.cols() == x.size(), "MatVec: matrix is " + Shape(a) +
                                    " but vector has length " +
                                    std::to_string(x.size()));
  Vec out(a.rows(), 0.0);
  for (std::size_t r = 0; r < a.rows(); ++r) out[r] = Dot(a.row(r), x);
  return out;
}

Vec MatTVec(const Mat& a, std::span<const double> x) {
  Require(a.rows() == x.size(), "MatTVec: matrix is " + Shape(a) +
                                    " but vector has length " +
                                    std::to_string(x.size()));
  Vec out(a.cols(), 0.0);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const double xr = x[r];
    auto row = a.row(r);
    for (std::size_t c = 0; c < a.cols(); ++c) out[c] += row[c] * xr;
  }
  return out;
}

double Dot(std::span<const double> a, std::span<const double> b) {
  Require(a.size() == b.size(), "Dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double Norm2(std::span<const double> a) { return std::sqrt(Dot(a, a)); }

double FrobeniusNorm(const Mat& a) { return Norm2(a.values()); }

double MaxAbsDiff(const Mat& a, const Mat& b) {
  Require(a.rows() == b.rows() && a.cols() == b.cols(),
          "MaxAbsDiff: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

double Trace(const Mat& a) {
  Require(a.rows() == a.cols(), "Trace: matrix is not square");
  double t = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

double SpectralNorm(const Mat& a, int max_iterations, double tol) {
  if (a.empty()) return 0.0;
  // Iterate on the smaller Gram matrix.
  const bool use_rows = a.rows() < a.cols();
  const Mat gram = use_rows ? MatMulTransB(a, a) : MatMulTransA(a, a);
  const std::size_t n = gram.rows();
  // Deterministic, non-degenerate start vector.
  Vec v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.01 * static_cast<double>(i % 7);
  double nv = Norm2(v);
  for (double& x : v) x /= nv;

  double lambda = 0.0;
  for (int it = 0; it < max_iterations; ++it) {
    Vec w = MatVec(gram, v);
    const double nw = Norm2(w);
    if (nw == 0.0) return 0.0;
    for (double& x : w) x /= nw;
    const double next = nw;
    v.swap(w);
    if (std::abs(next - lambda) <= tol * std::max(1.0, next)) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  // Rayleigh quotient on the final iterate.
  const double rq = Dot(v, MatVec(gram, v));
  return std::sqrt(std::max(lambda, rq));
}

}  // namespace rfflab
