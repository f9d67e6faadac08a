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

#ifndef RFFLAB_MATRIX_H_
#define RFFLAB_MATRIX_H_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace rfflab {

using Vec = std::vector<double>;

// Dense row-major matrix of doubles. A column vector is the rows x 1 case;
// most APIs take plain Vec for vectors and Mat for everything 2-D.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Mat(std::size_t rows, std::size_t cols, std::vector<double> data);
  Mat(std::initializer_list<std::initializer_list<double>> rows);

  static Mat Identity(std::size_t n);
  static Mat Diagonal(std::span<const double> diag);
  static Mat ColumnVector(std::span<const double> v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  Vec column(std::size_t c) const;

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::span<const double> values() const { return data_; }
  const std::vector<double>& storage() const { return data_; }

  Mat Transposed() const;
  bool AllFinite() const;

  Mat& operator+=(const Mat& other);
  Mat& operator-=(const Mat& other);
  Mat& operator*=(double s);

  friend bool operator==(const Mat&, const Mat&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Mat operator+(Mat a, const Mat& b);
Mat operator-(Mat a, const Mat& b);
Mat operator*(Mat a, double s);

// a * b. Throws ContractError when a.cols() != b.rows().
Mat MatMul(const Mat& a, const Mat& b);
// a * b^T without materializing the transpose.
Mat MatMulTransB(const Mat& a, const Mat& b);
// a^T * b without materializing the transpose.
Mat MatMulTransA(const Mat& a, const Mat& b);
// a * x for a vector x of length a.cols().
Vec MatVec(const Mat& a, std::span<const double> x);
// a^T * x for a vector x of length a.rows().
Vec MatTVec(const Mat& a, std::span<const double> x);

double Dot(std::span<const double> a, std::span<const double> b);
double Norm2(std::span<const double> a);
double FrobeniusNorm(const Mat& a);
double MaxAbsDiff(const Mat& a, const Mat& b);
double Trace(const Mat& a);

// Largest singular value via power iteration on A^T A.
double SpectralNorm(const Mat& a, int max_iterations = 50, double tol = 1e-10);

}  // namespace rfflab

#endif  // RFFLAB_MATRIX_H_
