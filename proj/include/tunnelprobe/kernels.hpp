/* Copyright 2026 The tunnelprobe Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef TUNNELPROBE_KERNELS_HPP_
#define TUNNELPROBE_KERNELS_HPP_

// Data-parallel inner loops. Every kernel has a serial reference in
// kernels::serial and an OpenMP version in kernels::parallel. The two
// produce bit-identical results: per-row partials are computed
// independently and then reduced in index order with compensated sums.

#include <cstddef>
#include <span>
#include <vector>

namespace tunnelprobe::kernels {

// Dense row-major matrix of doubles.
class RowMatrix {
 public:
  RowMatrix() = default;
  RowMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const double> data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Rows with Euclidean norm below this are rejected by cosine kernels.
inline constexpr double kMinNorm = 1e-12;

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);

namespace serial {

// Sum over i < j of cos(row_i, row_j). Throws ValidationError naming the
// first row whose norm is below kMinNorm.
double pairwise_cosine_sum(const RowMatrix& rows);

std::vector<double> column_mean(const RowMatrix& rows);

// out[k] = logistic(margins[k]).
void logistic(std::span<const double> margins, std::span<double> out);

}  // namespace serial

namespace parallel {

double pairwise_cosine_sum(const RowMatrix& rows);
std::vector<double> column_mean(const RowMatrix& rows);
void logistic(std::span<const double> margins, std::span<double> out);

}  // namespace parallel

// Numerically stable logistic function.
double logistic(double x);

}  // namespace tunnelprobe::kernels

#endif  // TUNNELPROBE_KERNELS_HPP_
