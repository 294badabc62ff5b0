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

#include "tunnelprobe/kernels.hpp"

#include <cmath>
#include <string>

#include "tunnelprobe/error.hpp"
#include "tunnelprobe/numeric.hpp"

namespace tunnelprobe::kernels {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

namespace {

void check_norm(double n, std::size_t i) {
  if (!(n >= kMinNorm)) {
    throw ValidationError("zero-norm vector at row " + std::to_string(i));
  }
}

void normalize_row(const RowMatrix& in, RowMatrix& out, std::size_t i) {
  const auto src = in.row(i);
  const double n = norm(src);
  check_norm(n, i);
  auto dst = out.row(i);
  for (std::size_t k = 0; k < src.size(); ++k) dst[k] = src[k] / n;
}

double row_partial(const RowMatrix& unit, std::size_t i) {
  CompensatedSum acc;
  const auto ui = unit.row(i);
  for (std::size_t j = i + 1; j < unit.rows(); ++j) acc.add(dot(ui, unit.row(j)));
  return acc.value();
}

double column_partial(const RowMatrix& rows, std::size_t k) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < rows.rows(); ++i) acc.add(rows(i, k));
  return acc.value() / static_cast<double>(rows.rows());
}

}  // namespace

namespace serial {

double pairwise_cosine_sum(const RowMatrix& rows) {
  RowMatrix unit(rows.rows(), rows.cols());
  for (std::size_t i = 0; i < rows.rows(); ++i) normalize_row(rows, unit, i);
  std::vector<double> partial(rows.rows());
  for (std::size_t i = 0; i < rows.rows(); ++i) partial[i] = row_partial(unit, i);
  return compensated_sum(partial);
}

std::vector<double> column_mean(const RowMatrix& rows) {
  std::vector<double> mean(rows.cols());
  for (std::size_t k = 0; k < rows.cols(); ++k) mean[k] = column_partial(rows, k);
  return mean;
}

void logistic(std::span<const double> margins, std::span<double> out) {
  for (std::size_t k = 0; k < margins.size(); ++k) out[k] = kernels::logistic(margins[k]);
}

}  // namespace serial

namespace parallel {

double pairwise_cosine_sum(const RowMatrix& rows) {
  const auto n = static_cast<std::ptrdiff_t>(rows.rows());
  // Norm check runs serially so the reported row is always the first bad one.
  for (std::ptrdiff_t i = 0; i < n; ++i) check_norm(norm(rows.row(i)), i);
  RowMatrix unit(rows.rows(), rows.cols());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) normalize_row(rows, unit, i);
  std::vector<double> partial(rows.rows());
  // Row i touches n - i - 1 pairs; dynamic scheduling balances the triangle.
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) partial[i] = row_partial(unit, i);
  return compensated_sum(partial);
}

std::vector<double> column_mean(const RowMatrix& rows) {
  std::vector<double> mean(rows.cols());
  const auto d = static_cast<std::ptrdiff_t>(rows.cols());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < d; ++k) mean[k] = column_partial(rows, k);
  return mean;
}

void logistic(std::span<const double> margins, std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(margins.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) out[k] = kernels::logistic(margins[k]);
}

}  // namespace parallel

}  // namespace tunnelprobe::kernels
