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

#include "tunnelprobe/probing.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "tunnelprobe/error.hpp"
#include "tunnelprobe/kernels.hpp"
#include "tunnelprobe/numeric.hpp"
#include "tunnelprobe/rng.hpp"

namespace tunnelprobe {

heuristics::AnnotatedExample to_annotated_example(const AnnotationRecord& record) {
  if (!record.far_center_v || !record.near_center_v || !record.image_height) {
    throw ValidationError("annotation " + record.example_id +
                          ": far_center_v, near_center_v and image_height are required");
  }
  return {record.example_id, *record.far_center_v, *record.near_center_v, *record.image_height};
}

namespace probing {
namespace {

constexpr std::array<std::string_view, 6> kCategoryNames = {"left",  "right", "above",
                                                            "below", "far",   "close"};
constexpr std::array<std::string_view, 3> kAxisNames = {"horizontal", "vertical", "distance"};

kernels::RowMatrix stack(std::span<const DeltaVector> deltas) {
  const std::size_t d = deltas.front().delta.size();
  kernels::RowMatrix m(deltas.size(), d);
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (deltas[i].delta.size() != d) {
      throw ValidationError("delta " + deltas[i].pair_id + " has dimension " +
                            std::to_string(deltas[i].delta.size()) + ", expected " +
                            std::to_string(d));
    }
    std::copy(deltas[i].delta.begin(), deltas[i].delta.end(), m.row(i).begin());
  }
  return m;
}

const CategoryStats& require(const CategoryStatsMap& stats, Category c) {
  auto it = stats.find(c);
  if (it == stats.end() || it->second.count < 1) {
    throw ValidationError("missing category '" + std::string(to_string(c)) + "'");
  }
  return it->second;
}

std::string horizontal_text(const std::string& a, const std::string& b) {
  return "Is the " + a + " to the left or right of the " + b + "?";
}
std::string vertical_text(const std::string& a, const std::string& b) {
  return "Is the " + a + " above or below the " + b + "?";
}
std::string distance_text(const std::string& target, const std::string& reference) {
  return "Is the " + target + " far from or close to the camera compared to the " + reference +
         "?";
}

}  // namespace

std::string_view to_string(Category c) { return kCategoryNames[static_cast<int>(c)]; }
std::string_view to_string(Axis a) { return kAxisNames[static_cast<int>(a)]; }

Category parse_category(std::string_view s) {
  for (std::size_t k = 0; k < kCategoryNames.size(); ++k) {
    if (kCategoryNames[k] == s) return static_cast<Category>(k);
  }
  throw ValidationError("unknown category '" + std::string(s) + "'");
}

Axis parse_axis(std::string_view s) {
  for (std::size_t k = 0; k < kAxisNames.size(); ++k) {
    if (kAxisNames[k] == s) return static_cast<Axis>(k);
  }
  throw ValidationError("unknown axis '" + std::string(s) + "'");
}

Axis axis_of(Category c) { return static_cast<Axis>(static_cast<int>(c) / 2); }

Category canonical_of(Axis a) { return static_cast<Category>(2 * static_cast<int>(a)); }

Category opposite_of(Category c) { return static_cast<Category>(static_cast<int>(c) ^ 1); }

SwapPairSet build_swap_pairs(std::span<const AnnotationRecord> examples, std::uint64_t seed) {
  SwapPairSet out;
  for (const auto& ex : examples) {
    const Category category = parse_category(ex.relation);
    const std::string orig_id = ex.example_id + "-orig";
    const std::string swap_id = ex.example_id + "-swap";
    std::string orig_text;
    std::string swap_text;
    if (axis_of(category) == Axis::kDistance) {
      if (!ex.correct_option || *ex.correct_option < 0 ||
          *ex.correct_option >= static_cast<int>(ex.options.size())) {
        throw ValidationError("annotation " + ex.example_id +
                              ": distance example needs a valid correct_option");
      }
      std::vector<const std::string*> distractors;
      for (std::size_t k = 0; k < ex.options.size(); ++k) {
        if (static_cast<int>(k) != *ex.correct_option) distractors.push_back(&ex.options[k]);
      }
      if (distractors.empty()) {
        ++out.skipped_no_distractor;
        continue;
      }
      auto rng = CounterRng::derive(seed, {stable_hash(ex.example_id)});
      const std::string& target = ex.options[*ex.correct_option];
      const std::string& reference = *distractors[rng.uniform_index(distractors.size())];
      orig_text = distance_text(target, reference);
      swap_text = distance_text(reference, target);
    } else {
      if (ex.objects.size() != 2) {
        throw ValidationError("annotation " + ex.example_id + ": expected exactly two objects");
      }
      const auto& a = ex.objects[0];
      const auto& b = ex.objects[1];
      if (axis_of(category) == Axis::kHorizontal) {
        orig_text = horizontal_text(a, b);
        swap_text = horizontal_text(b, a);
      } else {
        orig_text = vertical_text(a, b);
        swap_text = vertical_text(b, a);
      }
    }
    out.questions.push_back({orig_id, ex.example_id, std::move(orig_text)});
    out.questions.push_back({swap_id, ex.example_id, std::move(swap_text)});
    out.pairs.push_back({ex.example_id, orig_id, swap_id, category});
  }
  return out;
}

std::vector<double> delta(std::span<const double> h_swapped, std::span<const double> h_original) {
  if (h_swapped.size() != h_original.size()) {
    throw ValidationError("delta: dimension mismatch (" + std::to_string(h_swapped.size()) +
                          " vs " + std::to_string(h_original.size()) + ")");
  }
  std::vector<double> out(h_swapped.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = h_swapped[k] - h_original[k];
  return out;
}

std::vector<DeltaVector> compute_deltas(std::span<const SwapPair> pairs,
                                        const LayerStates& states) {
  std::vector<DeltaVector> out;
  out.reserve(pairs.size());
  auto lookup = [&](const std::string& qid, const std::string& pair) -> const std::vector<double>& {
    auto it = states.find(qid);
    if (it == states.end()) {
      throw ValidationError("dangling reference: pair " + pair + " needs hidden state for " + qid);
    }
    return it->second;
  };
  for (const auto& p : pairs) {
    out.push_back({p.pair_id, p.category,
                   delta(lookup(p.q_swapped, p.pair_id), lookup(p.q_original, p.pair_id))});
  }
  return out;
}

std::optional<double> axis_coherence(std::span<const DeltaVector> deltas, Axis axis) {
  return axis_coherence(deltas, axis, canonical_of(axis));
}

std::optional<double> axis_coherence(std::span<const DeltaVector> deltas, Axis axis,
                                     Category canonical) {
  if (axis_of(canonical) != axis) {
    throw ValidationError("axis_coherence: canonical category is not on the axis");
  }
  std::vector<DeltaVector> on_axis;
  for (const auto& d : deltas) {
    if (axis_of(d.category) != axis) continue;
    if (kernels::norm(d.delta) < kernels::kMinNorm) {
      throw ValidationError("axis_coherence: zero-norm delta for pair " + d.pair_id);
    }
    DeltaVector v = d;
    if (d.category != canonical) {
      for (double& x : v.delta) x = -x;
    }
    on_axis.push_back(std::move(v));
  }
  const std::size_t n = on_axis.size();
  if (n < 2) return std::nullopt;
  const double sum = kernels::parallel::pairwise_cosine_sum(stack(on_axis));
  return 2.0 * sum / (static_cast<double>(n) * static_cast<double>(n - 1));
}

CategoryStatsMap category_stats(std::span<const DeltaVector> deltas) {
  std::map<Category, std::vector<DeltaVector>> grouped;
  for (const auto& d : deltas) grouped[d.category].push_back(d);
  CategoryStatsMap out;
  for (const auto& [c, members] : grouped) {
    out[c] = CategoryStats{c, kernels::parallel::column_mean(stack(members)),
                           static_cast<int>(members.size())};
  }
  return out;
}

double cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ValidationError("cosine: dimension mismatch");
  const double na = kernels::norm(a);
  const double nb = kernels::norm(b);
  if (na < kernels::kMinNorm || nb < kernels::kMinNorm) {
    throw ValidationError("cosine: zero-norm vector");
  }
  return std::clamp(kernels::dot(a, b) / (na * nb), -1.0, 1.0);
}

double vd_ei(const CategoryStatsMap& stats) {
  const auto& above = require(stats, Category::kAbove).mean;
  const auto& below = require(stats, Category::kBelow).mean;
  const auto& far = require(stats, Category::kFar).mean;
  const auto& close = require(stats, Category::kClose).mean;
  return 0.25 * (cosine(above, far) + cosine(below, close) - cosine(above, close) -
                 cosine(below, far));
}

SimilarityMatrix similarity_matrix(const CategoryStatsMap& stats) {
  SimilarityMatrix m{};
  for (std::size_t a = 0; a < kAllCategories.size(); ++a) {
    const auto& ma = require(stats, kAllCategories[a]).mean;
    m[a][a] = 1.0;
    for (std::size_t b = a + 1; b < kAllCategories.size(); ++b) {
      m[a][b] = m[b][a] = cosine(ma, require(stats, kAllCategories[b]).mean);
    }
  }
  return m;
}

std::optional<double> CoherenceReport::coherence(Axis a) const {
  switch (a) {
    case Axis::kHorizontal: return coh_horizontal;
    case Axis::kVertical: return coh_vertical;
    case Axis::kDistance: return coh_distance;
  }
  return std::nullopt;
}

CoherenceReport coherence_report(std::span<const DeltaVector> deltas, int layer) {
  CoherenceReport r;
  r.layer = layer;
  r.coh_horizontal = axis_coherence(deltas, Axis::kHorizontal);
  r.coh_vertical = axis_coherence(deltas, Axis::kVertical);
  r.coh_distance = axis_coherence(deltas, Axis::kDistance);
  for (const auto& d : deltas) {
    switch (axis_of(d.category)) {
      case Axis::kHorizontal: ++r.n_horizontal; break;
      case Axis::kVertical: ++r.n_vertical; break;
      case Axis::kDistance: ++r.n_distance; break;
    }
  }
  const auto stats = category_stats(deltas);
  const bool have_all = stats.contains(Category::kAbove) && stats.contains(Category::kBelow) &&
                        stats.contains(Category::kFar) && stats.contains(Category::kClose);
  if (have_all) r.vd_ei = vd_ei(stats);
  return r;
}

PcaResult pca(std::span<const DeltaVector> deltas, int k) {
  if (k < 1) throw ValidationError("pca: k must be positive");
  if (deltas.size() < static_cast<std::size_t>(k) + 1) {
    throw ValidationError("pca: need at least k + 1 deltas");
  }
  const kernels::RowMatrix rows = stack(deltas);
  const auto n = static_cast<Eigen::Index>(rows.rows());
  const auto d = static_cast<Eigen::Index>(rows.cols());
  if (d < k) throw ValidationError("pca: dimension smaller than k");

  const std::vector<double> mean = kernels::parallel::column_mean(rows);
  Eigen::MatrixXd centered(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) centered(i, j) = rows(i, j) - mean[j];
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  Eigen::MatrixXd v = svd.matrixV().leftCols(k);

  for (int c = 0; c < k; ++c) {
    Eigen::Index arg = 0;
    v.col(c).cwiseAbs().maxCoeff(&arg);
    if (v(arg, c) < 0.0) v.col(c) *= -1.0;
  }
  const Eigen::MatrixXd proj = centered * v;

  PcaResult r;
  r.k = k;
  r.dim = static_cast<int>(d);
  const double tol = sigma.size() > 0 ? sigma(0) * static_cast<double>(std::max(n, d)) *
                                            std::numeric_limits<double>::epsilon()
                                      : 0.0;
  for (Eigen::Index c = 0; c < sigma.size(); ++c) {
    if (sigma(c) > tol) ++r.effective_rank;
  }
  r.rank_deficient = r.effective_rank < k;
  for (int c = 0; c < k; ++c) {
    r.components.emplace_back(v.col(c).data(), v.col(c).data() + d);
    const double s = c < sigma.size() ? sigma(c) : 0.0;
    r.explained_variance.push_back(s * s / static_cast<double>(n - 1));
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    std::vector<double> row(k);
    for (int c = 0; c < k; ++c) row[c] = proj(i, c);
    r.projections.push_back(std::move(row));
    r.labels.push_back(deltas[i].category);
    r.pair_ids.push_back(deltas[i].pair_id);
  }
  return r;
}

std::vector<double> average_ranks(std::span<const double> x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return x[a] < x[b]; });
  std::vector<double> ranks(x.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = r;
    i = j + 1;
  }
  return ranks;
}

std::optional<double> spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("spearman: inputs differ in length");
  if (x.size() < 2) throw ValidationError("spearman: need at least two observations");
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!std::isfinite(x[k]) || !std::isfinite(y[k])) {
      throw ValidationError("spearman: non-finite input");
    }
  }
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double mean = (static_cast<double>(x.size()) + 1.0) / 2.0;
  CompensatedSum sxy;
  CompensatedSum sxx;
  CompensatedSum syy;
  for (std::size_t k = 0; k < rx.size(); ++k) {
    const double a = rx[k] - mean;
    const double b = ry[k] - mean;
    sxy.add(a * b);
    sxx.add(a * a);
    syy.add(b * b);
  }
  if (sxx.value() <= 0.0 || syy.value() <= 0.0) return std::nullopt;
  return std::clamp(sxy.value() / std::sqrt(sxx.value() * syy.value()), -1.0, 1.0);
}

}  // namespace probing
}  // namespace tunnelprobe
