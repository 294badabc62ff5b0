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

#ifndef TUNNELPROBE_PROBING_HPP_
#define TUNNELPROBE_PROBING_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tunnelprobe/annotation.hpp"

namespace tunnelprobe::probing {

// Fixed report order.
enum class Category { kLeft, kRight, kAbove, kBelow, kFar, kClose };
enum class Axis { kHorizontal, kVertical, kDistance };

inline constexpr std::array<Category, 6> kAllCategories = {
    Category::kLeft, Category::kRight, Category::kAbove,
    Category::kBelow, Category::kFar, Category::kClose};

std::string_view to_string(Category c);
std::string_view to_string(Axis a);
Category parse_category(std::string_view s);
Axis parse_axis(std::string_view s);

Axis axis_of(Category c);
// left, above and far are canonical; right, below and close are opposite.
Category canonical_of(Axis a);
Category opposite_of(Category c);

struct ProbeQuestion {
  std::string question_id;
  std::string example_id;
  std::string text;

  bool operator==(const ProbeQuestion&) const = default;
};

struct SwapPair {
  std::string pair_id;
  std::string q_original;
  std::string q_swapped;
  Category category = Category::kLeft;  // relation answered by the original question

  Axis axis() const { return axis_of(category); }
  bool operator==(const SwapPair&) const = default;
};

struct SwapPairSet {
  std::vector<ProbeQuestion> questions;
  std::vector<SwapPair> pairs;
  int skipped_no_distractor = 0;
};

/// Builds one contrastive pair per annotation. Horizontal and vertical
/// examples swap the two named objects. Distance examples take the correct
/// option as target and draw the reference uniformly from the remaining
/// options using a stream keyed by (seed, example_id); the swapped question
/// exchanges the two roles. Distance examples without distractors are
/// skipped and counted.
SwapPairSet build_swap_pairs(std::span<const AnnotationRecord> examples, std::uint64_t seed);

struct DeltaVector {
  std::string pair_id;
  Category category = Category::kLeft;
  std::vector<double> delta;
};

// h_swapped - h_original. Throws ValidationError on dimension mismatch.
std::vector<double> delta(std::span<const double> h_swapped, std::span<const double> h_original);

// Hidden state lookup for one layer, keyed by question id.
using LayerStates = std::map<std::string, std::vector<double>, std::less<>>;

// One delta per pair; throws ValidationError when a pair references a
// question absent from `states`.
std::vector<DeltaVector> compute_deltas(std::span<const SwapPair> pairs,
                                        const LayerStates& states);

/// Mean pairwise cosine similarity of the sign-corrected deltas on one axis.
/// Deltas of the opposite category are negated first. nullopt when fewer
/// than two deltas lie on the axis; a zero-norm delta throws
/// ValidationError naming its pair.
std::optional<double> axis_coherence(std::span<const DeltaVector> deltas, Axis axis);
std::optional<double> axis_coherence(std::span<const DeltaVector> deltas, Axis axis,
                                     Category canonical);

struct CategoryStats {
  Category category = Category::kLeft;
  std::vector<double> mean;
  int count = 0;
};

using CategoryStatsMap = std::map<Category, CategoryStats>;

CategoryStatsMap category_stats(std::span<const DeltaVector> deltas);

// Throws ValidationError when either vector is shorter than kMinNorm.
double cosine(std::span<const double> a, std::span<const double> b);

/// VD-Entanglement Index over the above/below/far/close means:
/// (cos(above, far) + cos(below, close) - cos(above, close) - cos(below, far)) / 4.
double vd_ei(const CategoryStatsMap& stats);

using SimilarityMatrix = std::array<std::array<double, 6>, 6>;

// Cosine between category means in kAllCategories order.
SimilarityMatrix similarity_matrix(const CategoryStatsMap& stats);

struct CoherenceReport {
  int layer = 0;
  std::optional<double> coh_horizontal;
  std::optional<double> coh_vertical;
  std::optional<double> coh_distance;
  std::optional<double> vd_ei;  // nullopt when a vertical/distance category is absent
  int n_horizontal = 0;
  int n_vertical = 0;
  int n_distance = 0;

  std::optional<double> coherence(Axis a) const;
};

CoherenceReport coherence_report(std::span<const DeltaVector> deltas, int layer);

struct PcaResult {
  int k = 0;
  int dim = 0;
  std::vector<std::vector<double>> components;  // k rows of length dim, orthonormal
  std::vector<double> explained_variance;       // non-increasing
  std::vector<std::vector<double>> projections; // one row of length k per delta
  std::vector<Category> labels;
  std::vector<std::string> pair_ids;
  int effective_rank = 0;
  bool rank_deficient = false;  // effective_rank < k
};

/// PCA of the deltas through a thin SVD of the mean-centered matrix.
/// Explained variance is sigma^2 / (N - 1). Each component is signed so
/// that its largest-magnitude entry is positive. Requires N >= k + 1 and
/// dim >= k.
PcaResult pca(std::span<const DeltaVector> deltas, int k);

// Pearson correlation of average ranks; nullopt when either input has zero
// rank variance. Throws ValidationError for mismatched or short inputs.
std::optional<double> spearman(std::span<const double> x, std::span<const double> y);

// Average ranks (1-based); ties share the mean of their positions.
std::vector<double> average_ranks(std::span<const double> x);

}  // namespace tunnelprobe::probing

#endif  // TUNNELPROBE_PROBING_HPP_
