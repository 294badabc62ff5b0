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

#ifndef TUNNELPROBE_SCORING_HPP_
#define TUNNELPROBE_SCORING_HPP_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tunnelprobe/scene.hpp"
#include "tunnelprobe/tunnelgen.hpp"

namespace tunnelprobe::scoring {

enum class ScoreMode { kLogit, kExactMatch };

std::string_view to_string(ScoreMode m);
ScoreMode parse_mode(std::string_view s);

struct LogitRecord {
  std::string question_id;
  double logit_yes = 0.0;
  double logit_no = 0.0;
  std::optional<std::string> answer_text;

  bool operator==(const LogitRecord&) const = default;
};

/// Correctness under the logit protocol: p = logistic(yes - no) and the score
/// is p for a Yes ground truth, 1 - p for No.
double correctness(const LogitRecord& record, Answer ground_truth);

// Leading yes/no token after trimming, case folding and stripping
// punctuation; nullopt when the answer does not start with either.
std::optional<Answer> parse_yes_no(std::string_view text);

struct ExactMatch {
  double score = 0.0;  // 0 or 1
  bool parse_failure = false;
};

ExactMatch exact_match(const LogitRecord& record, Answer ground_truth);

// Per-scene correctness: template-level scores averaged per scene first.
struct SceneScores {
  std::map<std::string, double> by_scene;
  int n_questions = 0;
  int parse_failures = 0;
};

// Joins records to questions. Throws ValidationError for duplicate records,
// records without a question and questions without a record.
SceneScores score_scenes(std::span<const LogitRecord> records,
                         std::span<const QuestionRecord> questions, ScoreMode mode);

struct AggregateOptions {
  ScoreMode mode = ScoreMode::kLogit;
  bool include_ambiguous = false;  // whether ambiguous scenes enter v_mean
};

struct SplitReport {
  ScoreMode mode = ScoreMode::kLogit;
  bool include_ambiguous = false;
  std::optional<double> v_mean;
  std::optional<double> v_consistent;
  std::optional<double> v_counter;
  std::optional<double> gap;  // v_consistent - v_counter
  int n_consistent = 0;       // scenes
  int n_counter = 0;
  int n_ambiguous = 0;
  int n_questions = 0;
  int parse_failures = 0;
};

SplitReport aggregate(std::span<const LogitRecord> records,
                      std::span<const QuestionRecord> questions,
                      const std::map<std::string, HeuristicLabel>& labels,
                      const AggregateOptions& options = {});

enum class SubsetFilter { kNone, kConsistentOnly, kCounterOnly };

SubsetFilter parse_filter(std::string_view s);
std::string_view to_string(SubsetFilter f);

struct CellHeatmap {
  int slots = 0;
  SubsetFilter filter = SubsetFilter::kNone;
  std::vector<std::optional<double>> grid;  // row i = far theta, column j = near theta
  std::vector<HeuristicLabel> labels;       // majority label of each cell

  const std::optional<double>& at(int i, int j) const { return grid[i * slots + j]; }
  HeuristicLabel label(int i, int j) const { return labels[i * slots + j]; }
};

// Cells with no scene passing the filter are left empty, not zero.
CellHeatmap heatmap(std::span<const LogitRecord> records,
                    std::span<const QuestionRecord> questions,
                    std::span<const SceneInstance> scenes, int slots, ScoreMode mode,
                    SubsetFilter filter = SubsetFilter::kNone);

struct SizeSweepReport {
  ScoreMode mode = ScoreMode::kLogit;
  std::vector<double> s1_values;  // ascending
  std::vector<double> v_by_s1;
  std::vector<int> scenes_by_s1;
  double v_s1_min = 0.0;
  double v_s1_max = 0.0;
  double size_gap = 0.0;  // v at the smallest s1 minus v at the largest
};

SizeSweepReport size_sweep_report(std::span<const LogitRecord> records,
                                  std::span<const QuestionRecord> questions,
                                  std::span<const SceneInstance> sweep_scenes, ScoreMode mode);

inline constexpr double kZ95 = 1.959964;

// Values in percent.
struct WilsonInterval {
  double point = 0.0;
  double low = 0.0;
  double high = 0.0;
  int successes = 0;
  int n = 0;
  double z = kZ95;
};

WilsonInterval wilson_ci(int successes, int n, double z = kZ95);

// Presentation rounding to 0.1 percentage points.
double round_pp(double percent);

}  // namespace tunnelprobe::scoring

#endif  // TUNNELPROBE_SCORING_HPP_
