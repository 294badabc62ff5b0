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

#include "tunnelprobe/scoring.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

#include "tunnelprobe/error.hpp"
#include "tunnelprobe/kernels.hpp"
#include "tunnelprobe/numeric.hpp"

namespace tunnelprobe::scoring {
namespace {

constexpr std::size_t kMaxListedIds = 10;

std::string list_ids(const std::vector<std::string>& ids) {
  std::string out;
  for (std::size_t k = 0; k < ids.size() && k < kMaxListedIds; ++k) {
    if (k) out += ", ";
    out += ids[k];
  }
  if (ids.size() > kMaxListedIds) {
    out += ", ... (" + std::to_string(ids.size()) + " total)";
  }
  return out;
}

double oriented_margin(const LogitRecord& r, Answer gt) {
  if (!std::isfinite(r.logit_yes) || !std::isfinite(r.logit_no)) {
    throw ValidationError("non-finite logits in record " + r.question_id);
  }
  const double m = r.logit_yes - r.logit_no;
  return gt == Answer::kYes ? m : -m;
}

struct Mean {
  CompensatedSum sum;
  int count = 0;

  void add(double x) {
    sum.add(x);
    ++count;
  }
  std::optional<double> value() const {
    if (count == 0) return std::nullopt;
    return sum.value() / count;
  }
};

}  // namespace

std::string_view to_string(ScoreMode m) {
  return m == ScoreMode::kLogit ? "logit" : "exact_match";
}

ScoreMode parse_mode(std::string_view s) {
  if (s == "logit") return ScoreMode::kLogit;
  if (s == "exact" || s == "exact_match") return ScoreMode::kExactMatch;
  throw ValidationError("unknown scoring mode '" + std::string(s) + "'");
}

std::string_view to_string(SubsetFilter f) {
  switch (f) {
    case SubsetFilter::kNone: return "none";
    case SubsetFilter::kConsistentOnly: return "consistent";
    case SubsetFilter::kCounterOnly: return "counter";
  }
  return "none";
}

SubsetFilter parse_filter(std::string_view s) {
  if (s == "none") return SubsetFilter::kNone;
  if (s == "consistent") return SubsetFilter::kConsistentOnly;
  if (s == "counter") return SubsetFilter::kCounterOnly;
  throw ValidationError("unknown subset filter '" + std::string(s) + "'");
}

double correctness(const LogitRecord& record, Answer ground_truth) {
  return kernels::logistic(oriented_margin(record, ground_truth));
}

std::optional<Answer> parse_yes_no(std::string_view text) {
  std::string token;
  for (char c : text) {
    const auto uc = static_cast<unsigned char>(c);
    if (std::isalpha(uc)) {
      token += static_cast<char>(std::tolower(uc));
    } else if (std::isspace(uc) || std::ispunct(uc)) {
      if (!token.empty()) break;
    } else {
      if (!token.empty()) break;
      return std::nullopt;
    }
  }
  if (token == "yes") return Answer::kYes;
  if (token == "no") return Answer::kNo;
  return std::nullopt;
}

ExactMatch exact_match(const LogitRecord& record, Answer ground_truth) {
  if (!record.answer_text) return {0.0, true};
  const auto parsed = parse_yes_no(*record.answer_text);
  if (!parsed) return {0.0, true};
  return {*parsed == ground_truth ? 1.0 : 0.0, false};
}

SceneScores score_scenes(std::span<const LogitRecord> records,
                         std::span<const QuestionRecord> questions, ScoreMode mode) {
  std::unordered_map<std::string_view, const LogitRecord*> by_id;
  by_id.reserve(records.size());
  for (const auto& r : records) {
    if (!by_id.emplace(r.question_id, &r).second) {
      throw ValidationError("duplicate logit record for question " + r.question_id);
    }
  }
  std::unordered_map<std::string_view, std::size_t> question_index;
  question_index.reserve(questions.size());
  for (std::size_t k = 0; k < questions.size(); ++k) {
    if (!question_index.emplace(questions[k].question_id, k).second) {
      throw ValidationError("duplicate question id " + questions[k].question_id);
    }
  }
  std::vector<std::string> dangling;
  for (const auto& r : records) {
    if (!question_index.contains(r.question_id)) dangling.push_back(r.question_id);
  }
  if (!dangling.empty()) {
    std::sort(dangling.begin(), dangling.end());
    throw ValidationError("dangling reference: logit records for unknown questions: " +
                          list_ids(dangling));
  }
  std::vector<std::string> missing;
  std::vector<const LogitRecord*> joined(questions.size());
  for (std::size_t k = 0; k < questions.size(); ++k) {
    auto it = by_id.find(questions[k].question_id);
    if (it == by_id.end()) {
      missing.push_back(questions[k].question_id);
    } else {
      joined[k] = it->second;
    }
  }
  if (!missing.empty()) {
    std::sort(missing.begin(), missing.end());
    throw ValidationError("missing logit records for questions: " + list_ids(missing));
  }

  SceneScores out;
  out.n_questions = static_cast<int>(questions.size());
  std::vector<double> score(questions.size());
  if (mode == ScoreMode::kLogit) {
    std::vector<double> margins(questions.size());
    for (std::size_t k = 0; k < questions.size(); ++k) {
      margins[k] = oriented_margin(*joined[k], questions[k].ground_truth);
    }
    kernels::parallel::logistic(margins, score);
  } else {
    for (std::size_t k = 0; k < questions.size(); ++k) {
      const auto m = exact_match(*joined[k], questions[k].ground_truth);
      score[k] = m.score;
      if (m.parse_failure) ++out.parse_failures;
    }
  }

  // Reduce in question-id order so the result ignores input order.
  std::vector<std::size_t> order(questions.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return questions[a].question_id < questions[b].question_id;
  });
  std::map<std::string, Mean> per_scene;
  for (std::size_t k : order) per_scene[questions[k].scene_id].add(score[k]);
  for (const auto& [scene, mean] : per_scene) out.by_scene.emplace(scene, *mean.value());
  return out;
}

SplitReport aggregate(std::span<const LogitRecord> records,
                      std::span<const QuestionRecord> questions,
                      const std::map<std::string, HeuristicLabel>& labels,
                      const AggregateOptions& options) {
  const SceneScores scores = score_scenes(records, questions, options.mode);
  Mean consistent;
  Mean counter;
  Mean overall;
  int ambiguous = 0;
  for (const auto& [scene, v] : scores.by_scene) {
    auto it = labels.find(scene);
    if (it == labels.end()) throw ValidationError("no heuristic label for scene " + scene);
    switch (it->second) {
      case HeuristicLabel::kConsistent:
        consistent.add(v);
        overall.add(v);
        break;
      case HeuristicLabel::kCounter:
        counter.add(v);
        overall.add(v);
        break;
      case HeuristicLabel::kAmbiguous:
        ++ambiguous;
        if (options.include_ambiguous) overall.add(v);
        break;
    }
  }
  SplitReport r;
  r.mode = options.mode;
  r.include_ambiguous = options.include_ambiguous;
  r.v_mean = overall.value();
  r.v_consistent = consistent.value();
  r.v_counter = counter.value();
  if (r.v_consistent && r.v_counter) r.gap = *r.v_consistent - *r.v_counter;
  r.n_consistent = consistent.count;
  r.n_counter = counter.count;
  r.n_ambiguous = ambiguous;
  r.n_questions = scores.n_questions;
  r.parse_failures = scores.parse_failures;
  return r;
}

CellHeatmap heatmap(std::span<const LogitRecord> records,
                    std::span<const QuestionRecord> questions,
                    std::span<const SceneInstance> scenes, int slots, ScoreMode mode,
                    SubsetFilter filter) {
  if (slots <= 0) throw ValidationError("heatmap: slots must be positive");
  const SceneScores scores = score_scenes(records, questions, mode);
  const std::size_t cells = static_cast<std::size_t>(slots) * slots;
  std::vector<Mean> means(cells);
  std::vector<std::array<int, 3>> votes(cells, {0, 0, 0});
  // Scenes are visited in id order for a fixed reduction order.
  std::vector<const SceneInstance*> sorted;
  for (const auto& s : scenes) sorted.push_back(&s);
  std::sort(sorted.begin(), sorted.end(),
            [](auto* a, auto* b) { return a->scene_id < b->scene_id; });
  for (const SceneInstance* s : sorted) {
    if (s->cell_i < 0 || s->cell_i >= slots || s->cell_j < 0 || s->cell_j >= slots) {
      throw ValidationError("heatmap: scene " + s->scene_id + " outside the grid");
    }
    auto it = scores.by_scene.find(s->scene_id);
    if (it == scores.by_scene.end()) {
      throw ValidationError("heatmap: no questions scored for scene " + s->scene_id);
    }
    const std::size_t cell = static_cast<std::size_t>(s->cell_i) * slots + s->cell_j;
    ++votes[cell][static_cast<int>(s->heuristic_label)];
    const bool keep = filter == SubsetFilter::kNone ||
                      (filter == SubsetFilter::kConsistentOnly &&
                       s->heuristic_label == HeuristicLabel::kConsistent) ||
                      (filter == SubsetFilter::kCounterOnly &&
                       s->heuristic_label == HeuristicLabel::kCounter);
    if (keep) means[cell].add(it->second);
  }
  CellHeatmap h;
  h.slots = slots;
  h.filter = filter;
  h.grid.resize(cells);
  h.labels.resize(cells, HeuristicLabel::kAmbiguous);
  for (std::size_t c = 0; c < cells; ++c) {
    h.grid[c] = means[c].value();
    const auto& v = votes[c];
    if (v[0] > v[1] && v[0] > v[2]) {
      h.labels[c] = HeuristicLabel::kConsistent;
    } else if (v[1] > v[0] && v[1] > v[2]) {
      h.labels[c] = HeuristicLabel::kCounter;
    }
  }
  return h;
}

SizeSweepReport size_sweep_report(std::span<const LogitRecord> records,
                                  std::span<const QuestionRecord> questions,
                                  std::span<const SceneInstance> sweep_scenes, ScoreMode mode) {
  const auto sweep = tunnelgen::SizeSweepConfig::standard();
  const SceneScores scores = score_scenes(records, questions, mode);
  std::vector<Mean> buckets(tunnelgen::kSizeSweepSteps);
  std::vector<const SceneInstance*> sorted;
  for (const auto& s : sweep_scenes) sorted.push_back(&s);
  std::sort(sorted.begin(), sorted.end(),
            [](auto* a, auto* b) { return a->scene_id < b->scene_id; });
  for (const SceneInstance* s : sorted) {
    if (!s->size_s1) throw ValidationError("size sweep: scene " + s->scene_id + " has no s1 tag");
    int bucket = -1;
    for (int k = 0; k < tunnelgen::kSizeSweepSteps; ++k) {
      if (std::fabs(*s->size_s1 - sweep.s1_values[k]) < 1e-9) bucket = k;
    }
    if (bucket < 0) {
      throw ValidationError("size sweep: scene " + s->scene_id + " has off-grid s1 " +
                            std::to_string(*s->size_s1));
    }
    auto it = scores.by_scene.find(s->scene_id);
    if (it == scores.by_scene.end()) {
      throw ValidationError("size sweep: no questions scored for scene " + s->scene_id);
    }
    buckets[bucket].add(it->second);
  }
  SizeSweepReport r;
  r.mode = mode;
  for (int k = 0; k < tunnelgen::kSizeSweepSteps; ++k) {
    const auto v = buckets[k].value();
    if (!v) {
      throw ValidationError("size sweep: no scenes in bucket s1=" +
                            std::to_string(sweep.s1_values[k]));
    }
    r.s1_values.push_back(sweep.s1_values[k]);
    r.v_by_s1.push_back(*v);
    r.scenes_by_s1.push_back(buckets[k].count);
  }
  r.v_s1_min = r.v_by_s1.front();
  r.v_s1_max = r.v_by_s1.back();
  r.size_gap = r.v_s1_min - r.v_s1_max;
  return r;
}

WilsonInterval wilson_ci(int successes, int n, double z) {
  if (n <= 0) throw ValidationError("wilson_ci: n must be positive");
  if (successes < 0 || successes > n) {
    throw ValidationError("wilson_ci: successes must lie in [0, n]");
  }
  if (!(z > 0.0)) throw ValidationError("wilson_ci: z must be positive");
  const double nn = n;
  const double p = successes / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  WilsonInterval w;
  w.successes = successes;
  w.n = n;
  w.z = z;
  w.point = 100.0 * p;
  w.low = successes == 0 ? 0.0 : std::max(0.0, 100.0 * (center - half));
  w.high = successes == n ? 100.0 : std::min(100.0, 100.0 * (center + half));
  return w;
}

double round_pp(double percent) { return std::round(percent * 10.0) / 10.0; }

}  // namespace tunnelprobe::scoring
