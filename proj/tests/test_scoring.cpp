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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tunnelprobe/error.hpp"

namespace tunnelprobe::scoring {
namespace {

LogitRecord rec(std::string id, double yes, double no, std::optional<std::string> text = {}) {
  return {std::move(id), yes, no, std::move(text)};
}

QuestionRecord q(std::string scene, int t) {
  QuestionRecord r;
  r.scene_id = scene;
  r.question_id = scene + "-q" + std::to_string(t);
  r.template_id = t;
  r.ground_truth = (t % 2 == 0) ? Answer::kYes : Answer::kNo;
  r.queried_pair = {"a", "b"};
  return r;
}

TEST(Correctness, Values) {
  EXPECT_DOUBLE_EQ(correctness(rec("x", 1.5, 1.5), Answer::kYes), 0.5);
  EXPECT_NEAR(correctness(rec("x", 2, 0), Answer::kYes), 0.880797, 1e-6);
  EXPECT_NEAR(correctness(rec("x", 2, 0), Answer::kNo), 0.119203, 1e-6);
}

TEST(Correctness, AntisymmetryShiftInvarianceAndRange) {
  std::mt19937_64 gen(1);
  std::normal_distribution<double> n(0, 4);
  for (int i = 0; i < 2000; ++i) {
    const double y = n(gen), o = n(gen), c = 10 * n(gen);
    const auto r = rec("x", y, o);
    const double a = correctness(r, Answer::kYes), b = correctness(r, Answer::kNo);
    EXPECT_NEAR(a + b, 1.0, 1e-15);
    EXPECT_GT(a, 0.0);
    EXPECT_LT(a, 1.0);
    EXPECT_NEAR(correctness(rec("x", y + c, o + c), Answer::kYes), a, 1e-12);
  }
  EXPECT_THROW(correctness(rec("x", NAN, 0), Answer::kYes), ValidationError);
}

TEST(ExactMatch, Normalization) {
  EXPECT_EQ(parse_yes_no("Yes."), Answer::kYes);
  EXPECT_EQ(parse_yes_no("  NO, the cube"), Answer::kNo);
  EXPECT_EQ(parse_yes_no("\"yes\""), Answer::kYes);
  EXPECT_EQ(parse_yes_no("no the sphere is nearer"), Answer::kNo);
  EXPECT_FALSE(parse_yes_no("maybe").has_value());
  EXPECT_FALSE(parse_yes_no("yesterday").has_value());
  EXPECT_FALSE(parse_yes_no("").has_value());

  EXPECT_EQ(exact_match(rec("x", 0, 0, "Yes."), Answer::kYes).score, 1.0);
  EXPECT_EQ(exact_match(rec("x", 0, 0, "no the sphere is nearer"), Answer::kYes).score, 0.0);
  const auto m = exact_match(rec("x", 0, 0, "maybe"), Answer::kYes);
  EXPECT_EQ(m.score, 0.0);
  EXPECT_TRUE(m.parse_failure);
  EXPECT_TRUE(exact_match(rec("x", 0, 0), Answer::kYes).parse_failure);
}

// Two consistent scenes, one counter scene, one ambiguous scene.
struct SplitFixture {
  std::vector<QuestionRecord> questions;
  std::vector<LogitRecord> records;
  std::map<std::string, HeuristicLabel> labels;
};

SplitFixture split_fixture() {
  SplitFixture f;
  const std::pair<const char*, HeuristicLabel> scenes[] = {
      {"a", HeuristicLabel::kConsistent},
      {"b", HeuristicLabel::kConsistent},
      {"c", HeuristicLabel::kCounter},
      {"d", HeuristicLabel::kAmbiguous}};
  // Per-scene number of correct templates out of 4 in exact-match mode.
  const int correct[] = {4, 2, 1, 3};
  for (int s = 0; s < 4; ++s) {
    f.labels[scenes[s].first] = scenes[s].second;
    for (int t = 1; t <= 4; ++t) {
      auto qr = q(scenes[s].first, t);
      const bool right = t <= correct[s];
      const bool yes = (qr.ground_truth == Answer::kYes) == right;
      f.records.push_back(rec(qr.question_id, yes ? 5 : -5, yes ? -5 : 5, yes ? "Yes" : "No"));
      f.questions.push_back(qr);
    }
  }
  return f;
}

TEST(Aggregate, TemplatesThenScenesThenSplits) {
  const auto f = split_fixture();
  const auto r = aggregate(f.records, f.questions, f.labels, {ScoreMode::kExactMatch, false});
  EXPECT_DOUBLE_EQ(*r.v_consistent, 0.75);
  EXPECT_DOUBLE_EQ(*r.v_counter, 0.25);
  EXPECT_DOUBLE_EQ(*r.gap, 0.5);
  EXPECT_NEAR(*r.v_mean, (1.0 + 0.5 + 0.25) / 3, 1e-15);
  EXPECT_EQ(r.n_consistent, 2);
  EXPECT_EQ(r.n_counter, 1);
  EXPECT_EQ(r.n_ambiguous, 1);
  EXPECT_EQ(r.n_questions, 16);

  const auto inc = aggregate(f.records, f.questions, f.labels, {ScoreMode::kExactMatch, true});
  EXPECT_NEAR(*inc.v_mean, (1.0 + 0.5 + 0.25 + 0.75) / 4, 1e-15);
  EXPECT_DOUBLE_EQ(*inc.gap, 0.5);
}

TEST(Aggregate, PermutationInvariant) {
  auto f = split_fixture();
  const auto base = aggregate(f.records, f.questions, f.labels);
  std::mt19937_64 gen(4);
  for (int i = 0; i < 10; ++i) {
    std::shuffle(f.records.begin(), f.records.end(), gen);
    std::shuffle(f.questions.begin(), f.questions.end(), gen);
    const auto r = aggregate(f.records, f.questions, f.labels);
    EXPECT_EQ(*r.v_mean, *base.v_mean);
    EXPECT_EQ(*r.gap, *base.gap);
  }
}

TEST(Aggregate, Errors) {
  auto f = split_fixture();
  auto missing = f.records;
  missing.pop_back();
  try {
    aggregate(missing, f.questions, f.labels);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("d-q4"), std::string::npos);
  }
  auto dangling = f.records;
  dangling.push_back(rec("zzz", 0, 0));
  EXPECT_THROW(aggregate(dangling, f.questions, f.labels), ValidationError);
  auto dup = f.records;
  dup.push_back(dup.front());
  EXPECT_THROW(aggregate(dup, f.questions, f.labels), ValidationError);
  auto no_label = f.labels;
  no_label.erase("c");
  EXPECT_THROW(aggregate(f.records, f.questions, no_label), ValidationError);
}

TEST(Aggregate, ParseFailuresCounted) {
  auto f = split_fixture();
  f.records[0].answer_text = "perhaps";
  const auto r = aggregate(f.records, f.questions, f.labels, {ScoreMode::kExactMatch, false});
  EXPECT_EQ(r.parse_failures, 1);
  EXPECT_DOUBLE_EQ(*r.v_consistent, 0.625);
}

TEST(Wilson, MatchesPublishedAndClosedForm) {
  const auto a = wilson_ci(105, 124);
  EXPECT_NEAR(round_pp(a.point), 84.7, 1e-9);
  EXPECT_NEAR(round_pp(a.low), 77.3, 1e-9);
  EXPECT_NEAR(round_pp(a.high), 90.0, 1e-9);
  const auto b = wilson_ci(129, 143);
  EXPECT_NEAR(round_pp(b.point), 90.2, 1e-9);
  EXPECT_NEAR(round_pp(b.low), 84.2, 1e-9);
  EXPECT_NEAR(round_pp(b.high), 94.1, 1e-9);
  for (int n : {1, 7, 50, 333}) {
    for (int k = 0; k <= n; k += std::max(1, n / 9)) {
      const auto w = wilson_ci(k, n);
      const auto o = testing::oracle_wilson(k, n, kZ95);
      EXPECT_NEAR(w.low, o.low, 1e-9);
      EXPECT_NEAR(w.high, o.high, 1e-9);
      EXPECT_LE(w.low, w.point);
      EXPECT_LE(w.point, w.high);
      EXPECT_GE(w.low, 0.0);
      EXPECT_LE(w.high, 100.0);
      const auto r = wilson_ci(n - k, n);
      EXPECT_NEAR(w.low, 100.0 - r.high, 1e-9);
      EXPECT_NEAR(w.high, 100.0 - r.low, 1e-9);
    }
  }
  EXPECT_EQ(wilson_ci(0, 10).low, 0.0);
  EXPECT_EQ(wilson_ci(10, 10).high, 100.0);
  EXPECT_THROW(wilson_ci(0, 0), ValidationError);
  EXPECT_THROW(wilson_ci(5, 4), ValidationError);
}

TEST(Modes, Parse) {
  EXPECT_EQ(parse_mode("logit"), ScoreMode::kLogit);
  EXPECT_EQ(parse_mode("exact"), ScoreMode::kExactMatch);
  EXPECT_THROW(parse_mode("fuzzy"), ValidationError);
  EXPECT_EQ(parse_filter("counter"), SubsetFilter::kCounterOnly);
  EXPECT_THROW(parse_filter("all"), ValidationError);
}

}  // namespace
}  // namespace tunnelprobe::scoring
