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

#include "tunnelprobe/cli.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "json.hpp"
#include "oracles.hpp"
#include "tunnelprobe/formats.hpp"
#include "tunnelprobe/report.hpp"
#include "tunnelprobe/sprb.hpp"

namespace tunnelprobe::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("tunnelprobe_cli_" + std::string(::testing::UnitTest::GetInstance()
                                                 ->current_test_info()
                                                 ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int cli(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return run(args, out_, err_);
  }
  std::string p(const std::string& name) const { return (dir_ / name).string(); }
  json payload(const std::string& name) const {
    return report::read(dir_ / name).payload;
  }

  void make_grid(int instances = 1) {
    ASSERT_EQ(cli({"gen-tunnel", "--seed", "42", "--instances", std::to_string(instances),
                   "--out", p("m.json")}),
              0)
        << err_.str();
    ASSERT_EQ(cli({"gen-qa", "--manifest", p("m.json"), "--out", p("qa.jsonl")}), 0);
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(Cli, UsageAndExitCodes) {
  EXPECT_EQ(cli({"--help"}), 0);
  EXPECT_NE(out_.str().find("gen-tunnel"), std::string::npos);
  EXPECT_EQ(cli({}), 1);
  EXPECT_EQ(cli({"frobnicate"}), 1);
  EXPECT_NE(err_.str().find("Usage"), std::string::npos);
  EXPECT_EQ(cli({"gen-tunnel", "--out", p("x.json")}), 1);
  EXPECT_EQ(cli({"gen-tunnel", "--seed", "1", "--bogus", "--out", p("x.json")}), 1);
  EXPECT_EQ(cli({"gen-qa", "--manifest", p("missing.json"), "--out", p("q.jsonl")}), 2);
  EXPECT_EQ(cli({"gen-tunnel", "--seed", "1", "--z-far", "2", "--out", p("x.json")}), 1);
}

TEST_F(Cli, GenTunnelDefaultCardinality) {
  make_grid(12);
  const auto m = formats::read_manifest(dir_ / "m.json");
  EXPECT_EQ(m.scenes.size(), 3072u);
  EXPECT_EQ(formats::parse_qa(formats::read_file(dir_ / "qa.jsonl")).size(), 12288u);
}

TEST_F(Cli, HeightHeuristicScoresGapOne) {
  make_grid();
  ASSERT_EQ(cli({"mock-run", "--manifest", p("m.json"), "--qa", p("qa.jsonl"), "--agent",
                 "height-heuristic", "--out", p("l.jsonl")}),
            0);
  ASSERT_EQ(cli({"score", "--manifest", p("m.json"), "--qa", p("qa.jsonl"), "--logits",
                 p("l.jsonl"), "--mode", "exact", "--heatmap", "--out", p("s.json")}),
            0)
      << err_.str();
  const auto rep = report::read(dir_ / "s.json");
  EXPECT_EQ(rep.payload["split"]["gap"], 1.0);
  EXPECT_EQ(rep.inputs.size(), 3u);
  EXPECT_EQ(rep.config["mode"], "exact_match");
  EXPECT_EQ(rep.payload["heatmap"]["grid"].size(), 16u);
  EXPECT_TRUE(rep.payload.contains("ambiguous_policy"));
}

TEST_F(Cli, NoisyOracleNeedsSeed) {
  make_grid();
  EXPECT_EQ(cli({"mock-run", "--manifest", p("m.json"), "--qa", p("qa.jsonl"), "--agent",
                 "noisy-oracle", "--epsilon", "0.5", "--out", p("l.jsonl")}),
            1);
  EXPECT_EQ(cli({"mock-run", "--manifest", p("m.json"), "--qa", p("qa.jsonl"), "--agent",
                 "psychic", "--out", p("l.jsonl")}),
            1);
}

TEST_F(Cli, ScoreRejectsBrokenInputs) {
  make_grid();
  formats::write_file_atomic(dir_ / "bad.jsonl", "not json\n");
  EXPECT_EQ(cli({"score", "--manifest", p("m.json"), "--qa", p("qa.jsonl"), "--logits",
                 p("bad.jsonl"), "--out", p("s.json")}),
            2);
  EXPECT_NE(err_.str().find("bad.jsonl:1"), std::string::npos);
  formats::write_file_atomic(
      dir_ / "dangling.jsonl",
      formats::serialize_logits({{"st-99-99-99-q1", 1, 0, std::nullopt}}));
  EXPECT_EQ(cli({"score", "--manifest", p("m.json"), "--qa", p("qa.jsonl"), "--logits",
                 p("dangling.jsonl"), "--out", p("s.json")}),
            1);
  EXPECT_NE(err_.str().find("st-99-99-99-q1"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir_ / "s.json"));
}

TEST_F(Cli, ClassifyManifestAndAnnotations) {
  make_grid();
  ASSERT_EQ(cli({"classify", "--manifest", p("m.json"), "--out", p("c.json")}), 0);
  const auto c = payload("c.json");
  EXPECT_EQ(c["stored_label_agreement"]["agree"], 256);
  EXPECT_EQ(c["distribution"]["total"], 256);

  std::vector<AnnotationRecord> recs(2);
  recs[0] = {"a", "far", 100.0, 400.0, 1000, {}, {"x", "y"}, 0};
  recs[1] = {"b", "far", 400.0, 420.0, 1000, {}, {"x", "y"}, 1};
  formats::write_file_atomic(dir_ / "ann.jsonl", formats::serialize_annotations(recs));
  ASSERT_EQ(cli({"classify", "--annotations", p("ann.jsonl"), "--out", p("ca.json")}), 0);
  const auto a = payload("ca.json");
  EXPECT_EQ(a["labels"]["a"], "consistent");
  EXPECT_EQ(a["labels"]["b"], "ambiguous");
  EXPECT_EQ(a["distribution"]["ambiguous"], 1);
  EXPECT_EQ(cli({"classify", "--out", p("x.json")}), 1);
}

TEST_F(Cli, SizeReport) {
  ASSERT_EQ(cli({"gen-size-sweep", "--seed", "3", "--out", p("sw.json")}), 0);
  ASSERT_EQ(cli({"gen-qa", "--manifest", p("sw.json"), "--out", p("q.jsonl")}), 0);
  ASSERT_EQ(cli({"mock-run", "--manifest", p("sw.json"), "--qa", p("q.jsonl"), "--agent",
                 "size-heuristic", "--out", p("l.jsonl")}),
            0);
  ASSERT_EQ(cli({"size-report", "--manifest", p("sw.json"), "--qa", p("q.jsonl"), "--logits",
                 p("l.jsonl"), "--mode", "exact", "--out", p("r.json")}),
            0);
  const auto r = payload("r.json");
  EXPECT_EQ(r["size_sweep"]["size_gap"], 1.0);
  EXPECT_EQ(r["size_sweep"]["s1_values"].size(), 11u);
}

// One pair per category with the original state at the origin, so each
// delta is the swapped state itself.
void write_fixture_states(const fs::path& dir) {
  const double r = std::sqrt(2.0) / 2;
  const std::vector<std::pair<probing::Category, std::vector<double>>> dirs = {
      {probing::Category::kLeft, {0, 0, 1}}, {probing::Category::kRight, {0, 0, -1}},
      {probing::Category::kAbove, {1, 0, 0}}, {probing::Category::kBelow, {-1, 0, 0}},
      {probing::Category::kFar, {r, r, 0}},   {probing::Category::kClose, {-r, -r, 0}}};
  std::vector<probing::SwapPair> pairs;
  std::vector<sprb::HiddenStateRecord> states;
  for (int layer = 0; layer < 6; ++layer) {
    for (const auto& [c, v] : dirs) {
      for (int copy = 0; copy < 2; ++copy) {
        const std::string id = std::string(probing::to_string(c)) + std::to_string(copy);
        if (layer == 0) pairs.push_back({id, id + "-orig", id + "-swap", c});
        states.push_back({id + "-orig", layer, {0, 0, 0}});
        auto s = v;
        for (double& e : s) e *= 1.0 + 0.1 * layer;
        states.push_back({id + "-swap", layer, s});
      }
    }
  }
  formats::write_file_atomic(dir / "pairs.jsonl", formats::serialize_swap_pairs(pairs));
  sprb::write_hidden_states(dir / "h.sprb", 3, states);
}

TEST_F(Cli, ProbeSelectLayerPipeline) {
  write_fixture_states(dir_);
  ASSERT_EQ(cli({"probe", "--hidden", p("h.sprb"), "--pairs", p("pairs.jsonl"), "--layer", "2",
                 "--out", p("probe.json")}),
            0)
      << err_.str();
  const auto pr = payload("probe.json");
  EXPECT_EQ(pr["trajectories"].size(), 6u);
  EXPECT_NEAR(pr["detail"]["coherence"]["vd_ei"].get<double>(), 0.70710, 1e-5);
  EXPECT_EQ(pr["detail"]["pca"]["components"].size(), 2u);
  EXPECT_EQ(pr["detail"]["similarity"]["matrix"].size(), 6u);

  ASSERT_EQ(cli({"select-layer", "--probe-report", p("probe.json"), "--total-layers", "6",
                 "--out", p("sel.json")}),
            0)
      << err_.str();
  const auto sel = payload("sel.json")["selection"];
  EXPECT_EQ(sel["selected_layer"], 3);
  EXPECT_EQ(sel["flat_plateau"], true);

  EXPECT_EQ(cli({"probe", "--hidden", p("h.sprb"), "--pairs", p("pairs.jsonl"), "--layer", "9",
                 "--out", p("x.json")}),
            1);
  formats::write_file_atomic(dir_ / "bad.sprb", "XXXXjunk");
  EXPECT_EQ(cli({"probe", "--hidden", p("bad.sprb"), "--pairs", p("pairs.jsonl"), "--out",
                 p("x.json")}),
            2);
}

TEST_F(Cli, ProbeRejectsUnknownHiddenStateQuestion) {
  write_fixture_states(dir_);
  formats::write_file_atomic(
      dir_ / "q.jsonl",
      formats::serialize_probe_questions({{"left0-orig", "left0", "Is the a to the left or right "
                                                                  "of the b?"}}));
  EXPECT_EQ(cli({"probe", "--hidden", p("h.sprb"), "--pairs", p("pairs.jsonl"), "--questions",
                 p("q.jsonl"), "--out", p("x.json")}),
            1);
  EXPECT_NE(err_.str().find("dangling reference"), std::string::npos);
}

TEST_F(Cli, BuildPairsAndLayerRobustness) {
  std::vector<AnnotationRecord> recs(3);
  recs[0] = {"h", "left", std::nullopt, std::nullopt, std::nullopt, {"a", "b"}, {}, std::nullopt};
  recs[1] = {"d", "far", std::nullopt, std::nullopt, std::nullopt, {}, {"a", "b", "c"}, 2};
  recs[2] = {"e", "close", std::nullopt, std::nullopt, std::nullopt, {}, {"a"}, 0};
  formats::write_file_atomic(dir_ / "ann.jsonl", formats::serialize_annotations(recs));
  ASSERT_EQ(cli({"build-pairs", "--annotations", p("ann.jsonl"), "--seed", "4", "--out-pairs",
                 p("pairs.jsonl"), "--out-questions", p("q.jsonl")}),
            0)
      << err_.str();
  EXPECT_EQ(formats::parse_swap_pairs(formats::read_file(dir_ / "pairs.jsonl")).size(), 2u);
  EXPECT_NE(out_.str().find("skipped 1"), std::string::npos);

  json table = {{"format", "tunnelprobe.coh_d_table"}, {"schema_version", 1}};
  for (const auto& m : testing::synthetic_coh_table()) {
    json coh = json::array();
    for (const auto& c : m.coh_d) coh.push_back(*c);
    table["models"].push_back({{"name", m.name},
                               {"coh_d", coh},
                               {"candidate_range", m.candidate_range},
                               {"reference", m.reference}});
  }
  formats::write_file_atomic(dir_ / "t.json", table.dump());
  ASSERT_EQ(cli({"layer-robustness", "--table", p("t.json"), "--seed", "1", "--out",
                 p("rob.json")}),
            0)
      << err_.str();
  EXPECT_EQ(payload("rob.json")["robustness"]["rho"].size(), 1000u);
  formats::write_file_atomic(dir_ / "t2.json", R"({"format":"other"})");
  EXPECT_EQ(cli({"layer-robustness", "--table", p("t2.json"), "--seed", "1", "--out",
                 p("rob.json")}),
            2);
}

TEST_F(Cli, RerunsAreByteIdentical) {
  auto stage = [&](const std::string& suffix) {
    std::vector<std::vector<std::string>> steps = {
        {"gen-tunnel", "--seed", "9", "--instances", "2", "--out", p("m.json")},
        {"gen-qa", "--manifest", p("m.json"), "--out", p("qa.jsonl")},
        {"mock-run", "--manifest", p("m.json"), "--qa", p("qa.jsonl"), "--agent",
         "noisy-oracle", "--epsilon", "0.3", "--seed", "5", "--out", p("l.jsonl")},
        {"score", "--manifest", p("m.json"), "--qa", p("qa.jsonl"), "--logits", p("l.jsonl"),
         "--heatmap", "--out", p("s.json")}};
    for (auto& s : steps) ASSERT_EQ(cli(s), 0) << err_.str();
    for (const char* f : {"m.json", "qa.jsonl", "l.jsonl", "s.json"}) {
      fs::copy_file(dir_ / f, dir_ / (std::string(f) + suffix));
    }
  };
  stage(".1");
  stage(".2");
  for (const char* f : {"m.json", "qa.jsonl", "l.jsonl", "s.json"}) {
    EXPECT_EQ(formats::read_file(dir_ / (std::string(f) + ".1")),
              formats::read_file(dir_ / (std::string(f) + ".2")))
        << f;
  }
}

}  // namespace
}  // namespace tunnelprobe::cli
