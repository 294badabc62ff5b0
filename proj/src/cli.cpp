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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>

#include "CLI11.hpp"
#include "json.hpp"
#include "tunnelprobe/agents.hpp"
#include "tunnelprobe/error.hpp"
#include "tunnelprobe/formats.hpp"
#include "tunnelprobe/heuristics.hpp"
#include "tunnelprobe/layers.hpp"
#include "tunnelprobe/probing.hpp"
#include "tunnelprobe/report.hpp"
#include "tunnelprobe/scoring.hpp"
#include "tunnelprobe/sprb.hpp"
#include "tunnelprobe/tunnelgen.hpp"

namespace tunnelprobe::cli {

using nlohmann::json;

namespace {

inline constexpr std::string_view kCohTableFormat = "tunnelprobe.coh_d_table";

struct TunnelFlags {
  std::uint64_t seed = 0;
  int instances = 12;
  double z_far = 6.0;
  double z_near = 3.0;
  double length = 12.0;
  double half_extent = 1.0;
  int slots = 16;
  double focal = 800.0;
  double camera_height = 1.0;
  int width = 1024;
  int height = 1024;
  std::string out;

  void add_to(CLI::App* cmd, int default_instances) {
    instances = default_instances;
    cmd->add_option("--seed", seed, "Master seed")->required();
    cmd->add_option("--instances", instances, "Scene instances per grid cell")->capture_default_str();
    cmd->add_option("--z-far", z_far, "Depth of the far object (m)")->capture_default_str();
    cmd->add_option("--z-near", z_near, "Depth of the near object (m)")->capture_default_str();
    cmd->add_option("--length", length, "Tunnel length (m)")->capture_default_str();
    cmd->add_option("--half-extent", half_extent, "Half the cross-section side (m)")
        ->capture_default_str();
    cmd->add_option("--slots", slots, "Angular slots on the cross-section")->capture_default_str();
    cmd->add_option("--focal", focal, "Focal length (px)")->capture_default_str();
    cmd->add_option("--camera-height", camera_height, "Camera height above the floor (m)")
        ->capture_default_str();
    cmd->add_option("--width", width, "Image width (px)")->capture_default_str();
    cmd->add_option("--height", height, "Image height (px)")->capture_default_str();
    cmd->add_option("--out", out, "Output manifest path")->required();
  }

  TunnelSpec spec() const {
    TunnelSpec s;
    s.half_extent = half_extent;
    s.length = length;
    s.angular_slots = slots;
    s.camera = geometry::CameraModel::centered(focal, camera_height, width, height);
    s.validate();
    return s;
  }
};

report::RunReport make_report(std::string kind, json config,
                              const std::vector<std::string>& inputs) {
  report::RunReport r;
  r.kind = std::move(kind);
  r.config = std::move(config);
  for (const auto& p : inputs) r.inputs.push_back(report::digest_file(p));
  return r;
}

std::vector<QuestionRecord> read_qa(const std::string& path) {
  return formats::parse_qa(formats::read_file(path), path);
}

std::vector<scoring::LogitRecord> read_logits(const std::string& path) {
  return formats::parse_logits(formats::read_file(path), path);
}

// Questions must name scenes of the manifest.
void check_scene_references(const formats::SceneManifest& m,
                            const std::vector<QuestionRecord>& questions) {
  std::unordered_set<std::string_view> ids;
  for (const auto& s : m.scenes) ids.insert(s.scene_id);
  for (const auto& q : questions) {
    if (!ids.contains(q.scene_id)) {
      throw ValidationError("dangling reference: question " + q.question_id +
                            " names unknown scene " + q.scene_id);
    }
  }
}

json label_counts(const std::vector<HeuristicLabel>& labels) {
  int c[3] = {0, 0, 0};
  for (auto l : labels) ++c[static_cast<int>(l)];
  const int total = static_cast<int>(labels.size());
  auto frac = [total](int n) { return total ? static_cast<double>(n) / total : 0.0; };
  return json{{"consistent", c[0]},
              {"counter", c[1]},
              {"ambiguous", c[2]},
              {"total", total},
              {"fraction_consistent", frac(c[0])},
              {"fraction_counter", frac(c[1])},
              {"fraction_ambiguous", frac(c[2])}};
}

int cmd_gen_tunnel(const TunnelFlags& f, std::ostream& out) {
  formats::SceneManifest m;
  m.master_seed = f.seed;
  m.tunnel = f.spec();
  m.depths = {f.z_far, f.z_near};
  m.instances_per_cell = f.instances;
  m.variant = formats::SceneVariant::kGrid;
  m.scenes = tunnelgen::generate_grid(m.tunnel, m.depths, f.instances, f.seed);
  formats::write_manifest(f.out, m);
  out << "wrote " << m.scenes.size() << " scenes to " << f.out << "\n";
  return kExitOk;
}

int cmd_gen_size_sweep(const TunnelFlags& f, std::ostream& out) {
  formats::SceneManifest m;
  m.master_seed = f.seed;
  m.tunnel = f.spec();
  m.depths = {f.z_far, f.z_near};
  m.instances_per_cell = f.instances;
  m.variant = formats::SceneVariant::kSizeSweep;
  const auto layouts = tunnelgen::full_grid_layouts(m.tunnel, m.depths, f.instances);
  m.scenes = tunnelgen::generate_size_sweep(m.tunnel, layouts, f.seed);
  formats::write_manifest(f.out, m);
  out << "wrote " << m.scenes.size() << " size-sweep scenes to " << f.out << "\n";
  return kExitOk;
}

int cmd_gen_qa(const std::string& manifest, const std::string& out_path, std::ostream& out) {
  const auto m = formats::read_manifest(manifest);
  const auto qa = tunnelgen::generate_qa(m.scenes);
  formats::write_file_atomic(out_path, formats::serialize_qa(qa));
  out << "wrote " << qa.size() << " questions to " << out_path << "\n";
  return kExitOk;
}

int cmd_classify(const std::string& annotations, const std::string& manifest, double threshold,
                 const std::string& out_path, std::ostream& out) {
  if (annotations.empty() == manifest.empty()) {
    throw ValidationError("classify: pass exactly one of --annotations or --manifest");
  }
  json labels = json::object();
  std::vector<HeuristicLabel> all;
  json payload;
  std::string input;
  if (!annotations.empty()) {
    input = annotations;
    const auto records = formats::parse_annotations(formats::read_file(annotations), annotations);
    for (const auto& r : records) {
      const auto l = heuristics::classify(to_annotated_example(r), threshold);
      labels[r.example_id] = to_string(l);
      all.push_back(l);
    }
  } else {
    input = manifest;
    const auto m = formats::read_manifest(manifest);
    int agree = 0;
    for (const auto& s : m.scenes) {
      const auto l = heuristics::classify_scene(s, m.tunnel.camera, threshold);
      labels[s.scene_id] = to_string(l);
      all.push_back(l);
      if (l == s.heuristic_label) ++agree;
    }
    payload["stored_label_agreement"] = {{"agree", agree},
                                         {"total", static_cast<int>(m.scenes.size())}};
  }
  payload["labels"] = std::move(labels);
  payload["distribution"] = label_counts(all);
  auto rep = make_report("classification", {{"threshold_fraction", threshold}}, {input});
  rep.payload = std::move(payload);
  report::write(out_path, rep);
  out << "classified " << all.size() << " examples\n";
  return kExitOk;
}

struct ScoreFlags {
  std::string manifest, qa, logits, mode = "logit", filter = "none", out;
  bool include_ambiguous = false;
  bool heatmap = false;
};

int cmd_score(const ScoreFlags& f, std::ostream& out) {
  const auto m = formats::read_manifest(f.manifest);
  const auto qa = read_qa(f.qa);
  const auto logits = read_logits(f.logits);
  check_scene_references(m, qa);
  formats::check_logit_references(logits, qa);
  const auto mode = scoring::parse_mode(f.mode);
  const auto filter = scoring::parse_filter(f.filter);

  std::map<std::string, HeuristicLabel> labels;
  for (const auto& s : m.scenes) labels.emplace(s.scene_id, s.heuristic_label);
  scoring::AggregateOptions opts{mode, f.include_ambiguous};
  const auto split = scoring::aggregate(logits, qa, labels, opts);

  json config{{"mode", to_string(mode)},
              {"include_ambiguous", f.include_ambiguous},
              {"heatmap", f.heatmap},
              {"filter", to_string(filter)}};
  auto rep = make_report("split_report", config, {f.manifest, f.qa, f.logits});
  rep.payload["split"] = report::to_json(split);
  rep.payload["ambiguous_policy"] =
      f.include_ambiguous ? "ambiguous scenes included in v_mean"
                          : "ambiguous scenes excluded from v_mean and both splits";
  if (f.heatmap) {
    const auto h = scoring::heatmap(logits, qa, m.scenes, m.tunnel.angular_slots, mode, filter);
    rep.payload["heatmap"] = report::to_json(h);
  }
  report::write(f.out, rep);
  out << "scored " << split.n_questions << " questions";
  if (split.gap) out << ", gap " << *split.gap;
  out << "\n";
  return kExitOk;
}

int cmd_size_report(const ScoreFlags& f, std::ostream& out) {
  const auto m = formats::read_manifest(f.manifest);
  if (m.variant != formats::SceneVariant::kSizeSweep) {
    throw ValidationError("size-report: manifest is not a size sweep");
  }
  const auto qa = read_qa(f.qa);
  const auto logits = read_logits(f.logits);
  check_scene_references(m, qa);
  formats::check_logit_references(logits, qa);
  const auto mode = scoring::parse_mode(f.mode);
  const auto r = scoring::size_sweep_report(logits, qa, m.scenes, mode);
  auto rep = make_report("size_sweep_report", {{"mode", to_string(mode)}},
                         {f.manifest, f.qa, f.logits});
  rep.payload["size_sweep"] = report::to_json(r);
  report::write(f.out, rep);
  out << "size gap " << r.size_gap << "\n";
  return kExitOk;
}

struct ProbeFlags {
  std::string hidden, pairs, questions, out;
  std::optional<int> layer;
  int pca_k = 2;
};

int cmd_probe(const ProbeFlags& f, std::ostream& out) {
  const auto pairs = formats::parse_swap_pairs(formats::read_file(f.pairs), f.pairs);
  std::optional<std::set<int>> filter;
  const auto records = sprb::read_hidden_states(f.hidden, filter);
  if (!f.questions.empty()) {
    const auto qs = formats::parse_probe_questions(formats::read_file(f.questions), f.questions);
    std::unordered_set<std::string_view> ids;
    for (const auto& q : qs) ids.insert(q.question_id);
    for (const auto& r : records) {
      if (!ids.contains(r.question_id)) {
        throw ValidationError("dangling reference: hidden state for unknown question " +
                              r.question_id);
      }
    }
  }
  std::map<int, probing::LayerStates> by_layer;
  for (const auto& r : records) {
    if (!by_layer[r.layer].emplace(r.question_id, r.vector).second) {
      throw ValidationError("duplicate hidden state for " + r.question_id + " at layer " +
                            std::to_string(r.layer));
    }
  }
  if (by_layer.empty()) throw ValidationError("probe: hidden-state file holds no records");

  json trajectories = json::array();
  for (const auto& [layer, states] : by_layer) {
    const auto deltas = probing::compute_deltas(pairs, states);
    trajectories.push_back(report::to_json(probing::coherence_report(deltas, layer)));
  }
  std::optional<int> detail_layer = f.layer;
  if (!detail_layer && by_layer.size() == 1) detail_layer = by_layer.begin()->first;

  json config{{"pca_k", f.pca_k}, {"layer", f.layer ? json(*f.layer) : json(nullptr)}};
  std::vector<std::string> inputs = {f.hidden, f.pairs};
  if (!f.questions.empty()) inputs.push_back(f.questions);
  auto rep = make_report("probe_report", config, inputs);
  rep.payload["trajectories"] = std::move(trajectories);
  if (detail_layer) {
    auto it = by_layer.find(*detail_layer);
    if (it == by_layer.end()) {
      throw ValidationError("probe: no hidden states at layer " + std::to_string(*detail_layer));
    }
    const auto deltas = probing::compute_deltas(pairs, it->second);
    const auto stats = probing::category_stats(deltas);
    json detail;
    detail["coherence"] = report::to_json(probing::coherence_report(deltas, *detail_layer));
    json counts = json::object();
    for (const auto& [c, s] : stats) counts[std::string(probing::to_string(c))] = s.count;
    detail["category_counts"] = std::move(counts);
    if (stats.size() == probing::kAllCategories.size()) {
      detail["similarity"] = report::to_json(probing::similarity_matrix(stats));
    } else {
      detail["similarity"] = nullptr;
    }
    detail["pca"] = report::to_json(probing::pca(deltas, f.pca_k));
    rep.payload["detail"] = std::move(detail);
  }
  report::write(f.out, rep);
  out << "probed " << pairs.size() << " pairs over " << by_layer.size() << " layers\n";
  return kExitOk;
}

int cmd_select_layer(const std::string& probe_report, int total_layers,
                     const probing::LayerSelectionConfig& cfg, const std::string& out_path,
                     std::ostream& out) {
  const auto in = report::read(probe_report);
  if (in.kind != "probe_report") throw ValidationError("select-layer: input is not a probe report");
  std::vector<probing::CoherenceReport> traj;
  const auto it = in.payload.find("trajectories");
  if (it == in.payload.end() || !it->is_array()) {
    throw FormatError(probe_report + ": payload has no trajectories");
  }
  for (const auto& t : *it) traj.push_back(report::coherence_from_json(t));
  const auto sel = probing::select_layer(traj, total_layers, cfg);
  json config{{"total_layers", total_layers},
              {"plateau_fraction", cfg.plateau_fraction},
              {"stability_window", cfg.stability_window},
              {"stability_tol", cfg.stability_tol},
              {"final_band_fraction", cfg.final_band_fraction}};
  auto rep = make_report("layer_selection", config, {probe_report});
  rep.payload["selection"] = report::to_json(sel);
  report::write(out_path, rep);
  out << "selected layer " << sel.selected_layer << (sel.warning ? " (with warnings)" : "")
      << "\n";
  return kExitOk;
}

std::vector<probing::RobustnessModel> read_coh_table(const std::string& path) {
  json j;
  try {
    j = json::parse(formats::read_file(path));
  } catch (const json::parse_error& e) {
    throw FormatError(path + ": malformed JSON: " + e.what());
  }
  if (!j.is_object() || j.value("format", "") != kCohTableFormat ||
      j.value("schema_version", 0) != formats::kSchemaVersion || !j.contains("models")) {
    throw FormatError(path + ": not a " + std::string(kCohTableFormat) + " v1 document");
  }
  std::vector<probing::RobustnessModel> models;
  try {
    for (const auto& mj : j.at("models")) {
      probing::RobustnessModel m;
      m.name = mj.at("name").get<std::string>();
      for (const auto& v : mj.at("coh_d")) {
        m.coh_d.push_back(v.is_null() ? std::nullopt : std::optional<double>(v.get<double>()));
      }
      m.candidate_range = mj.at("candidate_range").get<std::vector<int>>();
      m.reference = mj.at("reference").get<double>();
      models.push_back(std::move(m));
    }
  } catch (const json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
  return models;
}

int cmd_layer_robustness(const std::string& table, int samples, std::uint64_t seed,
                         const std::string& out_path, std::ostream& out) {
  const auto models = read_coh_table(table);
  const auto r = probing::layer_robustness(models, samples, seed);
  auto rep = make_report("layer_robustness", {{"samples", samples}, {"seed", seed}}, {table});
  rep.payload["robustness"] = report::to_json(r);
  report::write(out_path, rep);
  out << "mean rho " << r.mean_rho << " over " << r.rho.size() << " samples\n";
  return kExitOk;
}

int cmd_mock_run(const std::string& manifest, const std::string& qa_path,
                 const std::string& agent, double epsilon, std::optional<std::uint64_t> seed,
                 const std::string& out_path, std::ostream& out) {
  scoring::AgentConfig cfg;
  cfg.kind = scoring::parse_agent(agent);
  cfg.epsilon = epsilon;
  if (cfg.kind == scoring::AgentKind::kNoisyOracle && !seed) {
    throw ValidationError("mock-run: noisy-oracle needs --seed");
  }
  cfg.seed = seed.value_or(0);
  const auto m = formats::read_manifest(manifest);
  const auto qa = read_qa(qa_path);
  check_scene_references(m, qa);
  const auto logits = scoring::run_agent(cfg, m.scenes, qa, m.tunnel.camera);
  formats::write_file_atomic(out_path, formats::serialize_logits(logits));
  out << "wrote " << logits.size() << " logit records from " << agent << "\n";
  return kExitOk;
}

int cmd_build_pairs(const std::string& annotations, std::uint64_t seed,
                    const std::string& out_pairs, const std::string& out_questions,
                    std::ostream& out) {
  const auto records = formats::parse_annotations(formats::read_file(annotations), annotations);
  const auto set = probing::build_swap_pairs(records, seed);
  formats::write_file_atomic(out_pairs, formats::serialize_swap_pairs(set.pairs));
  formats::write_file_atomic(out_questions, formats::serialize_probe_questions(set.questions));
  out << "built " << set.pairs.size() << " swap pairs";
  if (set.skipped_no_distractor) {
    out << " (skipped " << set.skipped_no_distractor << " distance examples without distractors)";
  }
  out << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"tunnelprobe: SpatialTunnel generation, bias scoring and hidden-state probing"};
  app.name("tunnelprobe");
  app.require_subcommand(1);

  TunnelFlags tunnel_flags;
  auto* gen_tunnel = app.add_subcommand("gen-tunnel", "Generate the 16x16 angular grid manifest");
  tunnel_flags.add_to(gen_tunnel, 12);

  TunnelFlags sweep_flags;
  auto* gen_sweep =
      app.add_subcommand("gen-size-sweep", "Generate the 11-step object-size sweep manifest");
  sweep_flags.add_to(gen_sweep, 1);

  std::string manifest, qa_out;
  auto* gen_qa = app.add_subcommand("gen-qa", "Emit the four depth questions per scene");
  gen_qa->add_option("--manifest", manifest)->required();
  gen_qa->add_option("--out", qa_out)->required();

  std::string annotations, classify_manifest, classify_out;
  double threshold = heuristics::kDefaultThreshold;
  auto* classify = app.add_subcommand("classify", "Label examples consistent/counter/ambiguous");
  classify->add_option("--annotations", annotations, "Annotation records (JSONL)");
  classify->add_option("--manifest", classify_manifest, "Scene manifest");
  classify->add_option("--threshold", threshold, "Ambiguity threshold (fraction of height)")
      ->capture_default_str();
  classify->add_option("--out", classify_out)->required();

  ScoreFlags score_flags;
  auto* score = app.add_subcommand("score", "Split accuracies and gap from logit records");
  score->add_option("--manifest", score_flags.manifest)->required();
  score->add_option("--qa", score_flags.qa)->required();
  score->add_option("--logits", score_flags.logits)->required();
  score->add_option("--mode", score_flags.mode, "logit or exact")->capture_default_str();
  score->add_flag("--include-ambiguous", score_flags.include_ambiguous);
  score->add_flag("--heatmap", score_flags.heatmap, "Add the per-cell heatmap");
  score->add_option("--filter", score_flags.filter, "Heatmap subset: none, consistent, counter")
      ->capture_default_str();
  score->add_option("--out", score_flags.out)->required();

  ScoreFlags size_flags;
  auto* size_report = app.add_subcommand("size-report", "Size-bias gap over a size sweep");
  size_report->add_option("--manifest", size_flags.manifest)->required();
  size_report->add_option("--qa", size_flags.qa)->required();
  size_report->add_option("--logits", size_flags.logits)->required();
  size_report->add_option("--mode", size_flags.mode, "logit or exact")->capture_default_str();
  size_report->add_option("--out", size_flags.out)->required();

  ProbeFlags probe_flags;
  auto* probe = app.add_subcommand("probe", "Coherence, VD-EI, similarity and PCA of deltas");
  probe->add_option("--hidden", probe_flags.hidden, "Hidden states (SPRB)")->required();
  probe->add_option("--pairs", probe_flags.pairs, "Swap pairs (JSONL)")->required();
  probe->add_option("--questions", probe_flags.questions, "Probe questions (JSONL)");
  probe->add_option("--layer", probe_flags.layer, "Layer for similarity and PCA detail");
  probe->add_option("--pca-k", probe_flags.pca_k)->capture_default_str()->check(CLI::Range(1, 3));
  probe->add_option("--out", probe_flags.out)->required();

  std::string probe_report, select_out;
  int total_layers = 0;
  probing::LayerSelectionConfig sel_cfg;
  auto* select = app.add_subcommand("select-layer", "Pick a representative layer");
  select->add_option("--probe-report", probe_report)->required();
  select->add_option("--total-layers", total_layers)->required();
  select->add_option("--plateau-fraction", sel_cfg.plateau_fraction)->capture_default_str();
  select->add_option("--window", sel_cfg.stability_window)->capture_default_str();
  select->add_option("--stability-tol", sel_cfg.stability_tol)->capture_default_str();
  select->add_option("--band-fraction", sel_cfg.final_band_fraction)->capture_default_str();
  select->add_option("--out", select_out)->required();

  std::string table, robust_out;
  int samples = 1000;
  std::uint64_t robust_seed = 0;
  auto* robust = app.add_subcommand("layer-robustness", "Coh_D ranking stability across layers");
  robust->add_option("--table", table, "Coh_D table (JSON)")->required();
  robust->add_option("--samples", samples)->capture_default_str();
  robust->add_option("--seed", robust_seed)->required();
  robust->add_option("--out", robust_out)->required();

  std::string mock_manifest, mock_qa, agent, mock_out;
  double epsilon = 0.0;
  std::optional<std::uint64_t> mock_seed;
  auto* mock = app.add_subcommand("mock-run", "Answer a QA set with a scripted agent");
  mock->add_option("--manifest", mock_manifest)->required();
  mock->add_option("--qa", mock_qa)->required();
  mock->add_option("--agent", agent,
                   "height-heuristic, anti-heuristic, depth-oracle, size-heuristic, noisy-oracle")
      ->required();
  mock->add_option("--epsilon", epsilon, "Flip probability for noisy-oracle")
      ->capture_default_str();
  mock->add_option("--seed", mock_seed);
  mock->add_option("--out", mock_out)->required();

  std::string pair_annotations, pairs_out, questions_out;
  std::uint64_t pair_seed = 0;
  auto* pairs = app.add_subcommand("build-pairs", "Swap pairs and probe questions from annotations");
  pairs->add_option("--annotations", pair_annotations)->required();
  pairs->add_option("--seed", pair_seed)->required();
  pairs->add_option("--out-pairs", pairs_out)->required();
  pairs->add_option("--out-questions", questions_out)->required();

  std::vector<std::string> argv_store = {"tunnelprobe"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n" << app.help();
    return kExitValidation;
  }

  try {
    if (*gen_tunnel) return cmd_gen_tunnel(tunnel_flags, out);
    if (*gen_sweep) return cmd_gen_size_sweep(sweep_flags, out);
    if (*gen_qa) return cmd_gen_qa(manifest, qa_out, out);
    if (*classify) {
      return cmd_classify(annotations, classify_manifest, threshold, classify_out, out);
    }
    if (*score) return cmd_score(score_flags, out);
    if (*size_report) return cmd_size_report(size_flags, out);
    if (*probe) return cmd_probe(probe_flags, out);
    if (*select) return cmd_select_layer(probe_report, total_layers, sel_cfg, select_out, out);
    if (*robust) return cmd_layer_robustness(table, samples, robust_seed, robust_out, out);
    if (*mock) {
      return cmd_mock_run(mock_manifest, mock_qa, agent, epsilon, mock_seed, mock_out, out);
    }
    if (*pairs) return cmd_build_pairs(pair_annotations, pair_seed, pairs_out, questions_out, out);
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace tunnelprobe::cli
