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

#include "tunnelprobe/report.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <memory>
#include <optional>
#include <set>

#include "tunnelprobe/error.hpp"
#include "tunnelprobe/formats.hpp"

namespace tunnelprobe::report {

using nlohmann::json;

namespace {

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> opt_from(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) throw FormatError(std::string("coherence report: '") + key +
                                          "' must be a number or null");
  return it->get<double>();
}

json label_grid(const scoring::CellHeatmap& h) {
  json rows = json::array();
  for (int i = 0; i < h.slots; ++i) {
    json row = json::array();
    for (int j = 0; j < h.slots; ++j) row.push_back(to_string(h.label(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string sha256_hex(std::string_view content) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), content.data(), content.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
    throw std::runtime_error("sha256 computation failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int k = 0; k < len; ++k) {
    std::snprintf(buf, sizeof buf, "%02x", digest[k]);
    hex += buf;
  }
  return hex;
}

InputDigest digest_file(const std::filesystem::path& path) {
  return {path.string(), sha256_hex(formats::read_file(path))};
}

std::string serialize(const RunReport& r) {
  json inputs = json::array();
  for (const auto& d : r.inputs) inputs.push_back({{"path", d.path}, {"sha256", d.sha256}});
  json j{{"format", kReportFormat},
         {"schema_version", formats::kSchemaVersion},
         {"kind", r.kind},
         {"tool", "tunnelprobe"},
         {"tool_version", r.tool_version},
         {"inputs", std::move(inputs)},
         {"config", r.config},
         {"payload", r.payload}};
  return j.dump(1) + "\n";
}

RunReport parse(std::string_view text, std::string_view source) {
  const std::string ctx(source);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(ctx + ": malformed JSON: " + e.what());
  }
  if (!j.is_object()) throw FormatError(ctx + ": expected a JSON object");
  static const std::set<std::string> kKeys = {"format", "schema_version", "kind", "tool",
                                              "tool_version", "inputs", "config", "payload"};
  for (const auto& [k, v] : j.items()) {
    if (!kKeys.contains(k)) throw FormatError(ctx + ": unknown field '" + k + "'");
  }
  for (const auto& k : kKeys) {
    if (!j.contains(k)) throw FormatError(ctx + ": missing field '" + k + "'");
  }
  if (j["format"] != kReportFormat) throw FormatError(ctx + ": not a report document");
  if (j["schema_version"] != formats::kSchemaVersion) {
    throw FormatError(ctx + ": unsupported schema_version");
  }
  RunReport r;
  try {
    r.kind = j["kind"].get<std::string>();
    r.tool_version = j["tool_version"].get<std::string>();
    for (const auto& d : j["inputs"]) {
      r.inputs.push_back({d.at("path").get<std::string>(), d.at("sha256").get<std::string>()});
    }
  } catch (const json::exception& e) {
    throw FormatError(ctx + ": " + e.what());
  }
  if (r.inputs.empty()) throw FormatError(ctx + ": report carries no input digests");
  r.config = j["config"];
  r.payload = j["payload"];
  return r;
}

void write(const std::filesystem::path& path, const RunReport& report) {
  formats::write_file_atomic(path, serialize(report));
}

RunReport read(const std::filesystem::path& path) {
  return parse(formats::read_file(path), path.string());
}

json to_json(const scoring::SplitReport& r) {
  return json{{"mode", to_string(r.mode)},
              {"include_ambiguous", r.include_ambiguous},
              {"v_mean", opt(r.v_mean)},
              {"v_consistent", opt(r.v_consistent)},
              {"v_counter", opt(r.v_counter)},
              {"gap", opt(r.gap)},
              {"n_consistent", r.n_consistent},
              {"n_counter", r.n_counter},
              {"n_ambiguous", r.n_ambiguous},
              {"n_questions", r.n_questions},
              {"parse_failures", r.parse_failures}};
}

json to_json(const scoring::CellHeatmap& h) {
  json rows = json::array();
  for (int i = 0; i < h.slots; ++i) {
    json row = json::array();
    for (int j = 0; j < h.slots; ++j) row.push_back(opt(h.at(i, j)));
    rows.push_back(std::move(row));
  }
  return json{{"slots", h.slots},
              {"filter", to_string(h.filter)},
              {"grid", std::move(rows)},
              {"labels", label_grid(h)}};
}

json to_json(const scoring::SizeSweepReport& r) {
  return json{{"mode", to_string(r.mode)},
              {"s1_values", r.s1_values},
              {"v_by_s1", r.v_by_s1},
              {"scenes_by_s1", r.scenes_by_s1},
              {"v_s1_min", r.v_s1_min},
              {"v_s1_max", r.v_s1_max},
              {"size_gap", r.size_gap}};
}

json to_json(const scoring::WilsonInterval& w) {
  return json{{"point", w.point},
              {"low", w.low},
              {"high", w.high},
              {"successes", w.successes},
              {"n", w.n},
              {"z", w.z}};
}

json to_json(const probing::CoherenceReport& r) {
  return json{{"layer", r.layer},
              {"coh_horizontal", opt(r.coh_horizontal)},
              {"coh_vertical", opt(r.coh_vertical)},
              {"coh_distance", opt(r.coh_distance)},
              {"vd_ei", opt(r.vd_ei)},
              {"n_horizontal", r.n_horizontal},
              {"n_vertical", r.n_vertical},
              {"n_distance", r.n_distance}};
}

probing::CoherenceReport coherence_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("coherence report: expected an object");
  probing::CoherenceReport r;
  try {
    r.layer = j.at("layer").get<int>();
    r.n_horizontal = j.at("n_horizontal").get<int>();
    r.n_vertical = j.at("n_vertical").get<int>();
    r.n_distance = j.at("n_distance").get<int>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("coherence report: ") + e.what());
  }
  r.coh_horizontal = opt_from(j, "coh_horizontal");
  r.coh_vertical = opt_from(j, "coh_vertical");
  r.coh_distance = opt_from(j, "coh_distance");
  r.vd_ei = opt_from(j, "vd_ei");
  return r;
}

json to_json(const probing::SimilarityMatrix& m) {
  json names = json::array();
  for (auto c : probing::kAllCategories) names.push_back(probing::to_string(c));
  json rows = json::array();
  for (const auto& row : m) rows.push_back(json(std::vector<double>(row.begin(), row.end())));
  return json{{"categories", std::move(names)}, {"matrix", std::move(rows)}};
}

json to_json(const probing::PcaResult& r) {
  json labels = json::array();
  for (auto c : r.labels) labels.push_back(probing::to_string(c));
  return json{{"k", r.k},
              {"dim", r.dim},
              {"components", r.components},
              {"explained_variance", r.explained_variance},
              {"projections", r.projections},
              {"labels", std::move(labels)},
              {"pair_ids", r.pair_ids},
              {"effective_rank", r.effective_rank},
              {"rank_deficient", r.rank_deficient}};
}

json to_json(const probing::LayerSelectionReport& r) {
  json traj = json::array();
  for (const auto& t : r.trajectories) traj.push_back(to_json(t));
  return json{{"selected_layer", r.selected_layer},
              {"total_layers", r.total_layers},
              {"candidate_range", r.candidate_range},
              {"excluded_final_band", r.excluded_final_band},
              {"stable_layers", r.stable_layers},
              {"trajectories", std::move(traj)},
              {"trace", r.trace},
              {"relaxed_to_union", r.relaxed_to_union},
              {"flat_plateau", r.flat_plateau},
              {"vdei_unstable", r.vdei_unstable},
              {"warning", r.warning}};
}

json to_json(const probing::RobustnessResult& r) {
  return json{{"rho", r.rho},
              {"samples", r.rho.size() + static_cast<std::size_t>(r.undefined_samples)},
              {"undefined_samples", r.undefined_samples},
              {"mean_rho", r.mean_rho},
              {"min_rho", r.min_rho},
              {"max_rho", r.max_rho}};
}

}  // namespace tunnelprobe::report
