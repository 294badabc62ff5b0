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

#ifndef TUNNELPROBE_REPORT_HPP_
#define TUNNELPROBE_REPORT_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tunnelprobe/layers.hpp"
#include "tunnelprobe/probing.hpp"
#include "tunnelprobe/scoring.hpp"

namespace tunnelprobe::report {

inline constexpr std::string_view kReportFormat = "tunnelprobe.report";
inline constexpr std::string_view kToolVersion = "0.1.0";

struct InputDigest {
  std::string path;
  std::string sha256;  // lowercase hex of the file content

  bool operator==(const InputDigest&) const = default;
};

// Report document: tool version, digests of consumed files, the echoed
// configuration and a kind-specific payload.
struct RunReport {
  std::string kind;
  std::string tool_version{kToolVersion};
  std::vector<InputDigest> inputs;
  nlohmann::json config = nlohmann::json::object();
  nlohmann::json payload = nlohmann::json::object();

  bool operator==(const RunReport&) const = default;
};

std::string sha256_hex(std::string_view content);
InputDigest digest_file(const std::filesystem::path& path);

std::string serialize(const RunReport& report);
// Throws FormatError for malformed documents or a report without digests.
RunReport parse(std::string_view text, std::string_view source = "<report>");
void write(const std::filesystem::path& path, const RunReport& report);
RunReport read(const std::filesystem::path& path);

nlohmann::json to_json(const scoring::SplitReport& r);
nlohmann::json to_json(const scoring::CellHeatmap& h);
nlohmann::json to_json(const scoring::SizeSweepReport& r);
nlohmann::json to_json(const scoring::WilsonInterval& w);
nlohmann::json to_json(const probing::CoherenceReport& r);
nlohmann::json to_json(const probing::SimilarityMatrix& m);
nlohmann::json to_json(const probing::PcaResult& r);
nlohmann::json to_json(const probing::LayerSelectionReport& r);
nlohmann::json to_json(const probing::RobustnessResult& r);

probing::CoherenceReport coherence_from_json(const nlohmann::json& j);

}  // namespace tunnelprobe::report

#endif  // TUNNELPROBE_REPORT_HPP_
