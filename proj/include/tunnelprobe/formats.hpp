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

#ifndef TUNNELPROBE_FORMATS_HPP_
#define TUNNELPROBE_FORMATS_HPP_

// Text interchange formats. Documents are UTF-8 JSON with sorted keys,
// shortest round-trip floats and LF line endings, so rewriting a document
// that was read reproduces it byte for byte. Record streams (QA, logits,
// annotations, probe questions, swap pairs) are JSON Lines whose first line
// is a header {"format": ..., "schema_version": 1}. Unknown fields are
// rejected.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tunnelprobe/annotation.hpp"
#include "tunnelprobe/probing.hpp"
#include "tunnelprobe/scene.hpp"
#include "tunnelprobe/scoring.hpp"
#include "tunnelprobe/tunnelgen.hpp"

namespace tunnelprobe::formats {

inline constexpr int kSchemaVersion = 1;

inline constexpr std::string_view kManifestFormat = "tunnelprobe.scene_manifest";
inline constexpr std::string_view kQaFormat = "tunnelprobe.qa";
inline constexpr std::string_view kLogitFormat = "tunnelprobe.logits";
inline constexpr std::string_view kAnnotationFormat = "tunnelprobe.annotations";
inline constexpr std::string_view kProbeQuestionFormat = "tunnelprobe.probe_questions";
inline constexpr std::string_view kSwapPairFormat = "tunnelprobe.swap_pairs";

enum class SceneVariant { kGrid, kSizeSweep };

struct SceneManifest {
  int schema_version = kSchemaVersion;
  std::uint64_t master_seed = 0;
  TunnelSpec tunnel;
  tunnelgen::Depths depths;
  int instances_per_cell = 1;
  SceneVariant variant = SceneVariant::kGrid;
  std::vector<SceneInstance> scenes;

  bool operator==(const SceneManifest&) const = default;
};

// Whole-file helpers. Reads throw FormatError; writes go to a temporary file
// that is renamed over the target.
std::string read_file(const std::filesystem::path& path);
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string serialize_manifest(const SceneManifest& manifest);
// Checks schema, unique scene ids and every scene invariant (placements on
// the tunnel wall, depth ordering, attribute ranges, stored label).
SceneManifest parse_manifest(std::string_view text, std::string_view source = "<manifest>");
void write_manifest(const std::filesystem::path& path, const SceneManifest& manifest);
SceneManifest read_manifest(const std::filesystem::path& path);

std::string serialize_qa(const std::vector<QuestionRecord>& records);
std::vector<QuestionRecord> parse_qa(std::string_view text, std::string_view source = "<qa>");

std::string serialize_logits(const std::vector<scoring::LogitRecord>& records);
std::vector<scoring::LogitRecord> parse_logits(std::string_view text,
                                               std::string_view source = "<logits>");

std::string serialize_annotations(const std::vector<AnnotationRecord>& records);
std::vector<AnnotationRecord> parse_annotations(std::string_view text,
                                                std::string_view source = "<annotations>");

std::string serialize_probe_questions(const std::vector<probing::ProbeQuestion>& records);
std::vector<probing::ProbeQuestion> parse_probe_questions(
    std::string_view text, std::string_view source = "<probe questions>");

std::string serialize_swap_pairs(const std::vector<probing::SwapPair>& records);
std::vector<probing::SwapPair> parse_swap_pairs(std::string_view text,
                                                std::string_view source = "<swap pairs>");

// Throws ValidationError naming the first logit record whose question id
// is not in `questions`.
void check_logit_references(const std::vector<scoring::LogitRecord>& logits,
                            const std::vector<QuestionRecord>& questions);

}  // namespace tunnelprobe::formats

#endif  // TUNNELPROBE_FORMATS_HPP_
