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

#ifndef TUNNELPROBE_SPRB_HPP_
#define TUNNELPROBE_SPRB_HPP_

// Hidden-state binary file ("SPRB"), little-endian:
//   magic "SPRB" | u32 version (1) | u32 dim | u64 record_count
//   record_count x { u16 id_length | id bytes (UTF-8) | u32 layer | dim x f32 }
// Vectors are stored as 32-bit floats and widened to double on load.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace tunnelprobe::sprb {

inline constexpr char kMagic[4] = {'S', 'P', 'R', 'B'};
inline constexpr std::uint32_t kVersion = 1;

struct HiddenStateRecord {
  std::string question_id;
  int layer = 0;
  std::vector<double> vector;

  bool operator==(const HiddenStateRecord&) const = default;
};

struct Header {
  std::uint32_t version = kVersion;
  std::uint32_t dim = 0;
  std::uint64_t record_count = 0;
};

// Streaming reader; vectors of unselected layers are skipped, not decoded.
class Reader {
 public:
  explicit Reader(const std::filesystem::path& path);

  const Header& header() const { return header_; }

  // Next record passing the layer filter, or false at the end of the file.
  // Throws FormatError on truncation or trailing bytes.
  bool next(HiddenStateRecord& out, const std::optional<std::set<int>>& layers = std::nullopt);

 private:
  void read_exact(void* dst, std::size_t n, const char* what);

  std::filesystem::path path_;
  std::ifstream in_;
  Header header_;
  std::uint64_t consumed_ = 0;
};

std::vector<HiddenStateRecord> read_hidden_states(
    const std::filesystem::path& path, const std::optional<std::set<int>>& layers = std::nullopt);

// Every record must have exactly `dim` finite entries.
std::string encode(std::uint32_t dim, std::span<const HiddenStateRecord> records);
void write_hidden_states(const std::filesystem::path& path, std::uint32_t dim,
                         std::span<const HiddenStateRecord> records);

}  // namespace tunnelprobe::sprb

#endif  // TUNNELPROBE_SPRB_HPP_
