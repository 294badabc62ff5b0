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

#include "tunnelprobe/sprb.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <string>

#include "tunnelprobe/error.hpp"
#include "tunnelprobe/formats.hpp"

namespace tunnelprobe::sprb {
namespace {

static_assert(sizeof(float) == 4 && std::numeric_limits<float>::is_iec559);

template <typename U>
U load_le(const unsigned char* p) {
  U v = 0;
  for (std::size_t k = 0; k < sizeof(U); ++k) v |= static_cast<U>(p[k]) << (8 * k);
  return v;
}

template <typename U>
void store_le(std::string& out, U v) {
  for (std::size_t k = 0; k < sizeof(U); ++k) {
    out.push_back(static_cast<char>((v >> (8 * k)) & 0xff));
  }
}

}  // namespace

Reader::Reader(const std::filesystem::path& path)
    : path_(path), in_(path, std::ios::binary) {
  if (!in_) throw FormatError("cannot open " + path.string());
  unsigned char buf[20];
  read_exact(buf, sizeof buf, "header");
  if (std::memcmp(buf, kMagic, 4) != 0) {
    throw FormatError(path_.string() + ": bad magic, not an SPRB file");
  }
  header_.version = load_le<std::uint32_t>(buf + 4);
  header_.dim = load_le<std::uint32_t>(buf + 8);
  header_.record_count = load_le<std::uint64_t>(buf + 12);
  if (header_.version != kVersion) {
    throw FormatError(path_.string() + ": unsupported SPRB version " +
                      std::to_string(header_.version));
  }
  if (header_.dim == 0) throw FormatError(path_.string() + ": dim must be positive");
}

void Reader::read_exact(void* dst, std::size_t n, const char* what) {
  in_.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in_.gcount()) != n) {
    std::string msg = path_.string() + ": truncated " + what;
    if (std::string(what) != "header") {
      msg += ": header declares " + std::to_string(header_.record_count) +
             " records, file holds " + std::to_string(consumed_);
    }
    throw FormatError(msg);
  }
}

bool Reader::next(HiddenStateRecord& out, const std::optional<std::set<int>>& layers) {
  while (consumed_ < header_.record_count) {
    unsigned char len_buf[2];
    read_exact(len_buf, 2, "record");
    const auto id_len = load_le<std::uint16_t>(len_buf);
    std::string id(id_len, '\0');
    read_exact(id.data(), id_len, "record");
    unsigned char layer_buf[4];
    read_exact(layer_buf, 4, "record");
    const auto layer = load_le<std::uint32_t>(layer_buf);
    const std::size_t bytes = static_cast<std::size_t>(header_.dim) * 4;
    const bool wanted = !layers || layers->contains(static_cast<int>(layer));
    if (!wanted) {
      // Seek past the vector, then confirm the bytes exist.
      in_.seekg(static_cast<std::streamoff>(bytes) - 1, std::ios::cur);
      char probe;
      read_exact(&probe, 1, "record");
      ++consumed_;
      continue;
    }
    std::vector<unsigned char> raw(bytes);
    read_exact(raw.data(), bytes, "record");
    ++consumed_;
    out.question_id = std::move(id);
    out.layer = static_cast<int>(layer);
    out.vector.resize(header_.dim);
    for (std::uint32_t k = 0; k < header_.dim; ++k) {
      const float f = std::bit_cast<float>(load_le<std::uint32_t>(raw.data() + 4 * k));
      if (!std::isfinite(f)) {
        throw FormatError(path_.string() + ": non-finite value in record " + out.question_id);
      }
      out.vector[k] = static_cast<double>(f);
    }
    return true;
  }
  char extra;
  if (in_.read(&extra, 1); in_.gcount() != 0) {
    throw FormatError(path_.string() + ": trailing bytes after " +
                      std::to_string(header_.record_count) + " records");
  }
  return false;
}

std::vector<HiddenStateRecord> read_hidden_states(const std::filesystem::path& path,
                                                  const std::optional<std::set<int>>& layers) {
  Reader reader(path);
  std::vector<HiddenStateRecord> out;
  HiddenStateRecord r;
  while (reader.next(r, layers)) out.push_back(r);
  return out;
}

std::string encode(std::uint32_t dim, std::span<const HiddenStateRecord> records) {
  if (dim == 0) throw ValidationError("sprb: dim must be positive");
  std::string out(kMagic, 4);
  store_le<std::uint32_t>(out, kVersion);
  store_le<std::uint32_t>(out, dim);
  store_le<std::uint64_t>(out, records.size());
  for (const auto& r : records) {
    if (r.vector.size() != dim) {
      throw ValidationError("sprb: record " + r.question_id + " has dimension " +
                            std::to_string(r.vector.size()) + ", expected " +
                            std::to_string(dim));
    }
    if (r.question_id.size() > 0xffff) throw ValidationError("sprb: question id too long");
    if (r.layer < 0) throw ValidationError("sprb: negative layer in " + r.question_id);
    store_le<std::uint16_t>(out, static_cast<std::uint16_t>(r.question_id.size()));
    out += r.question_id;
    store_le<std::uint32_t>(out, static_cast<std::uint32_t>(r.layer));
    for (double x : r.vector) {
      const auto f = static_cast<float>(x);
      if (!std::isfinite(f)) throw ValidationError("sprb: non-finite value in " + r.question_id);
      store_le<std::uint32_t>(out, std::bit_cast<std::uint32_t>(f));
    }
  }
  return out;
}

void write_hidden_states(const std::filesystem::path& path, std::uint32_t dim,
                         std::span<const HiddenStateRecord> records) {
  formats::write_file_atomic(path, encode(dim, records));
}

}  // namespace tunnelprobe::sprb
