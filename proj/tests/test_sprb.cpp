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

#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <fstream>

#include "tunnelprobe/error.hpp"
#include "tunnelprobe/formats.hpp"

namespace tunnelprobe::sprb {
namespace {

namespace fs = std::filesystem;

class SprbFile : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("tunnelprobe_sprb_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // 2 layers x 3 questions, d = 4.
  std::vector<HiddenStateRecord> records() const {
    std::vector<HiddenStateRecord> out;
    for (int layer = 0; layer < 2; ++layer) {
      for (int q = 0; q < 3; ++q) {
        HiddenStateRecord r{"q" + std::to_string(q), layer, {}};
        for (int k = 0; k < 4; ++k) r.vector.push_back(0.5 * k - q + 0.25 * layer);
        out.push_back(r);
      }
    }
    return out;
  }

  fs::path write_raw(const std::string& name, const std::string& bytes) const {
    const auto p = dir_ / name;
    std::ofstream(p, std::ios::binary) << bytes;
    return p;
  }

  fs::path dir_;
};

TEST_F(SprbFile, LayoutIsBitExact) {
  HiddenStateRecord r{"ab", 7, {1.0, -2.0}};
  const auto bytes = encode(2, std::span(&r, 1));
  ASSERT_EQ(bytes.size(), 4u + 4 + 4 + 8 + 2 + 2 + 4 + 8);
  EXPECT_EQ(bytes.substr(0, 4), "SPRB");
  auto u32 = [&](std::size_t at) {
    return static_cast<unsigned>(static_cast<unsigned char>(bytes[at])) |
           static_cast<unsigned>(static_cast<unsigned char>(bytes[at + 1])) << 8 |
           static_cast<unsigned>(static_cast<unsigned char>(bytes[at + 2])) << 16 |
           static_cast<unsigned>(static_cast<unsigned char>(bytes[at + 3])) << 24;
  };
  EXPECT_EQ(u32(4), 1u);  // version
  EXPECT_EQ(u32(8), 2u);  // dim
  EXPECT_EQ(u32(12), 1u); // record count, low word
  EXPECT_EQ(u32(16), 0u);
  EXPECT_EQ(bytes[20], 2);
  EXPECT_EQ(bytes[21], 0);
  EXPECT_EQ(bytes.substr(22, 2), "ab");
  EXPECT_EQ(u32(24), 7u);
  EXPECT_EQ(u32(28), 0x3f800000u);
  EXPECT_EQ(u32(32), 0xc0000000u);
}

TEST_F(SprbFile, RoundTripAndLayerFilter) {
  const auto path = dir_ / "h.sprb";
  write_hidden_states(path, 4, records());
  const auto all = read_hidden_states(path);
  ASSERT_EQ(all.size(), 6u);
  EXPECT_EQ(all, records());
  for (const auto& r : all) EXPECT_EQ(r.vector.size(), 4u);
  const auto one = read_hidden_states(path, std::set<int>{1});
  ASSERT_EQ(one.size(), 3u);
  for (const auto& r : one) EXPECT_EQ(r.layer, 1);
  Reader reader(path);
  EXPECT_EQ(reader.header().dim, 4u);
  EXPECT_EQ(reader.header().record_count, 6u);
}

TEST_F(SprbFile, WidensFloat32) {
  HiddenStateRecord r{"x", 0, {0.1, 1e-3}};
  const auto path = dir_ / "w.sprb";
  write_hidden_states(path, 2, std::span(&r, 1));
  const auto back = read_hidden_states(path);
  EXPECT_EQ(back[0].vector[0], static_cast<double>(0.1f));
  EXPECT_EQ(back[0].vector[1], static_cast<double>(1e-3f));
}

TEST_F(SprbFile, Errors) {
  const auto good = encode(4, records());
  std::string magic = good;
  magic.replace(0, 4, "XXXX");
  EXPECT_THROW(read_hidden_states(write_raw("magic.sprb", magic)), FormatError);

  std::string version = good;
  version[4] = 2;
  EXPECT_THROW(read_hidden_states(write_raw("version.sprb", version)), FormatError);

  // Records are 24 bytes, so four complete ones survive.
  const auto truncated = write_raw("trunc.sprb", good.substr(0, good.size() - 30));
  try {
    read_hidden_states(truncated);
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("header declares 6 records, file holds 4"),
              std::string::npos)
        << e.what();
  }
  EXPECT_THROW(read_hidden_states(write_raw("trailing.sprb", good + "z")), FormatError);
  EXPECT_THROW(read_hidden_states(write_raw("short.sprb", "SPR")), FormatError);

  auto bad_dim = records();
  bad_dim[2].vector.pop_back();
  EXPECT_THROW(encode(4, bad_dim), ValidationError);
}

}  // namespace
}  // namespace tunnelprobe::sprb
