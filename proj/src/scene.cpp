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

#include <array>
#include <string>
#include <string_view>

#include "tunnelprobe/error.hpp"
#include "tunnelprobe/scene.hpp"

namespace tunnelprobe {
namespace {

constexpr std::array<std::string_view, kNumShapes> kShapeNames = {"sphere", "cube"};
constexpr std::array<std::string_view, kNumColors> kColorNames = {
    "red", "green", "blue", "yellow", "cyan", "magenta", "black"};
constexpr std::array<std::string_view, 3> kLabelNames = {"consistent", "counter", "ambiguous"};
constexpr std::array<std::string_view, 2> kAnswerNames = {"no", "yes"};

template <typename E, std::size_t N>
E parse_enum(const std::array<std::string_view, N>& names, std::string_view s,
             const char* what) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == s) return static_cast<E>(i);
  }
  throw ValidationError(std::string("unknown ") + what + " '" + std::string(s) + "'");
}

}  // namespace

std::string_view to_string(Shape s) { return kShapeNames[static_cast<int>(s)]; }
std::string_view to_string(Color c) { return kColorNames[static_cast<int>(c)]; }
std::string_view to_string(HeuristicLabel l) { return kLabelNames[static_cast<int>(l)]; }
std::string_view to_string(Answer a) { return kAnswerNames[static_cast<int>(a)]; }

Shape parse_shape(std::string_view s) { return parse_enum<Shape>(kShapeNames, s, "shape"); }
Color parse_color(std::string_view s) { return parse_enum<Color>(kColorNames, s, "color"); }
HeuristicLabel parse_label(std::string_view s) {
  return parse_enum<HeuristicLabel>(kLabelNames, s, "label");
}
Answer parse_answer(std::string_view s) { return parse_enum<Answer>(kAnswerNames, s, "answer"); }

std::string ObjectSpec::descriptor() const {
  std::string out(to_string(color));
  out += ' ';
  out += to_string(shape);
  return out;
}

void TunnelSpec::validate() const {
  if (!(half_extent > 0.0)) throw ValidationError("tunnel: half_extent must be positive");
  if (!(length > 0.0)) throw ValidationError("tunnel: length must be positive");
  if (angular_slots < 4) throw ValidationError("tunnel: angular_slots must be at least 4");
  camera.validate();
}

}  // namespace tunnelprobe
