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

#ifndef TUNNELPROBE_SCENE_HPP_
#define TUNNELPROBE_SCENE_HPP_

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "tunnelprobe/geometry.hpp"

namespace tunnelprobe {

enum class Shape { kSphere, kCube };
enum class Color { kRed, kGreen, kBlue, kYellow, kCyan, kMagenta, kBlack };
enum class HeuristicLabel { kConsistent, kCounter, kAmbiguous };
enum class Answer { kNo, kYes };

inline constexpr int kNumShapes = 2;
inline constexpr int kNumColors = 7;

std::string_view to_string(Shape s);
std::string_view to_string(Color c);
std::string_view to_string(HeuristicLabel l);
std::string_view to_string(Answer a);
Shape parse_shape(std::string_view s);
Color parse_color(std::string_view s);
HeuristicLabel parse_label(std::string_view s);
Answer parse_answer(std::string_view s);

struct TunnelSpec {
  double half_extent = 1.0;  // 2 m x 2 m cross-section
  double length = 12.0;
  int angular_slots = 16;
  geometry::CameraModel camera = geometry::CameraModel::centered(800.0, 1.0, 1024, 1024);

  void validate() const;
  bool operator==(const TunnelSpec&) const = default;
};

// Sizes are a bounding radius for spheres and a half-edge for cubes.
struct ObjectSpec {
  Shape shape = Shape::kSphere;
  Color color = Color::kRed;
  double size = 0.1;
  double roughness = 0.5;

  // "<color> <shape>", lowercase.
  std::string descriptor() const;
  bool operator==(const ObjectSpec&) const = default;
};

struct Placement {
  int theta_index = 0;
  double depth = 1.0;
  geometry::Point3 anchor;  // on the cross-section perimeter
  geometry::Point3 center;  // anchor moved inward by the object size

  bool operator==(const Placement&) const = default;
};

struct SceneObject {
  ObjectSpec spec;
  Placement placement;

  bool operator==(const SceneObject&) const = default;
};

inline constexpr double kSunRotationMin = 1.25 * 3.14159265358979323846;
inline constexpr double kSunRotationMax = 1.75 * 3.14159265358979323846;
inline constexpr double kBackgroundIntensity = 0.15;
inline constexpr double kRoughnessMin = 0.05;
inline constexpr double kRoughnessMax = 1.0;

struct Lighting {
  double sun_rotation = kSunRotationMin;  // radians
  double background_intensity = kBackgroundIntensity;

  bool operator==(const Lighting&) const = default;
};

struct SceneInstance {
  std::string scene_id;
  int cell_i = 0;  // theta index of the far object
  int cell_j = 0;  // theta index of the near object
  int instance_index = 0;
  SceneObject far_object;
  SceneObject near_object;
  Lighting lighting;
  HeuristicLabel heuristic_label = HeuristicLabel::kAmbiguous;
  std::optional<double> size_s1;  // set for size-sweep variants

  bool operator==(const SceneInstance&) const = default;
};

struct QuestionRecord {
  std::string question_id;
  std::string scene_id;
  int template_id = 1;
  std::string text;
  Answer ground_truth = Answer::kNo;
  std::array<std::string, 2> queried_pair;  // (subject, reference)

  bool operator==(const QuestionRecord&) const = default;
};

}  // namespace tunnelprobe

#endif  // TUNNELPROBE_SCENE_HPP_
