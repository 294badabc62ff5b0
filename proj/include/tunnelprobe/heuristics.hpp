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

#ifndef TUNNELPROBE_HEURISTICS_HPP_
#define TUNNELPROBE_HEURISTICS_HPP_

#include <string>

#include "tunnelprobe/geometry.hpp"
#include "tunnelprobe/scene.hpp"

namespace tunnelprobe::heuristics {

inline constexpr double kDefaultThreshold = 0.05;
// Relative slack (in image heights) for a gap sitting exactly on the limit.
inline constexpr double kTieTolerance = 1e-9;

struct AnnotatedExample {
  std::string example_id;
  double far_center_v = 0.0;   // vertical center of the farther object, pixels
  double near_center_v = 0.0;
  int image_height = 1;
};

/// Elevation-cue classification. With dy = |far_v - near_v|, an example is
/// ambiguous when dy < threshold_fraction * image_height, consistent when the
/// farther object sits higher in the image (smaller v), and counter
/// otherwise. A gap exactly at the threshold is not ambiguous.
HeuristicLabel classify(const AnnotatedExample& example,
                        double threshold_fraction = kDefaultThreshold);

// Projects both object centers and applies classify().
HeuristicLabel classify_scene(const SceneInstance& scene, const geometry::CameraModel& camera,
                              double threshold_fraction = kDefaultThreshold);

AnnotatedExample project_scene(const SceneInstance& scene, const geometry::CameraModel& camera);

}  // namespace tunnelprobe::heuristics

#endif  // TUNNELPROBE_HEURISTICS_HPP_
