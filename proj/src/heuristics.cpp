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

#include "tunnelprobe/heuristics.hpp"

#include <cmath>
#include <string>

#include "tunnelprobe/error.hpp"

namespace tunnelprobe::heuristics {

HeuristicLabel classify(const AnnotatedExample& example, double threshold_fraction) {
  if (!(threshold_fraction > 0.0 && threshold_fraction < 1.0)) {
    throw ValidationError("classify: threshold_fraction must lie in (0, 1)");
  }
  if (example.image_height <= 0) {
    throw ValidationError("classify: " + example.example_id + ": image_height must be positive");
  }
  const double h = example.image_height;
  auto in_frame = [h](double v) { return v >= 0.0 && v <= h; };
  if (!in_frame(example.far_center_v) || !in_frame(example.near_center_v)) {
    throw ValidationError("classify: " + example.example_id +
                          ": object center outside [0, image_height]");
  }
  const double dy = std::fabs(example.far_center_v - example.near_center_v);
  // Decimal inputs such as 0.05 * 768 do not round exactly; a gap within
  // kTieTolerance * h of the limit counts as the tie and is not ambiguous.
  if (dy < threshold_fraction * h - kTieTolerance * h) return HeuristicLabel::kAmbiguous;
  return example.far_center_v < example.near_center_v ? HeuristicLabel::kConsistent
                                                      : HeuristicLabel::kCounter;
}

AnnotatedExample project_scene(const SceneInstance& scene, const geometry::CameraModel& camera) {
  const auto far = geometry::project(camera, scene.far_object.placement.center);
  const auto near = geometry::project(camera, scene.near_object.placement.center);
  return AnnotatedExample{scene.scene_id, far.v, near.v, camera.image_height};
}

HeuristicLabel classify_scene(const SceneInstance& scene, const geometry::CameraModel& camera,
                              double threshold_fraction) {
  return classify(project_scene(scene, camera), threshold_fraction);
}

}  // namespace tunnelprobe::heuristics
