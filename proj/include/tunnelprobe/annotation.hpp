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

#ifndef TUNNELPROBE_ANNOTATION_HPP_
#define TUNNELPROBE_ANNOTATION_HPP_

#include <optional>
#include <string>
#include <vector>

#include "tunnelprobe/heuristics.hpp"

namespace tunnelprobe {

// One externally annotated benchmark example. Which fields are required
// depends on the consumer: classification needs the vertical centers,
// swap-pair construction needs objects (left/right/above/below) or options
// with a correct index (far/close). How a vertical center was derived from
// the source dataset (box center or mask centroid) is up to the converter.
struct AnnotationRecord {
  std::string example_id;
  std::string relation;  // left, right, above, below, far, close
  std::optional<double> far_center_v;
  std::optional<double> near_center_v;
  std::optional<int> image_height;
  std::vector<std::string> objects;
  std::vector<std::string> options;
  std::optional<int> correct_option;

  bool operator==(const AnnotationRecord&) const = default;
};

// Throws ValidationError when the vertical-center fields are absent.
heuristics::AnnotatedExample to_annotated_example(const AnnotationRecord& record);

}  // namespace tunnelprobe

#endif  // TUNNELPROBE_ANNOTATION_HPP_
