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

#ifndef TUNNELPROBE_TUNNELGEN_HPP_
#define TUNNELPROBE_TUNNELGEN_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "tunnelprobe/scene.hpp"

namespace tunnelprobe::tunnelgen {

struct Depths {
  double far = 6.0;
  double near = 3.0;

  bool operator==(const Depths&) const = default;
};

inline constexpr int kSizeSweepSteps = 11;

// s1 in {0.10, 0.12, ..., 0.30}; s2 = 0.4 - s1.
struct SizeSweepConfig {
  std::array<double, kSizeSweepSteps> s1_values;
  std::array<double, kSizeSweepSteps> s2_values;

  static SizeSweepConfig standard();
};

// Fixed part of a size-sweep scene: everything except the two sizes.
struct SweepLayout {
  int theta_far = 0;
  int theta_near = 0;
  Depths depths;
  int instance_index = 0;
};

/// Surface anchor for angular slot theta_index at the given depth. Slot 0
/// points straight up and indices advance clockwise as seen from the
/// camera; the ray from the tunnel axis is intersected with the square
/// perimeter. Mirror and point-reflection symmetries hold exactly.
geometry::Point3 angular_position(const TunnelSpec& spec, int theta_index, double depth);

// Moves the anchor toward the axis by `size` within the cross-section.
geometry::Point3 place_object(const geometry::Point3& anchor, double size,
                              const TunnelSpec& spec);

// Full slots x slots grid, (i, j, t) lexicographic. Pure in its arguments.
std::vector<SceneInstance> generate_grid(const TunnelSpec& spec, const Depths& depths,
                                         int instances_per_cell, std::uint64_t master_seed);

// Every layout in the sweep, one row of 11 size variants per layout.
std::vector<SceneInstance> generate_size_sweep(const TunnelSpec& spec,
                                               std::span<const SweepLayout> layouts,
                                               std::uint64_t master_seed);

// One layout per grid cell at the given depths.
std::vector<SweepLayout> full_grid_layouts(const TunnelSpec& spec, const Depths& depths,
                                           int instances_per_cell);

std::array<QuestionRecord, 4> generate_qa(const SceneInstance& scene);

std::vector<QuestionRecord> generate_qa(std::span<const SceneInstance> scenes);

}  // namespace tunnelprobe::tunnelgen

#endif  // TUNNELPROBE_TUNNELGEN_HPP_
