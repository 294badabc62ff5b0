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

#include "tunnelprobe/tunnelgen.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <numbers>
#include <stdexcept>
#include <string>

#include "tunnelprobe/error.hpp"
#include "tunnelprobe/heuristics.hpp"
#include "tunnelprobe/rng.hpp"

namespace tunnelprobe::tunnelgen {
namespace {

constexpr double kFarBaseSize = 0.2;
constexpr double kNearBaseSize = 0.1;
constexpr double kScaleMin = 1.0;
constexpr double kScaleMax = 1.5;
constexpr int kMaxPairResamples = 100;
constexpr double kSnap = 1e-15;

struct Appearance {
  ObjectSpec far;
  ObjectSpec near;
  Lighting lighting;
};

bool same_pair(const ObjectSpec& a, const ObjectSpec& b) {
  return a.shape == b.shape && a.color == b.color;
}

// Draw order is part of the reproducibility contract; do not reorder.
Appearance sample_appearance(CounterRng& rng) {
  Appearance a;
  a.far.shape = static_cast<Shape>(rng.uniform_index(kNumShapes));
  a.far.color = static_cast<Color>(rng.uniform_index(kNumColors));
  int attempts = 0;
  do {
    if (++attempts > kMaxPairResamples) {
      throw std::logic_error("tunnelgen: could not draw distinct (color, shape) pairs");
    }
    a.near.shape = static_cast<Shape>(rng.uniform_index(kNumShapes));
    a.near.color = static_cast<Color>(rng.uniform_index(kNumColors));
  } while (same_pair(a.far, a.near));
  a.far.size = kFarBaseSize * rng.uniform(kScaleMin, kScaleMax);
  a.near.size = kNearBaseSize * rng.uniform(kScaleMin, kScaleMax);
  a.far.roughness = rng.uniform(kRoughnessMin, kRoughnessMax);
  a.near.roughness = rng.uniform(kRoughnessMin, kRoughnessMax);
  a.lighting.sun_rotation = rng.uniform(kSunRotationMin, kSunRotationMax);
  a.lighting.background_intensity = kBackgroundIntensity;
  return a;
}

Placement make_placement(const TunnelSpec& spec, int theta_index, double depth, double size) {
  Placement p;
  p.theta_index = theta_index;
  p.depth = depth;
  p.anchor = angular_position(spec, theta_index, depth);
  p.center = place_object(p.anchor, size, spec);
  return p;
}

SceneInstance build_scene(const TunnelSpec& spec, std::string id, int i, int j, int t,
                          const Appearance& a, const Depths& depths) {
  SceneInstance s;
  s.scene_id = std::move(id);
  s.cell_i = i;
  s.cell_j = j;
  s.instance_index = t;
  s.far_object = {a.far, make_placement(spec, i, depths.far, a.far.size)};
  s.near_object = {a.near, make_placement(spec, j, depths.near, a.near.size)};
  s.lighting = a.lighting;
  s.heuristic_label = heuristics::classify_scene(s, spec.camera);
  return s;
}

void check_depths(const TunnelSpec& spec, const Depths& depths) {
  if (!(depths.near > 0.0 && depths.far > depths.near)) {
    throw ValidationError("tunnelgen: depths must satisfy far > near > 0");
  }
  if (!(depths.far < spec.length)) {
    throw ValidationError("tunnelgen: far depth must be inside the tunnel length");
  }
}

// Runs body(k) for k in [0, n) on the OpenMP team; rethrows the first
// exception on the calling thread.
template <typename Body>
void parallel_for(std::size_t n, Body&& body) {
  std::exception_ptr error;
#pragma omp parallel for schedule(static)
  for (std::size_t k = 0; k < n; ++k) {
    try {
      body(k);
    } catch (...) {
#pragma omp critical(tunnelgen_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

std::string format_id(const char* fmt, int a, int b, int c, int d = -1) {
  char buf[64];
  if (d < 0) {
    std::snprintf(buf, sizeof buf, fmt, a, b, c);
  } else {
    std::snprintf(buf, sizeof buf, fmt, a, b, c, d);
  }
  return buf;
}

}  // namespace

SizeSweepConfig SizeSweepConfig::standard() {
  SizeSweepConfig c{};
  for (int k = 0; k < kSizeSweepSteps; ++k) {
    // Integer numerators keep every value the correctly rounded decimal.
    c.s1_values[k] = (10 + 2 * k) / 100.0;
    c.s2_values[k] = (30 - 2 * k) / 100.0;
  }
  return c;
}

geometry::Point3 angular_position(const TunnelSpec& spec, int theta_index, double depth) {
  if (theta_index < 0 || theta_index >= spec.angular_slots) {
    throw ValidationError("angular_position: theta_index " + std::to_string(theta_index) +
                          " outside [0, " + std::to_string(spec.angular_slots) + ")");
  }
  if (!(depth > 0.0 && depth < spec.length)) {
    throw ValidationError("angular_position: depth outside (0, length)");
  }
  const int slots = spec.angular_slots;
  // Fold into the first quadrant so the symmetric slots are exact mirrors.
  int k = theta_index;
  double sx = 1.0;
  double sy = 1.0;
  if (2 * k > slots) {
    k = slots - k;
    sx = -1.0;
  }
  if (slots % 2 == 0 && 4 * k > slots) {
    k = slots / 2 - k;
    sy = -1.0;
  }
  const double theta = 2.0 * std::numbers::pi * k / slots;
  double dx = std::sin(theta);
  double dy = -std::cos(theta);  // up is -y in the camera frame
  if (std::fabs(dx) < kSnap) dx = 0.0;
  if (std::fabs(dy) < kSnap) dy = 0.0;

  const double h = spec.half_extent;
  double x = 0.0;
  double y = 0.0;
  if (std::fabs(dx) >= std::fabs(dy)) {
    x = std::copysign(h, dx);
    y = dy / std::fabs(dx) * h;
  } else {
    y = std::copysign(h, dy);
    x = dx / std::fabs(dy) * h;
  }
  // + 0.0 folds negative zeros.
  return {sx * x + 0.0, sy * y + 0.0, depth};
}

geometry::Point3 place_object(const geometry::Point3& anchor, double size,
                              const TunnelSpec& spec) {
  if (!(size > 0.0)) throw ValidationError("place_object: size must be positive");
  if (size >= spec.half_extent) {
    throw ValidationError("place_object: size must be smaller than the half extent");
  }
  const double norm = std::hypot(anchor.x, anchor.y);
  if (!(norm > 0.0)) throw ValidationError("place_object: anchor lies on the tunnel axis");
  return {anchor.x - size * anchor.x / norm + 0.0, anchor.y - size * anchor.y / norm + 0.0,
          anchor.z};
}

std::vector<SceneInstance> generate_grid(const TunnelSpec& spec, const Depths& depths,
                                         int instances_per_cell, std::uint64_t master_seed) {
  spec.validate();
  check_depths(spec, depths);
  if (instances_per_cell < 1) {
    throw ValidationError("generate_grid: instances_per_cell must be at least 1");
  }
  const int slots = spec.angular_slots;
  const std::size_t total =
      static_cast<std::size_t>(slots) * slots * static_cast<std::size_t>(instances_per_cell);
  std::vector<SceneInstance> scenes(total);
  parallel_for(total, [&](std::size_t k) {
    const int t = static_cast<int>(k % instances_per_cell);
    const int j = static_cast<int>((k / instances_per_cell) % slots);
    const int i = static_cast<int>(k / instances_per_cell / slots);
    auto rng = CounterRng::derive(master_seed, {static_cast<std::uint64_t>(i),
                                                static_cast<std::uint64_t>(j),
                                                static_cast<std::uint64_t>(t)});
    const Appearance a = sample_appearance(rng);
    scenes[k] = build_scene(spec, format_id("st-%02d-%02d-%02d", i, j, t), i, j, t, a, depths);
  });
  return scenes;
}

std::vector<SweepLayout> full_grid_layouts(const TunnelSpec& spec, const Depths& depths,
                                           int instances_per_cell) {
  std::vector<SweepLayout> out;
  for (int i = 0; i < spec.angular_slots; ++i) {
    for (int j = 0; j < spec.angular_slots; ++j) {
      for (int t = 0; t < instances_per_cell; ++t) out.push_back({i, j, depths, t});
    }
  }
  return out;
}

std::vector<SceneInstance> generate_size_sweep(const TunnelSpec& spec,
                                               std::span<const SweepLayout> layouts,
                                               std::uint64_t master_seed) {
  spec.validate();
  for (const auto& l : layouts) check_depths(spec, l.depths);
  const auto sweep = SizeSweepConfig::standard();
  std::vector<SceneInstance> scenes(layouts.size() * kSizeSweepSteps);
  parallel_for(layouts.size(), [&](std::size_t n) {
    const SweepLayout& l = layouts[n];
    // Tag 1 keeps sweep streams disjoint from grid streams.
    auto rng = CounterRng::derive(master_seed, {static_cast<std::uint64_t>(l.theta_far),
                                                static_cast<std::uint64_t>(l.theta_near),
                                                static_cast<std::uint64_t>(l.instance_index),
                                                1});
    const Appearance base = sample_appearance(rng);
    for (int k = 0; k < kSizeSweepSteps; ++k) {
      Appearance a = base;
      a.far.size = sweep.s1_values[k];
      a.near.size = sweep.s2_values[k];
      SceneInstance s =
          build_scene(spec,
                      format_id("sz-%02d-%02d-%02d-s%02d", l.theta_far, l.theta_near,
                                l.instance_index, k),
                      l.theta_far, l.theta_near, l.instance_index, a, l.depths);
      s.size_s1 = sweep.s1_values[k];
      scenes[n * kSizeSweepSteps + k] = std::move(s);
    }
  });
  return scenes;
}

std::array<QuestionRecord, 4> generate_qa(const SceneInstance& scene) {
  const std::string far = scene.far_object.spec.descriptor();
  const std::string near = scene.near_object.spec.descriptor();
  if (far == near) {
    throw std::logic_error("generate_qa: " + scene.scene_id + ": identical object descriptors");
  }
  auto closer = [](const std::string& a, const std::string& b) {
    return "Is the " + a + " closer to the camera than the " + b + "?";
  };
  auto farther = [](const std::string& a, const std::string& b) {
    return "Is the " + a + " farther from the camera than the " + b + "?";
  };
  auto record = [&](int id, std::string text, Answer gt, const std::string& subject,
                    const std::string& reference) {
    return QuestionRecord{scene.scene_id + "-q" + std::to_string(id), scene.scene_id, id,
                          std::move(text), gt, {subject, reference}};
  };
  return {record(1, closer(far, near), Answer::kNo, far, near),
          record(2, closer(near, far), Answer::kYes, near, far),
          record(3, farther(near, far), Answer::kNo, near, far),
          record(4, farther(far, near), Answer::kYes, far, near)};
}

std::vector<QuestionRecord> generate_qa(std::span<const SceneInstance> scenes) {
  std::vector<QuestionRecord> out;
  out.reserve(scenes.size() * 4);
  for (const auto& s : scenes) {
    for (auto& q : generate_qa(s)) out.push_back(std::move(q));
  }
  return out;
}

}  // namespace tunnelprobe::tunnelgen
