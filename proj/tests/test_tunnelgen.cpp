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

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "tunnelprobe/error.hpp"
#include "tunnelprobe/heuristics.hpp"

namespace tunnelprobe::tunnelgen {
namespace {

TunnelSpec default_spec() { return TunnelSpec{}; }

void expect_point(const geometry::Point3& p, double x, double y, double z, double tol = 1e-12) {
  EXPECT_NEAR(p.x, x, tol);
  EXPECT_NEAR(p.y, y, tol);
  EXPECT_NEAR(p.z, z, tol);
}

TEST(AngularPosition, CardinalAndCornerSlots) {
  const auto spec = default_spec();
  expect_point(angular_position(spec, 0, 5), 0, -1, 5);
  expect_point(angular_position(spec, 8, 5), 0, 1, 5);
  expect_point(angular_position(spec, 2, 5), 1, -1, 5);
  expect_point(angular_position(spec, 4, 5), 1, 0, 5);
  expect_point(angular_position(spec, 12, 5), -1, 0, 5);
}

TEST(AngularPosition, RayHitsPerimeter) {
  const auto spec = default_spec();
  for (int k = 0; k < spec.angular_slots; ++k) {
    const auto p = angular_position(spec, k, 4);
    EXPECT_NEAR(std::max(std::fabs(p.x), std::fabs(p.y)), spec.half_extent, 1e-12);
    // Direction matches the slot angle: (sin t, -cos t) up to scale.
    const double t = 2 * M_PI * k / spec.angular_slots;
    EXPECT_NEAR(p.x * -std::cos(t) - p.y * std::sin(t), 0.0, 1e-12);
    EXPECT_GT(p.x * std::sin(t) - p.y * std::cos(t), 0.0);
  }
}

TEST(AngularPosition, Symmetries) {
  const auto spec = default_spec();
  const int s = spec.angular_slots;
  for (int k = 0; k < s; ++k) {
    const auto a = angular_position(spec, k, 5);
    const auto r = angular_position(spec, (k + s / 2) % s, 5);
    const auto m = angular_position(spec, (s - k) % s, 5);
    EXPECT_EQ(r.x, -a.x + 0.0);
    EXPECT_EQ(r.y, -a.y + 0.0);
    EXPECT_EQ(m.x, -a.x + 0.0);
    EXPECT_EQ(m.y, a.y);
    EXPECT_EQ(m.z, a.z);
  }
}

TEST(AngularPosition, RangeErrors) {
  const auto spec = default_spec();
  EXPECT_THROW(angular_position(spec, -1, 5), ValidationError);
  EXPECT_THROW(angular_position(spec, 16, 5), ValidationError);
  EXPECT_THROW(angular_position(spec, 0, 0), ValidationError);
  EXPECT_THROW(angular_position(spec, 0, 12), ValidationError);
}

TEST(PlaceObject, MovesInwardBySize) {
  const auto spec = default_spec();
  expect_point(place_object({0, -1, 5}, 0.2, spec), 0, -0.8, 5);
  const double s = 0.2 / std::sqrt(2.0);
  expect_point(place_object({1, -1, 5}, 0.2, spec), 1 - s, -1 + s, 5);
  EXPECT_THROW(place_object({0, -1, 5}, 1.0, spec), ValidationError);
  EXPECT_THROW(place_object({0, -1, 5}, 0.0, spec), ValidationError);
}

TEST(GenerateGrid, Cardinality) {
  const auto spec = default_spec();
  EXPECT_EQ(generate_grid(spec, {}, 12, 1).size(), 3072u);
  EXPECT_EQ(generate_grid(spec, {}, 1, 1).size(), 256u);
  EXPECT_THROW(generate_grid(spec, {}, 0, 1), ValidationError);
  EXPECT_THROW(generate_grid(spec, {3.0, 6.0}, 1, 1), ValidationError);
}

TEST(GenerateGrid, OrderIdsAndDepthPreservation) {
  const auto spec = default_spec();
  const auto scenes = generate_grid(spec, {}, 2, 9);
  std::set<std::string> ids;
  std::size_t n = 0;
  for (int i = 0; i < 16; ++i) {
    for (int j = 0; j < 16; ++j) {
      for (int t = 0; t < 2; ++t, ++n) {
        const auto& s = scenes[n];
        EXPECT_EQ(s.cell_i, i);
        EXPECT_EQ(s.cell_j, j);
        EXPECT_EQ(s.instance_index, t);
        EXPECT_EQ(s.far_object.placement.theta_index, i);
        EXPECT_EQ(s.near_object.placement.theta_index, j);
        EXPECT_EQ(s.far_object.placement.depth, 6.0);
        EXPECT_EQ(s.near_object.placement.depth, 3.0);
        ids.insert(s.scene_id);
      }
    }
  }
  EXPECT_EQ(ids.size(), scenes.size());
  EXPECT_EQ(scenes.front().scene_id, "st-00-00-00");
  EXPECT_EQ(scenes.back().scene_id, "st-15-15-01");
}

TEST(GenerateGrid, SampledAttributesInRange) {
  const auto spec = default_spec();
  const auto scenes = generate_grid(spec, {}, 12, 2024);
  std::set<int> colors, shapes;
  for (const auto& s : scenes) {
    const auto& f = s.far_object.spec;
    const auto& n = s.near_object.spec;
    EXPECT_GE(f.size, 0.2);
    EXPECT_LE(f.size, 0.3);
    EXPECT_GE(n.size, 0.1);
    EXPECT_LE(n.size, 0.15);
    for (const auto* o : {&f, &n}) {
      EXPECT_GE(o->roughness, kRoughnessMin);
      EXPECT_LE(o->roughness, kRoughnessMax);
      colors.insert(static_cast<int>(o->color));
      shapes.insert(static_cast<int>(o->shape));
    }
    EXPECT_FALSE(f.color == n.color && f.shape == n.shape);
    EXPECT_GE(s.lighting.sun_rotation, kSunRotationMin);
    EXPECT_LE(s.lighting.sun_rotation, kSunRotationMax);
    EXPECT_EQ(s.lighting.background_intensity, 0.15);
    EXPECT_EQ(s.heuristic_label, heuristics::classify_scene(s, spec.camera));
    EXPECT_FALSE(s.size_s1.has_value());
  }
  EXPECT_EQ(colors.size(), 7u);
  EXPECT_EQ(shapes.size(), 2u);
}

TEST(GenerateGrid, DeterministicInSeed) {
  const auto spec = default_spec();
  EXPECT_EQ(generate_grid(spec, {}, 3, 42), generate_grid(spec, {}, 3, 42));
  EXPECT_NE(generate_grid(spec, {}, 3, 42), generate_grid(spec, {}, 3, 43));
}

TEST(SizeSweep, StandardConfig) {
  const auto cfg = SizeSweepConfig::standard();
  EXPECT_DOUBLE_EQ(cfg.s1_values.front(), 0.10);
  EXPECT_DOUBLE_EQ(cfg.s2_values.front(), 0.30);
  EXPECT_DOUBLE_EQ(cfg.s1_values[5], 0.20);
  EXPECT_DOUBLE_EQ(cfg.s2_values[5], 0.20);
  EXPECT_DOUBLE_EQ(cfg.s1_values.back(), 0.30);
  for (int k = 0; k < kSizeSweepSteps; ++k) {
    EXPECT_NEAR(cfg.s1_values[k] + cfg.s2_values[k], 0.4, 1e-12);
    if (k) EXPECT_GT(cfg.s1_values[k], cfg.s1_values[k - 1]);
  }
}

TEST(SizeSweep, OnlySizesVaryWithinALayout) {
  const auto spec = default_spec();
  const auto layouts = full_grid_layouts(spec, {}, 1);
  ASSERT_EQ(layouts.size(), 256u);
  const auto scenes = generate_size_sweep(spec, layouts, 3);
  ASSERT_EQ(scenes.size(), 256u * kSizeSweepSteps);
  for (std::size_t b = 0; b < scenes.size(); b += kSizeSweepSteps) {
    const auto& first = scenes[b];
    for (int k = 0; k < kSizeSweepSteps; ++k) {
      const auto& s = scenes[b + k];
      ASSERT_TRUE(s.size_s1.has_value());
      EXPECT_NEAR(s.far_object.spec.size, *s.size_s1, 1e-15);
      EXPECT_NEAR(s.far_object.spec.size + s.near_object.spec.size, 0.4, 1e-12);
      EXPECT_EQ(s.far_object.spec.color, first.far_object.spec.color);
      EXPECT_EQ(s.near_object.spec.shape, first.near_object.spec.shape);
      EXPECT_EQ(s.lighting, first.lighting);
      EXPECT_EQ(s.far_object.placement.theta_index, first.far_object.placement.theta_index);
      EXPECT_GT(s.far_object.placement.depth, s.near_object.placement.depth);
    }
  }
}

TEST(GenerateQa, TemplatesAndGroundTruth) {
  SceneInstance s;
  s.scene_id = "x";
  s.far_object.spec = {Shape::kSphere, Color::kRed, 0.2, 0.5};
  s.near_object.spec = {Shape::kCube, Color::kBlue, 0.1, 0.5};
  const auto qa = generate_qa(s);
  EXPECT_EQ(qa[0].text, "Is the red sphere closer to the camera than the blue cube?");
  EXPECT_EQ(qa[0].ground_truth, Answer::kNo);
  EXPECT_EQ(qa[1].ground_truth, Answer::kYes);
  EXPECT_EQ(qa[2].ground_truth, Answer::kNo);
  EXPECT_EQ(qa[3].text, "Is the red sphere farther from the camera than the blue cube?");
  EXPECT_EQ(qa[3].ground_truth, Answer::kYes);
  for (int t = 0; t < 4; ++t) {
    EXPECT_EQ(qa[t].template_id, t + 1);
    EXPECT_EQ(qa[t].question_id, "x-q" + std::to_string(t + 1));
  }
  s.near_object.spec = s.far_object.spec;
  EXPECT_THROW(generate_qa(s), std::logic_error);
}

TEST(GenerateQa, FullGridCount) {
  const auto scenes = generate_grid(default_spec(), {}, 12, 7);
  EXPECT_EQ(generate_qa(scenes).size(), 12288u);
}

}  // namespace
}  // namespace tunnelprobe::tunnelgen
