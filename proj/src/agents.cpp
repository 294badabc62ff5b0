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

#include "tunnelprobe/agents.hpp"

#include <optional>
#include <string>
#include <unordered_map>

#include "tunnelprobe/error.hpp"
#include "tunnelprobe/rng.hpp"

namespace tunnelprobe::scoring {
namespace {

struct AgentName {
  AgentKind kind;
  std::string_view name;
};

constexpr AgentName kAgentNames[] = {
    {AgentKind::kHeightHeuristic, "height-heuristic"},
    {AgentKind::kAntiHeuristic, "anti-heuristic"},
    {AgentKind::kDepthOracle, "depth-oracle"},
    {AgentKind::kSizeHeuristic, "size-heuristic"},
    {AgentKind::kNoisyOracle, "noisy-oracle"},
};

// True when the agent believes the far object is the farther one; nullopt
// when its cue cannot separate the two.
std::optional<bool> believes_far_is_farther(AgentKind kind, const SceneInstance& scene,
                                            const geometry::CameraModel& camera) {
  switch (kind) {
    case AgentKind::kHeightHeuristic:
    case AgentKind::kAntiHeuristic: {
      const double far_v = geometry::project(camera, scene.far_object.placement.center).v;
      const double near_v = geometry::project(camera, scene.near_object.placement.center).v;
      if (far_v == near_v) return std::nullopt;
      const bool far_higher = far_v < near_v;
      return kind == AgentKind::kHeightHeuristic ? far_higher : !far_higher;
    }
    case AgentKind::kSizeHeuristic: {
      const double a = scene.far_object.spec.size;
      const double b = scene.near_object.spec.size;
      if (a == b) return std::nullopt;
      return a < b;
    }
    case AgentKind::kDepthOracle:
    case AgentKind::kNoisyOracle:
      return scene.far_object.placement.depth > scene.near_object.placement.depth;
  }
  return std::nullopt;
}

}  // namespace

AgentKind parse_agent(std::string_view name) {
  for (const auto& a : kAgentNames) {
    if (a.name == name) return a.kind;
  }
  throw ValidationError("unknown agent '" + std::string(name) + "'");
}

std::string_view to_string(AgentKind kind) {
  for (const auto& a : kAgentNames) {
    if (a.kind == kind) return a.name;
  }
  return "unknown";
}

LogitRecord mock_agent(const AgentConfig& config, const SceneInstance& scene,
                       const QuestionRecord& question, const geometry::CameraModel& camera) {
  const std::string& subject = question.queried_pair[0];
  bool subject_is_far = false;
  if (subject == scene.far_object.spec.descriptor()) {
    subject_is_far = true;
  } else if (subject != scene.near_object.spec.descriptor()) {
    throw ValidationError("mock_agent: question " + question.question_id +
                          " names an object not in scene " + scene.scene_id);
  }
  // Templates 1-2 ask "closer", 3-4 ask "farther".
  const bool asks_farther = question.template_id >= 3;

  bool yes = false;
  if (const auto far_farther = believes_far_is_farther(config.kind, scene, camera)) {
    const bool subject_farther = subject_is_far == *far_farther;
    yes = asks_farther ? subject_farther : !subject_farther;
  }
  if (config.kind == AgentKind::kNoisyOracle) {
    auto rng = CounterRng::derive(config.seed, {stable_hash(question.question_id)});
    if (rng.bernoulli(config.epsilon)) yes = !yes;
  }
  LogitRecord r;
  r.question_id = question.question_id;
  r.logit_yes = yes ? kAgentLogit : -kAgentLogit;
  r.logit_no = -r.logit_yes;
  r.answer_text = yes ? "Yes" : "No";
  return r;
}

std::vector<LogitRecord> run_agent(const AgentConfig& config,
                                   std::span<const SceneInstance> scenes,
                                   std::span<const QuestionRecord> questions,
                                   const geometry::CameraModel& camera) {
  if (config.kind == AgentKind::kNoisyOracle &&
      !(config.epsilon >= 0.0 && config.epsilon <= 1.0)) {
    throw ValidationError("noisy oracle: epsilon must lie in [0, 1]");
  }
  std::unordered_map<std::string_view, const SceneInstance*> by_id;
  for (const auto& s : scenes) by_id.emplace(s.scene_id, &s);
  std::vector<LogitRecord> out;
  out.reserve(questions.size());
  for (const auto& q : questions) {
    auto it = by_id.find(q.scene_id);
    if (it == by_id.end()) {
      throw ValidationError("dangling reference: question " + q.question_id +
                            " names unknown scene " + q.scene_id);
    }
    out.push_back(mock_agent(config, *it->second, q, camera));
  }
  return out;
}

}  // namespace tunnelprobe::scoring
