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

#ifndef TUNNELPROBE_AGENTS_HPP_
#define TUNNELPROBE_AGENTS_HPP_

// Scripted answerers with known behavior, used to check the scoring path
// end to end without a real model.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "tunnelprobe/scene.hpp"
#include "tunnelprobe/scoring.hpp"

namespace tunnelprobe::scoring {

enum class AgentKind {
  kHeightHeuristic,  // higher in the image => farther
  kAntiHeuristic,    // lower in the image => farther
  kDepthOracle,      // true depth ordering
  kSizeHeuristic,    // smaller object => farther
  kNoisyOracle,      // depth oracle flipped with probability epsilon
};

AgentKind parse_agent(std::string_view name);
std::string_view to_string(AgentKind kind);

struct AgentConfig {
  AgentKind kind = AgentKind::kDepthOracle;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
};

// Half of the Yes/No logit spread emitted by agents.
inline constexpr double kAgentLogit = 5.0;

LogitRecord mock_agent(const AgentConfig& config, const SceneInstance& scene,
                       const QuestionRecord& question, const geometry::CameraModel& camera);

// Questions must reference scenes in `scenes`.
std::vector<LogitRecord> run_agent(const AgentConfig& config,
                                   std::span<const SceneInstance> scenes,
                                   std::span<const QuestionRecord> questions,
                                   const geometry::CameraModel& camera);

}  // namespace tunnelprobe::scoring

#endif  // TUNNELPROBE_AGENTS_HPP_
