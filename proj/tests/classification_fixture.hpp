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

// Hand-labeled classification cases. Labels were written down from the rule
// by hand, not computed, including gaps sitting exactly on 5% of the height.
#ifndef TUNNELPROBE_TESTS_CLASSIFICATION_FIXTURE_HPP_
#define TUNNELPROBE_TESTS_CLASSIFICATION_FIXTURE_HPP_

#include <array>

#include "tunnelprobe/scene.hpp"

namespace tunnelprobe::testing {

struct ClassificationCase {
  const char* id;
  double far_v;
  double near_v;
  int height;
  HeuristicLabel expected;
};

inline constexpr auto kCons = HeuristicLabel::kConsistent;
inline constexpr auto kCtr = HeuristicLabel::kCounter;
inline constexpr auto kAmb = HeuristicLabel::kAmbiguous;

inline constexpr std::array<ClassificationCase, 30> kClassificationCases = {{
    {"far-higher", 300, 600, 1000, kCons},
    {"far-lower", 600, 300, 1000, kCtr},
    {"small-gap", 500, 530, 1000, kAmb},
    {"tie-1000-cons", 500, 550, 1000, kCons},
    {"tie-1000-ctr", 550, 500, 1000, kCtr},
    {"just-below-tie", 500, 549.999, 1000, kAmb},
    {"just-above-tie", 500, 550.001, 1000, kCons},
    {"equal", 420, 420, 1000, kAmb},
    {"full-span", 0, 1000, 1000, kCons},
    {"full-span-rev", 1000, 0, 1000, kCtr},
    {"top-edge-gap", 0, 49, 1000, kAmb},
    {"tie-480", 100, 124, 480, kCons},
    {"below-tie-480", 100, 123.9, 480, kAmb},
    {"tie-480-rev", 124, 100, 480, kCtr},
    {"tie-768", 100, 138.4, 768, kCons},
    {"tie-768-rev", 238.4, 200, 768, kCtr},
    {"below-tie-768", 100, 138.3, 768, kAmb},
    {"tie-1024", 512, 563.2, 1024, kCons},
    {"below-tie-1024", 512, 563.1, 1024, kAmb},
    {"tie-224", 11.2, 0, 224, kCtr},
    {"below-tie-224", 11.1, 0, 224, kAmb},
    {"large-cons-720", 100, 700, 720, kCons},
    {"large-ctr-720", 700, 100, 720, kCtr},
    {"mid-amb-720", 360, 390, 720, kAmb},
    {"tie-720", 360, 396, 720, kCons},
    {"fraction-pixels", 10.25, 70.75, 1000, kCons},
    {"fraction-amb", 10.25, 60.2, 1000, kAmb},
    {"tiny-image-tie", 2, 7, 100, kCons},
    {"tiny-image-amb", 2, 6.99, 100, kAmb},
    {"tiny-image-ctr", 90, 10, 100, kCtr},
}};

}  // namespace tunnelprobe::testing

#endif  // TUNNELPROBE_TESTS_CLASSIFICATION_FIXTURE_HPP_
