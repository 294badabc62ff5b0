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

#ifndef TUNNELPROBE_LAYERS_HPP_
#define TUNNELPROBE_LAYERS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tunnelprobe/probing.hpp"

namespace tunnelprobe::probing {

struct LayerSelectionConfig {
  double plateau_fraction = 0.9;  // of each axis' peak coherence
  int stability_window = 3;       // layers, centered
  double stability_tol = 0.01;    // max VD-EI variance inside the window
  double final_band_fraction = 0.05;
};

struct LayerSelectionReport {
  int selected_layer = -1;
  int total_layers = 0;
  std::vector<int> candidate_range;
  std::vector<int> excluded_final_band;
  std::vector<int> stable_layers;  // candidates passing the VD-EI stability test
  std::vector<CoherenceReport> trajectories;
  std::vector<std::string> trace;  // rules applied, in order
  bool relaxed_to_union = false;
  bool flat_plateau = false;       // every eligible layer passed the plateau test
  bool vdei_unstable = false;      // no candidate passed the stability test
  bool warning = false;
};

/// Picks a representative layer. Candidates are the layers where all three
/// axis coherences reach plateau_fraction of their per-axis maxima, minus
/// the last max(2, ceil(final_band_fraction * total_layers)) layers. Among
/// candidates, layers whose windowed VD-EI variance is below stability_tol
/// win; the deepest one is chosen. When no candidate is stable the
/// coherence plateau takes precedence and the deepest candidate is used.
/// An empty intersection relaxes to the union of per-axis plateaus.
LayerSelectionReport select_layer(std::span<const CoherenceReport> trajectories,
                                  int total_layers, const LayerSelectionConfig& config = {});

struct RobustnessModel {
  std::string name;
  std::vector<std::optional<double>> coh_d;  // indexed by layer
  std::vector<int> candidate_range;
  double reference = 0.0;                    // Coh_D at the selected layer, or a rank score
};

struct RobustnessResult {
  std::vector<double> rho;  // defined samples only
  int undefined_samples = 0;
  double mean_rho = 0.0;
  double min_rho = 0.0;
  double max_rho = 0.0;
};

/// Draws one layer per model uniformly from its candidate range, ranks the
/// models by Coh_D at the drawn layers and correlates that ranking with the
/// reference scores. Requires at least two models.
RobustnessResult layer_robustness(std::span<const RobustnessModel> models, int samples,
                                  std::uint64_t seed);

}  // namespace tunnelprobe::probing

#endif  // TUNNELPROBE_LAYERS_HPP_
