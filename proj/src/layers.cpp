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

#include "tunnelprobe/layers.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "tunnelprobe/error.hpp"
#include "tunnelprobe/numeric.hpp"
#include "tunnelprobe/rng.hpp"

namespace tunnelprobe::probing {
namespace {

constexpr std::array<Axis, 3> kAxes = {Axis::kHorizontal, Axis::kVertical, Axis::kDistance};

std::string join(const std::vector<int>& xs) {
  std::string out = "[";
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(xs[k]);
  }
  return out + "]";
}

// Windowed population variance of VD-EI around `layer`; nullopt when fewer
// than two defined values fall inside the window or VD-EI is missing there.
std::optional<double> vdei_variance(const std::map<int, const CoherenceReport*>& by_layer,
                                    int layer, int window) {
  auto self = by_layer.find(layer);
  if (self == by_layer.end() || !self->second->vd_ei) return std::nullopt;
  const int half = window / 2;
  std::vector<double> xs;
  for (int l = layer - half; l <= layer + half; ++l) {
    auto it = by_layer.find(l);
    if (it != by_layer.end() && it->second->vd_ei) xs.push_back(*it->second->vd_ei);
  }
  if (xs.size() < 2) return std::nullopt;
  const double mean = compensated_mean(xs);
  CompensatedSum acc;
  for (double x : xs) acc.add((x - mean) * (x - mean));
  return acc.value() / static_cast<double>(xs.size());
}

}  // namespace

LayerSelectionReport select_layer(std::span<const CoherenceReport> trajectories,
                                  int total_layers, const LayerSelectionConfig& config) {
  if (trajectories.empty()) throw ValidationError("select_layer: no trajectories");
  if (!(config.plateau_fraction > 0.0 && config.plateau_fraction <= 1.0)) {
    throw ValidationError("select_layer: plateau_fraction must lie in (0, 1]");
  }
  if (config.stability_window < 1) throw ValidationError("select_layer: window must be >= 1");
  std::map<int, const CoherenceReport*> by_layer;
  for (const auto& r : trajectories) {
    if (r.layer < 0 || r.layer >= total_layers) {
      throw ValidationError("select_layer: layer " + std::to_string(r.layer) +
                            " outside [0, total_layers)");
    }
    if (!by_layer.emplace(r.layer, &r).second) {
      throw ValidationError("select_layer: duplicate layer " + std::to_string(r.layer));
    }
  }

  LayerSelectionReport rep;
  rep.total_layers = total_layers;
  for (const auto& [l, r] : by_layer) rep.trajectories.push_back(*r);

  const int band = std::max(
      2, static_cast<int>(std::ceil(config.final_band_fraction * total_layers)));
  std::vector<int> eligible;
  for (const auto& [l, r] : by_layer) {
    if (l >= total_layers - band) {
      rep.excluded_final_band.push_back(l);
    } else {
      eligible.push_back(l);
    }
  }
  rep.trace.push_back("final-band exclusion: last " + std::to_string(band) + " of " +
                      std::to_string(total_layers) + " layers");
  if (eligible.empty()) {
    throw ValidationError("select_layer: no layers outside the final band");
  }

  // Per-axis plateau sets over all supplied layers.
  std::vector<std::set<int>> plateau;
  for (Axis a : kAxes) {
    std::optional<double> peak;
    for (const auto& [l, r] : by_layer) {
      if (const auto c = r->coherence(a); c && (!peak || *c > *peak)) peak = c;
    }
    if (!peak) {
      rep.trace.push_back(std::string("axis ") + std::string(to_string(a)) +
                          ": no defined coherence, not gating");
      continue;
    }
    const double threshold = *peak - (1.0 - config.plateau_fraction) * std::fabs(*peak);
    std::set<int> s;
    for (const auto& [l, r] : by_layer) {
      if (const auto c = r->coherence(a); c && *c >= threshold) s.insert(l);
    }
    plateau.push_back(std::move(s));
  }

  auto in_all = [&](int l) {
    return std::all_of(plateau.begin(), plateau.end(), [l](const auto& s) { return s.contains(l); });
  };
  auto in_any = [&](int l) {
    return std::any_of(plateau.begin(), plateau.end(), [l](const auto& s) { return s.contains(l); });
  };
  for (int l : eligible) {
    if (in_all(l)) rep.candidate_range.push_back(l);
  }
  rep.trace.push_back("coherence plateau (intersection): " + join(rep.candidate_range));
  if (rep.candidate_range.empty()) {
    for (int l : eligible) {
      if (in_any(l)) rep.candidate_range.push_back(l);
    }
    rep.relaxed_to_union = true;
    rep.warning = true;
    rep.trace.push_back("empty intersection; relaxed to union: " + join(rep.candidate_range));
  }
  if (rep.candidate_range.empty()) {
    rep.candidate_range = eligible;
    rep.warning = true;
    rep.trace.push_back("no axis near peak outside the final band; using all eligible layers");
  }
  if (!rep.relaxed_to_union && rep.candidate_range.size() == eligible.size()) {
    rep.flat_plateau = true;
    rep.warning = true;
    rep.trace.push_back("plateau covers every eligible layer; coherence does not discriminate");
  }

  for (int l : rep.candidate_range) {
    const auto var = vdei_variance(by_layer, l, config.stability_window);
    if (var && *var < config.stability_tol) rep.stable_layers.push_back(l);
  }
  rep.trace.push_back("VD-EI stable candidates: " + join(rep.stable_layers));
  if (!rep.stable_layers.empty()) {
    rep.selected_layer = rep.stable_layers.back();
    rep.trace.push_back("selected deepest stable candidate " + std::to_string(rep.selected_layer));
  } else {
    rep.vdei_unstable = true;
    rep.warning = true;
    rep.selected_layer = rep.candidate_range.back();
    rep.trace.push_back("no stable candidate; coherence plateau takes precedence, selected " +
                        std::to_string(rep.selected_layer));
  }
  return rep;
}

RobustnessResult layer_robustness(std::span<const RobustnessModel> models, int samples,
                                  std::uint64_t seed) {
  if (models.size() < 2) throw ValidationError("layer_robustness: need at least two models");
  if (samples < 1) throw ValidationError("layer_robustness: samples must be positive");
  for (const auto& m : models) {
    if (m.candidate_range.empty()) {
      throw ValidationError("layer_robustness: empty candidate range for " + m.name);
    }
    for (int l : m.candidate_range) {
      if (l < 0 || l >= static_cast<int>(m.coh_d.size()) || !m.coh_d[l]) {
        throw ValidationError("layer_robustness: " + m.name + " has no Coh_D at layer " +
                              std::to_string(l));
      }
    }
  }
  std::vector<double> reference;
  for (const auto& m : models) reference.push_back(m.reference);

  RobustnessResult out;
  auto rng = CounterRng::derive(seed, {});
  std::vector<double> x(models.size());
  for (int s = 0; s < samples; ++s) {
    for (std::size_t m = 0; m < models.size(); ++m) {
      const auto& range = models[m].candidate_range;
      x[m] = *models[m].coh_d[range[rng.uniform_index(range.size())]];
    }
    if (const auto rho = spearman(x, reference)) {
      out.rho.push_back(*rho);
    } else {
      ++out.undefined_samples;
    }
  }
  if (!out.rho.empty()) {
    out.mean_rho = compensated_mean(out.rho);
    out.min_rho = *std::min_element(out.rho.begin(), out.rho.end());
    out.max_rho = *std::max_element(out.rho.begin(), out.rho.end());
  }
  return out;
}

}  // namespace tunnelprobe::probing
