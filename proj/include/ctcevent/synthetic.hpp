/* Copyright 2026 The ctcevent Authors. All Rights Reserved.

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

// Scripted probability streams for end-to-end testing. Two output shapes:
// short spikes (what a CTC-trained model emits) and sustained blocks (what a
// frame-wise cross-entropy model emits).

#ifndef CTCEVENT_SYNTHETIC_HPP_
#define CTCEVENT_SYNTHETIC_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ctcevent/core.hpp"
#include "ctcevent/eval.hpp"

namespace ctcevent {

enum class SyntheticMode { kSpiky, kBlocky };

struct ScriptedEvent {
  TokenId class_id = 1;
  int apex_frame = 0;
};

struct SyntheticScript {
  int total_frames = 0;
  std::vector<ScriptedEvent> events;
  SyntheticMode mode = SyntheticMode::kSpiky;
  int extent_frames = 3;     // spike width or block length
  double noise_level = 0.0;  // in [0, 1)
  std::uint64_t seed = 0;
  int num_classes = 2;  // non-blank classes
  double sample_rate_hz = 64.0;
  double block_peak = 0.8;

  // First and last frame (inclusive) covered by an event centred on apex.
  std::pair<int, int> extent(int apex) const {
    const int lo = apex - (extent_frames - 1) / 2;
    return {lo, lo + extent_frames - 1};
  }

  void validate() const {
    if (total_frames < 1) throw Error(Errc::kScript, "script needs frames");
    if (extent_frames < 1) throw Error(Errc::kScript, "extent must be >= 1");
    if (num_classes < 1) throw Error(Errc::kScript, "script needs a class");
    if (!(noise_level >= 0.0 && noise_level < 1.0)) {
      throw Error(Errc::kScript, "noise level must be in [0, 1)");
    }
    if (!(block_peak > 0.0 && block_peak <= 1.0)) {
      throw Error(Errc::kScript, "block peak must be in (0, 1]");
    }
    if (!(sample_rate_hz > 0.0)) {
      throw Error(Errc::kScript, "sample rate must be positive");
    }
    int prev_hi = -1;
    for (std::size_t i = 0; i < events.size(); ++i) {
      const auto& e = events[i];
      if (e.class_id < 1 || e.class_id > num_classes) {
        throw Error(Errc::kScript, "event " + std::to_string(i) + " has class " +
                                       std::to_string(e.class_id));
      }
      if (i > 0 && e.apex_frame <= events[i - 1].apex_frame) {
        throw Error(Errc::kScript, "event apexes must be strictly increasing");
      }
      const auto [lo, hi] = extent(e.apex_frame);
      if (lo < 0 || hi >= total_frames) {
        throw Error(Errc::kScript,
                    "event at frame " + std::to_string(e.apex_frame) +
                        " does not fit in " + std::to_string(total_frames) +
                        " frames");
      }
      if (lo <= prev_hi) {
        throw Error(Errc::kScript, "event at frame " +
                                       std::to_string(e.apex_frame) +
                                       " overlaps the previous one");
      }
      prev_hi = hi;
    }
  }
};

struct SyntheticRecording {
  ProbMatrix probs;
  std::vector<GroundTruthEvent> ground_truth;
};

// Spikes peak at 1 on the apex and fall off linearly so that every frame of
// the extent still favours the event class over blank. Blocks hold
// block_peak across the extent. Noise mixes in a random distribution per
// row with weight noise_level.
inline SyntheticRecording gen_synthetic(const SyntheticScript& script) {
  script.validate();
  const int tokens = script.num_classes + 1;
  std::vector<std::vector<double>> rows(script.total_frames,
                                        std::vector<double>(tokens, 0.0));
  for (auto& r : rows) r[kBlank] = 1.0;

  SyntheticRecording rec;
  for (const auto& e : script.events) {
    const auto [lo, hi] = script.extent(e.apex_frame);
    const int half = std::max(e.apex_frame - lo, hi - e.apex_frame);
    for (int f = lo; f <= hi; ++f) {
      double p = script.block_peak;
      if (script.mode == SyntheticMode::kSpiky) {
        p = 1.0 - static_cast<double>(std::abs(f - e.apex_frame)) / (half + 2);
      }
      rows[f][kBlank] = 1.0 - p;
      rows[f][e.class_id] = p;
    }
    rec.ground_truth.push_back({e.class_id, lo, hi});
  }

  if (script.noise_level > 0.0) {
    std::mt19937_64 rng(script.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> noise(tokens);
    for (auto& r : rows) {
      double sum = 0.0;
      for (double& v : noise) sum += (v = unit(rng));
      double row_sum = 0.0;
      for (int c = 0; c < tokens; ++c) {
        r[c] = (1.0 - script.noise_level) * r[c] + script.noise_level * noise[c] / sum;
        row_sum += r[c];
      }
      for (double& v : r) v /= row_sum;
    }
  }
  rec.probs = validate_prob_matrix(rows, script.sample_rate_hz);
  return rec;
}

}  // namespace ctcevent

#endif  // CTCEVENT_SYNTHETIC_HPP_
