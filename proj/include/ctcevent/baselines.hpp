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

// Reference detectors to compare the decoders against.

#ifndef CTCEVENT_BASELINES_HPP_
#define CTCEVENT_BASELINES_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "ctcevent/core.hpp"
#include "ctcevent/windowing.hpp"

namespace ctcevent {

struct TwoStageParams {
  double threshold = 0.5;
  double min_distance_s = 2.0;

  void validate() const {
    if (!(threshold > 0.0 && threshold < 1.0)) {
      throw Error(Errc::kParameter, "two-stage threshold must be in (0, 1)");
    }
    if (!(min_distance_s > 0.0)) {
      throw Error(Errc::kParameter, "minimum distance must be positive");
    }
  }
};

// Thresholded maximum search over frame-level class probabilities.
//
// Non-blank classes are pooled per frame by their maximum. The highest pooled
// value above the threshold becomes a detection (class = argmax at that
// frame), every frame closer than min_distance_s on either side is
// suppressed, and the search repeats. Equal peaks resolve to the earlier
// frame.
inline std::vector<Detection> two_stage_detect(const ProbMatrix& m,
                                               const TwoStageParams& params) {
  params.validate();
  const int frames = m.frames();
  std::vector<double> pooled(frames, 0.0);
  std::vector<TokenId> argmax(frames, 1);
  for (int t = 0; t < frames; ++t) {
    for (TokenId c = 1; c < m.tokens(); ++c) {
      if (m(t, c) > pooled[t]) {
        pooled[t] = m(t, c);
        argmax[t] = c;
      }
    }
  }

  std::vector<int> order(frames);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return pooled[a] > pooled[b]; });

  const double rate = m.sample_rate_hz();
  const int radius = static_cast<int>(std::ceil(params.min_distance_s * rate));
  std::vector<bool> suppressed(frames, false);
  std::vector<Detection> out;
  for (int f : order) {
    if (!(pooled[f] > params.threshold)) break;
    if (suppressed[f]) continue;
    out.push_back({argmax[f], f, f / rate});
    const int lo = std::max(0, f - radius);
    const int hi = std::min(frames - 1, f + radius);
    for (int g = lo; g <= hi; ++g) {
      if (std::abs(g - f) / rate < params.min_distance_s) suppressed[g] = true;
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Detection& a, const Detection& b) { return a.frame < b.frame; });
  return out;
}

struct ThresholdParams {
  double t1 = 25.0;   // arming threshold, deg/s (> 0)
  double t2 = -25.0;  // firing threshold, deg/s (< 0)
  double t3 = 2.0;    // minimum seconds between arming and firing
  double t4 = 2.0;    // lockout seconds after a detection

  void validate() const {
    if (!(t1 > 0.0) || !(t2 < 0.0) || !(t3 >= 0.0) || !(t4 >= 0.0)) {
      throw Error(Errc::kParameter,
                  "threshold params need t1 > 0, t2 < 0, t3 >= 0, t4 >= 0");
    }
  }
};

// Angular-velocity threshold detector on the wrist roll signal.
// idle --(v > t1)--> armed --(>= t3 s elapsed, v < t2)--> detection, then the
// signal is ignored for t4 s before returning to idle. All detections carry
// class 1.
inline std::vector<Detection> threshold_detect(std::span<const double> roll_dps,
                                               double sample_rate_hz,
                                               const ThresholdParams& params) {
  params.validate();
  if (!(sample_rate_hz > 0.0)) {
    throw Error(Errc::kParameter, "sample rate must be positive");
  }
  if (roll_dps.empty()) throw Error(Errc::kDomain, "roll series is empty");

  enum class State { kIdle, kArmed, kLockout } state = State::kIdle;
  int armed_at = 0, fired_at = 0;
  std::vector<Detection> out;
  for (int f = 0; f < static_cast<int>(roll_dps.size()); ++f) {
    const double v = roll_dps[f];
    if (state == State::kLockout) {
      if ((f - fired_at) / sample_rate_hz < params.t4) continue;
      state = State::kIdle;
    }
    if (state == State::kIdle) {
      if (v > params.t1) {
        state = State::kArmed;
        armed_at = f;
      }
    } else if (state == State::kArmed) {
      if ((f - armed_at) / sample_rate_hz >= params.t3 && v < params.t2) {
        out.push_back({1, f, f / sample_rate_hz});
        fired_at = f;
        state = State::kLockout;
      }
    }
  }
  return out;
}

// Exhaustive search over user grids for the threshold detector. score maps a
// detection list to a value to maximise (e.g. F1 against ground truth).
// Returns the best parameters; the first grid point wins ties.
template <typename Score>
ThresholdParams grid_search_threshold(std::span<const double> roll_dps,
                                      double sample_rate_hz,
                                      std::span<const double> t1_grid,
                                      std::span<const double> t2_grid,
                                      std::span<const double> t3_grid,
                                      std::span<const double> t4_grid,
                                      Score&& score) {
  ThresholdParams best{};
  double best_score = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (double t1 : t1_grid)
    for (double t2 : t2_grid)
      for (double t3 : t3_grid)
        for (double t4 : t4_grid) {
          const ThresholdParams p{t1, t2, t3, t4};
          const double s = score(threshold_detect(roll_dps, sample_rate_hz, p));
          if (!any || s > best_score) {
            best = p;
            best_score = s;
            any = true;
          }
        }
  if (!any) throw Error(Errc::kParameter, "empty parameter grid");
  return best;
}

}  // namespace ctcevent

#endif  // CTCEVENT_BASELINES_HPP_
