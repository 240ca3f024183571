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

// Sliding-window decoding of long recordings. Each window is decoded on its
// own, the per-window top alignments are merged by frame-wise majority vote,
// and the voted stream is turned into one detection per non-blank run.

#ifndef CTCEVENT_WINDOWING_HPP_
#define CTCEVENT_WINDOWING_HPP_

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "ctcevent/core.hpp"
#include "ctcevent/decode.hpp"

namespace ctcevent {

struct Detection {
  TokenId class_id = 1;
  int frame = 0;
  double time_s = 0.0;

  friend bool operator==(const Detection&, const Detection&) = default;
};

struct WindowSpec {
  int window_frames = 1;
  int stride_frames = 1;
  double sample_rate_hz = 1.0;

  // Stride defaults to half the window.
  static WindowSpec from_seconds(double window_s, double sample_rate_hz,
                                 double stride_s = 0.0) {
    if (!(sample_rate_hz > 0.0)) {
      throw Error(Errc::kParameter, "sample rate must be positive");
    }
    WindowSpec spec;
    spec.sample_rate_hz = sample_rate_hz;
    spec.window_frames = static_cast<int>(std::lround(window_s * sample_rate_hz));
    spec.stride_frames =
        stride_s > 0.0 ? static_cast<int>(std::lround(stride_s * sample_rate_hz))
                       : spec.window_frames / 2;
    if (spec.stride_frames < 1) spec.stride_frames = 1;
    spec.validate();
    return spec;
  }

  void validate() const {
    if (window_frames < 1 || stride_frames < 1 ||
        stride_frames > window_frames) {
      throw Error(Errc::kParameter,
                  "window spec needs 1 <= stride <= window, got window=" +
                      std::to_string(window_frames) +
                      " stride=" + std::to_string(stride_frames));
    }
    if (!(sample_rate_hz > 0.0)) {
      throw Error(Errc::kParameter, "sample rate must be positive");
    }
  }
};

struct Window {
  int start = 0;
  ProbMatrix probs;
};

// Window start frames. Starts step by the stride; a last window is anchored
// to the final frame when the stride does not land there. Recordings shorter
// than the window yield a single window over everything.
inline std::vector<int> window_starts(int frames, const WindowSpec& spec) {
  spec.validate();
  if (frames < 1) throw Error(Errc::kParameter, "recording has no frames");
  if (frames <= spec.window_frames) return {0};
  std::vector<int> starts;
  int s = 0;
  for (; s + spec.window_frames <= frames; s += spec.stride_frames) {
    starts.push_back(s);
  }
  if (starts.back() + spec.window_frames < frames) {
    starts.push_back(frames - spec.window_frames);
  }
  return starts;
}

inline std::vector<Window> slide_windows(const ProbMatrix& m,
                                         const WindowSpec& spec) {
  std::vector<Window> out;
  const int len = std::min(m.frames(), spec.window_frames);
  for (int start : window_starts(m.frames(), spec)) {
    out.push_back({start, m.slice(start, len)});
  }
  return out;
}

struct WindowAlignment {
  int start = 0;
  Alignment tokens;
};

// Frame-wise vote over overlapping window alignments. A unique plurality
// wins; any tie resolves to blank.
inline Alignment majority_vote(const std::vector<WindowAlignment>& windows,
                               int frames, const Alphabet& alphabet) {
  std::vector<std::vector<int>> votes(frames,
                                      std::vector<int>(alphabet.size(), 0));
  for (const auto& w : windows) {
    for (std::size_t i = 0; i < w.tokens.size(); ++i) {
      const int f = w.start + static_cast<int>(i);
      if (f < 0 || f >= frames) {
        throw Error(Errc::kCoverage, "window alignment exceeds the recording");
      }
      alphabet.check(w.tokens[i]);
      ++votes[f][w.tokens[i]];
    }
  }
  Alignment out(frames, kBlank);
  for (int f = 0; f < frames; ++f) {
    int best = -1, best_count = 0;
    bool tied = false;
    for (TokenId c = 0; c < alphabet.size(); ++c) {
      const int n = votes[f][c];
      if (n > best_count) {
        best = c;
        best_count = n;
        tied = false;
      } else if (n == best_count && n > 0) {
        tied = true;
      }
    }
    if (best_count == 0) {
      throw Error(Errc::kCoverage,
                  "frame " + std::to_string(f) + " is not covered by a window");
    }
    out[f] = tied ? kBlank : best;
  }
  return out;
}

// One detection per maximal non-blank run, stamped at the run's lower median
// frame.
inline std::vector<Detection> eventize(std::span<const TokenId> tokens,
                                       double sample_rate_hz) {
  std::vector<Detection> out;
  const int n = static_cast<int>(tokens.size());
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && tokens[j] == tokens[i]) ++j;
    if (tokens[i] != kBlank) {
      const int frame = i + (j - i - 1) / 2;
      out.push_back({tokens[i], frame, frame / sample_rate_hz});
    }
    i = j;
  }
  return out;
}

// slide -> decode each window (top hypothesis alignment) -> vote -> eventize.
inline std::vector<Detection> detect_pipeline(const ProbMatrix& m,
                                              const WindowSpec& spec,
                                              const Alphabet& alphabet,
                                              DecodeMethod method,
                                              int beam_width) {
  if (method == DecodeMethod::kBeam) {
    throw Error(Errc::kParameter,
                "detection needs an alignment; use greedy or extended-beam");
  }
  check_matrix(m, alphabet);
  std::vector<WindowAlignment> aligned;
  for (auto& w : slide_windows(m, spec)) {
    DecodeResult r = decode(w.probs, alphabet, method, beam_width);
    aligned.push_back({w.start, std::move(r.hypotheses.front().alignment)});
  }
  const Alignment voted = majority_vote(aligned, m.frames(), alphabet);
  return eventize(voted, spec.sample_rate_hz);
}

}  // namespace ctcevent

#endif  // CTCEVENT_WINDOWING_HPP_
