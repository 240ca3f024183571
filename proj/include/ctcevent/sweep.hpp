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

#ifndef CTCEVENT_SWEEP_HPP_
#define CTCEVENT_SWEEP_HPP_

#include <optional>
#include <vector>

#include "ctcevent/decode.hpp"
#include "ctcevent/eval.hpp"
#include "ctcevent/windowing.hpp"

namespace ctcevent {

struct SweepRow {
  int beam_width = 1;
  LabelSequence top_label;
  LogProb top_log_prob = kLogZero;
  std::optional<double> f1;  // only with ground truth
};

// Ground truth plus the windowing used to score the detection pipeline.
struct SweepTruth {
  std::vector<GroundTruthEvent> events;
  WindowSpec windows;
};

// Extended beam search at each width over the whole matrix; with ground
// truth, also the micro F1 of the windowed detection pipeline at that width.
inline std::vector<SweepRow> sweep_beam_width(
    const ProbMatrix& m, const Alphabet& alphabet,
    const std::vector<int>& widths,
    const std::optional<SweepTruth>& truth = std::nullopt) {
  for (int w : widths) {
    if (w < 1) {
      throw Error(Errc::kParameter,
                  "beam width must be >= 1, got " + std::to_string(w));
    }
  }
  std::vector<SweepRow> rows;
  for (int w : widths) {
    const DecodeResult r = extended_prefix_beam_search(m, alphabet, w);
    SweepRow row{w, r.top().label, r.top().total_log_prob, std::nullopt};
    if (truth) {
      const auto dets = detect_pipeline(m, truth->windows, alphabet,
                                        DecodeMethod::kExtendedBeam, w);
      row.f1 = prf1(evaluate(dets, truth->events)).f1;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace ctcevent

#endif  // CTCEVENT_SWEEP_HPP_
