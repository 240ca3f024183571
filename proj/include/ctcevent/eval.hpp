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

// Event-level matching of sparse detections against labelled intervals.
//
//   TP   first same-class detection inside a ground-truth event
//   FP1  further same-class detections inside that event
//   FP2  detections outside every event
//   FP3  detections inside an event of another class (counted for the
//        detection's class; the event stays open for a later TP)
//   FN   events that never received a TP

#ifndef CTCEVENT_EVAL_HPP_
#define CTCEVENT_EVAL_HPP_

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ctcevent/core.hpp"
#include "ctcevent/windowing.hpp"

namespace ctcevent {

struct GroundTruthEvent {
  TokenId class_id = 1;
  int start_frame = 0;
  int end_frame = 0;  // inclusive

  bool contains(int frame) const {
    return frame >= start_frame && frame <= end_frame;
  }
};

struct ClassCounts {
  int tp = 0, fp1 = 0, fp2 = 0, fp3 = 0, fn = 0;

  int false_positives() const { return fp1 + fp2 + fp3; }

  ClassCounts& operator+=(const ClassCounts& o) {
    tp += o.tp;
    fp1 += o.fp1;
    fp2 += o.fp2;
    fp3 += o.fp3;
    fn += o.fn;
    return *this;
  }
  friend bool operator==(const ClassCounts&, const ClassCounts&) = default;
};

// Per-class counts. Counts from several recordings merge by addition.
struct EvalCounts {
  std::map<TokenId, ClassCounts> per_class;

  ClassCounts& operator[](TokenId c) { return per_class[c]; }
  ClassCounts at(TokenId c) const {
    auto it = per_class.find(c);
    return it == per_class.end() ? ClassCounts{} : it->second;
  }

  EvalCounts& operator+=(const EvalCounts& o) {
    for (const auto& [c, n] : o.per_class) per_class[c] += n;
    return *this;
  }
  friend bool operator==(const EvalCounts&, const EvalCounts&) = default;
};

struct PRF {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

inline void validate_ground_truth(const std::vector<GroundTruthEvent>& gt) {
  for (std::size_t i = 0; i < gt.size(); ++i) {
    if (gt[i].class_id == kBlank) {
      throw Error(Errc::kDomain, "ground-truth event with blank class");
    }
    if (gt[i].start_frame > gt[i].end_frame) {
      throw Error(Errc::kDomain,
                  "ground-truth event " + std::to_string(i) + " ends before it starts");
    }
    if (i > 0 && gt[i].start_frame <= gt[i - 1].end_frame) {
      throw Error(Errc::kOrdering, "ground-truth events overlap or are unsorted at " +
                                       std::to_string(i));
    }
  }
}

inline EvalCounts evaluate(const std::vector<Detection>& detections,
                           const std::vector<GroundTruthEvent>& ground_truth) {
  validate_ground_truth(ground_truth);
  for (std::size_t i = 1; i < detections.size(); ++i) {
    if (detections[i].frame < detections[i - 1].frame) {
      throw Error(Errc::kOrdering, "detections are not sorted by frame");
    }
  }

  EvalCounts counts;
  for (const auto& e : ground_truth) counts[e.class_id];
  std::vector<bool> hit(ground_truth.size(), false);

  for (const auto& d : detections) {
    ClassCounts& c = counts[d.class_id];
    // First event whose end is at or after the detection.
    auto it = std::lower_bound(
        ground_truth.begin(), ground_truth.end(), d.frame,
        [](const GroundTruthEvent& e, int f) { return e.end_frame < f; });
    if (it == ground_truth.end() || !it->contains(d.frame)) {
      ++c.fp2;
      continue;
    }
    if (it->class_id != d.class_id) {
      ++c.fp3;
      continue;
    }
    auto idx = static_cast<std::size_t>(it - ground_truth.begin());
    if (hit[idx]) {
      ++c.fp1;
    } else {
      hit[idx] = true;
      ++c.tp;
    }
  }
  for (std::size_t i = 0; i < ground_truth.size(); ++i) {
    if (!hit[i]) ++counts[ground_truth[i].class_id].fn;
  }
  return counts;
}

inline PRF prf1(const ClassCounts& n) {
  PRF r;
  const int detected = n.tp + n.false_positives();
  const int actual = n.tp + n.fn;
  r.precision = detected > 0 ? static_cast<double>(n.tp) / detected : 0.0;
  r.recall = actual > 0 ? static_cast<double>(n.tp) / actual : 0.0;
  const double denom = r.precision + r.recall;
  r.f1 = denom > 0.0 ? 2.0 * r.precision * r.recall / denom : 0.0;
  return r;
}

// PRF over summed counts of the selected classes (all classes when empty).
inline PRF prf1(const EvalCounts& counts, const std::set<TokenId>& classes = {}) {
  ClassCounts sum;
  for (const auto& [c, n] : counts.per_class) {
    if (classes.empty() || classes.contains(c)) sum += n;
  }
  return prf1(sum);
}

// Unweighted mean of per-class F1.
inline double macro_f1(const EvalCounts& counts) {
  if (counts.per_class.empty()) return 0.0;
  double total = 0.0;
  for (const auto& [c, n] : counts.per_class) total += prf1(n).f1;
  return total / static_cast<double>(counts.per_class.size());
}

}  // namespace ctcevent

#endif  // CTCEVENT_EVAL_HPP_
