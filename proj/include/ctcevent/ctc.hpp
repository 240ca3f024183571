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

// CTC sequence probability and loss.
//
// Two independent routes to p(Y|X):
//   * enumeration of every length-T alignment (small-T oracle), and
//   * the forward recursion over the blank-augmented label
//     [blank, y1, blank, y2, ..., yU, blank].
// The enumeration routes also provide the most probable single alignment of
// a label, which the extended beam search must reproduce.

#ifndef CTCEVENT_CTC_HPP_
#define CTCEVENT_CTC_HPP_

#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include "ctcevent/core.hpp"
#include "ctcevent/logmath.hpp"

namespace ctcevent {

struct AlignmentSet {
  LabelSequence label;
  int length = 0;
  std::vector<Alignment> members;  // lexicographic order
};

struct ScoredAlignment {
  Alignment alignment;
  LogProb log_prob = kLogZero;

  double prob() const { return to_prob(log_prob); }
};

namespace oracle {

inline constexpr int kMaxFrames = 16;
inline constexpr std::uint64_t kMaxAlignments = std::uint64_t{1} << 24;

inline void check_scale(int frames, const Alphabet& alphabet) {
  if (frames < 1) throw Error(Errc::kParameter, "frame count must be >= 1");
  bool ok = frames <= kMaxFrames;
  std::uint64_t count = 1;
  for (int t = 0; ok && t < frames; ++t) {
    count *= static_cast<std::uint64_t>(alphabet.size());
    ok = count <= kMaxAlignments;
  }
  if (!ok) {
    throw Error(Errc::kOracleTooLarge,
                "brute-force oracle limited to T <= 16 and |alphabet|^T <= "
                "2^24 (T=" +
                    std::to_string(frames) +
                    ", |alphabet|=" + std::to_string(alphabet.size()) + ")");
  }
}

// Calls fn(alignment) for every alignment of length frames, in lexicographic
// order. Odometer over the alphabet.
template <typename Fn>
void for_each_alignment(int frames, const Alphabet& alphabet, Fn&& fn) {
  check_scale(frames, alphabet);
  Alignment a(frames, 0);
  while (true) {
    fn(static_cast<const Alignment&>(a));
    int pos = frames - 1;
    while (pos >= 0 && a[pos] == alphabet.size() - 1) a[pos--] = 0;
    if (pos < 0) break;
    ++a[pos];
  }
}

// Sum of per-frame log-probabilities, accumulated in frame order.
inline LogProb path_log_prob(const ProbMatrix& m,
                             std::span<const TokenId> alignment) {
  LogProb lp = kLogOne;
  for (std::size_t t = 0; t < alignment.size(); ++t) {
    lp += m.log(static_cast<int>(t), alignment[t]);
  }
  return lp;
}

}  // namespace oracle

inline AlignmentSet enumerate_alignments(const LabelSequence& label, int frames,
                                         const Alphabet& alphabet) {
  check_label(label, alphabet);
  AlignmentSet set{label, frames, {}};
  oracle::for_each_alignment(frames, alphabet, [&](const Alignment& a) {
    if (collapse(a, alphabet) == label) set.members.push_back(a);
  });
  return set;
}

inline LogProb log_prob_brute_force(const ProbMatrix& m,
                                    const LabelSequence& label,
                                    const Alphabet& alphabet) {
  check_matrix(m, alphabet);
  const AlignmentSet set = enumerate_alignments(label, m.frames(), alphabet);
  LogProb total = kLogZero;
  for (const auto& a : set.members) {
    total = log_add(total, oracle::path_log_prob(m, a));
  }
  return total;
}

inline double prob_brute_force(const ProbMatrix& m, const LabelSequence& label,
                               const Alphabet& alphabet) {
  return to_prob(log_prob_brute_force(m, label, alphabet));
}

// p(Y|X) for every label reachable at length T, by one pass over all
// alignments. Labels with zero mass are still present.
inline std::map<LabelSequence, LogProb> label_distribution_brute_force(
    const ProbMatrix& m, const Alphabet& alphabet) {
  check_matrix(m, alphabet);
  std::map<LabelSequence, LogProb> dist;
  oracle::for_each_alignment(m.frames(), alphabet, [&](const Alignment& a) {
    auto [it, inserted] = dist.try_emplace(collapse(a, alphabet), kLogZero);
    it->second = log_add(it->second, oracle::path_log_prob(m, a));
  });
  return dist;
}

// Argmax over the alignments of label; ties go to the lexicographically
// smallest token sequence.
inline ScoredAlignment best_alignment_brute_force(const ProbMatrix& m,
                                                  const LabelSequence& label,
                                                  const Alphabet& alphabet) {
  check_matrix(m, alphabet);
  const AlignmentSet set = enumerate_alignments(label, m.frames(), alphabet);
  if (set.members.empty()) {
    throw Error(Errc::kNoAlignment,
                "no alignment of length " + std::to_string(m.frames()) +
                    " collapses to the label");
  }
  ScoredAlignment best;
  bool first = true;
  for (const auto& a : set.members) {
    const LogProb lp = oracle::path_log_prob(m, a);
    if (first || lp > best.log_prob) {
      best = {a, lp};
      first = false;
    }
  }
  return best;
}

// best_alignment_brute_force for every reachable label in one enumeration.
inline std::map<LabelSequence, ScoredAlignment> best_alignments_brute_force(
    const ProbMatrix& m, const Alphabet& alphabet) {
  check_matrix(m, alphabet);
  std::map<LabelSequence, ScoredAlignment> best;
  oracle::for_each_alignment(m.frames(), alphabet, [&](const Alignment& a) {
    const LogProb lp = oracle::path_log_prob(m, a);
    auto [it, inserted] = best.try_emplace(collapse(a, alphabet), ScoredAlignment{a, lp});
    if (!inserted && lp > it->second.log_prob) it->second = {a, lp};
  });
  return best;
}

// Forward pass over the blank-augmented label. Returns kLogZero when no
// alignment of length T exists.
inline LogProb log_prob_forward(const ProbMatrix& m, const LabelSequence& label,
                                const Alphabet& alphabet) {
  check_matrix(m, alphabet);
  check_label(label, alphabet);
  const int frames = m.frames();
  if (min_alignment_length(label) > frames) return kLogZero;

  const int states = 2 * static_cast<int>(label.size()) + 1;
  auto token_at = [&](int s) { return s % 2 == 0 ? kBlank : label[s / 2]; };

  std::vector<LogProb> alpha(states, kLogZero), next(states, kLogZero);
  alpha[0] = m.log(0, kBlank);
  if (states > 1) alpha[1] = m.log(0, label[0]);

  for (int t = 1; t < frames; ++t) {
    for (int s = 0; s < states; ++s) {
      LogProb acc = alpha[s];
      if (s >= 1) acc = log_add(acc, alpha[s - 1]);
      // Skip the intermediate blank only between distinct labels.
      if (s >= 2 && s % 2 == 1 && token_at(s) != token_at(s - 2)) {
        acc = log_add(acc, alpha[s - 2]);
      }
      next[s] = acc == kLogZero ? kLogZero : acc + m.log(t, token_at(s));
    }
    std::swap(alpha, next);
  }
  if (states == 1) return alpha[0];
  return log_add(alpha[states - 1], alpha[states - 2]);
}

inline double prob_forward(const ProbMatrix& m, const LabelSequence& label,
                           const Alphabet& alphabet) {
  return to_prob(log_prob_forward(m, label, alphabet));
}

// Negative log-likelihood; +infinity for an impossible label.
inline double ctc_loss(const ProbMatrix& m, const LabelSequence& label,
                       const Alphabet& alphabet) {
  const LogProb lp = log_prob_forward(m, label, alphabet);
  if (lp == kLogZero) return std::numeric_limits<double>::infinity();
  return lp >= 0.0 ? 0.0 : -lp;
}

}  // namespace ctcevent

#endif  // CTCEVENT_CTC_HPP_
