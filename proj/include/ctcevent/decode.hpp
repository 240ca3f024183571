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

// Decoders for per-frame token probabilities: greedy (best path), prefix
// beam search, and the extended prefix beam search that also tracks the most
// probable alignment of every surviving prefix.

#ifndef CTCEVENT_DECODE_HPP_
#define CTCEVENT_DECODE_HPP_

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctcevent/core.hpp"
#include "ctcevent/ctc.hpp"
#include "ctcevent/logmath.hpp"

namespace ctcevent {

struct Hypothesis {
  LabelSequence label;
  LogProb total_log_prob = kLogZero;
  Alignment alignment;
  LogProb alignment_log_prob = kLogZero;

  double total_probability() const { return to_prob(total_log_prob); }
  double alignment_probability() const { return to_prob(alignment_log_prob); }
};

// Hypotheses ranked by total probability, best first.
struct DecodeResult {
  std::vector<Hypothesis> hypotheses;

  const Hypothesis& top() const { return hypotheses.front(); }
};

struct ScoredLabel {
  LabelSequence label;
  LogProb log_prob = kLogZero;

  double probability() const { return to_prob(log_prob); }
};

enum class DecodeMethod { kGreedy, kBeam, kExtendedBeam };

inline DecodeMethod parse_decode_method(const std::string& s) {
  if (s == "greedy") return DecodeMethod::kGreedy;
  if (s == "beam") return DecodeMethod::kBeam;
  if (s == "extended-beam") return DecodeMethod::kExtendedBeam;
  throw Error(Errc::kParameter, "unknown decode method '" + s + "'");
}

inline const char* to_string(DecodeMethod m) {
  switch (m) {
    case DecodeMethod::kGreedy: return "greedy";
    case DecodeMethod::kBeam: return "beam";
    case DecodeMethod::kExtendedBeam: return "extended-beam";
  }
  return "?";
}

// Per-frame argmax; ties go to the lowest token index, so blank wins ties.
inline DecodeResult greedy_decode(const ProbMatrix& m,
                                  const Alphabet& alphabet) {
  check_matrix(m, alphabet);
  Hypothesis h;
  h.alignment.reserve(m.frames());
  h.alignment_log_prob = kLogOne;
  for (int t = 0; t < m.frames(); ++t) {
    TokenId best = 0;
    for (TokenId c = 1; c < alphabet.size(); ++c) {
      if (m(t, c) > m(t, best)) best = c;
    }
    h.alignment.push_back(best);
    h.alignment_log_prob += m.log(t, best);
  }
  h.label = collapse(h.alignment, alphabet);
  h.total_log_prob = h.alignment_log_prob;
  return {{std::move(h)}};
}

namespace detail {

// Best alignment candidate for one (prefix, ends-in-blank?) slot.
struct Candidate {
  Alignment alignment;
  LogProb log_prob = kLogZero;
  bool set = false;

  // Keeps base + token if it is more probable, or equally probable and
  // lexicographically smaller.
  void offer(const Candidate& base, TokenId token, LogProb emit) {
    if (!base.set) return;
    const LogProb lp = base.log_prob + emit;
    if (set) {
      if (lp < log_prob) return;
      if (lp == log_prob && !lex_less(base.alignment, token)) return;
    }
    alignment.reserve(base.alignment.size() + 1);
    alignment.assign(base.alignment.begin(), base.alignment.end());
    alignment.push_back(token);
    log_prob = lp;
    set = true;
  }

 private:
  bool lex_less(const Alignment& base, TokenId token) const {
    const auto n = base.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (base[i] != alignment[i]) return base[i] < alignment[i];
    }
    return token < alignment[n];
  }
};

template <bool kTrackAlignments>
struct BeamState {
  LogProb p_blank = kLogZero;
  LogProb p_non_blank = kLogZero;

  LogProb total() const { return log_add(p_blank, p_non_blank); }
};

template <>
struct BeamState<true> {
  LogProb p_blank = kLogZero;
  LogProb p_non_blank = kLogZero;
  Candidate a_blank;
  Candidate a_non_blank;

  LogProb total() const { return log_add(p_blank, p_non_blank); }
};

template <bool kTrackAlignments>
std::vector<std::pair<LabelSequence, BeamState<kTrackAlignments>>> run_beam(
    const ProbMatrix& m, const Alphabet& alphabet, int beam_width) {
  using State = BeamState<kTrackAlignments>;
  check_matrix(m, alphabet);
  if (beam_width < 1) {
    throw Error(Errc::kParameter,
                "beam width must be >= 1, got " + std::to_string(beam_width));
  }

  std::vector<std::pair<LabelSequence, State>> beams(1);
  beams[0].second.p_blank = kLogOne;
  if constexpr (kTrackAlignments) {
    // The empty prefix has no alignment ending in a non-blank token.
    beams[0].second.a_blank = {{}, kLogOne, true};
  }

  std::map<LabelSequence, State> next;
  for (int t = 0; t < m.frames(); ++t) {
    next.clear();
    const LogProb emit_blank = m.log(t, kBlank);

    for (const auto& [prefix, s] : beams) {
      State& same = next[prefix];
      if (!prefix.empty()) {
        // Repeated last token: stays on the same prefix.
        const TokenId last = prefix.back();
        const LogProb emit = m.log(t, last);
        same.p_non_blank = log_add(same.p_non_blank, s.p_non_blank + emit);
        if constexpr (kTrackAlignments) {
          same.a_non_blank.offer(s.a_non_blank, last, emit);
        }
      }
      same.p_blank = log_add(same.p_blank, s.total() + emit_blank);
      if constexpr (kTrackAlignments) {
        same.a_blank.offer(s.a_blank, kBlank, emit_blank);
        same.a_blank.offer(s.a_non_blank, kBlank, emit_blank);
      }

      for (TokenId c = 1; c < alphabet.size(); ++c) {
        const LogProb emit = m.log(t, c);
        LabelSequence extended = prefix;
        extended.push_back(c);
        State& ext = next[extended];
        if (!prefix.empty() && prefix.back() == c) {
          // A new instance of the last token needs a blank in between.
          ext.p_non_blank = log_add(ext.p_non_blank, s.p_blank + emit);
          if constexpr (kTrackAlignments) {
            ext.a_non_blank.offer(s.a_blank, c, emit);
          }
        } else {
          ext.p_non_blank = log_add(ext.p_non_blank, s.total() + emit);
          if constexpr (kTrackAlignments) {
            ext.a_non_blank.offer(s.a_blank, c, emit);
            ext.a_non_blank.offer(s.a_non_blank, c, emit);
          }
        }
      }
    }

    std::vector<std::pair<const LabelSequence*, LogProb>> ranked;
    ranked.reserve(next.size());
    for (const auto& [prefix, s] : next) {
      const LogProb total = s.total();
      if (total != kLogZero) ranked.emplace_back(&prefix, total);
    }
    const auto keep =
        std::min<std::size_t>(ranked.size(), static_cast<std::size_t>(beam_width));
    // Ties go to the lexicographically smaller prefix.
    std::partial_sort(ranked.begin(), ranked.begin() + keep, ranked.end(),
                      [](const auto& a, const auto& b) {
                        if (a.second != b.second) return a.second > b.second;
                        return *a.first < *b.first;
                      });

    beams.clear();
    for (std::size_t i = 0; i < keep; ++i) {
      auto node = next.extract(*ranked[i].first);
      beams.emplace_back(std::move(node.key()), std::move(node.mapped()));
    }
  }
  return beams;
}

}  // namespace detail

// Standard prefix beam search. Returns at most beam_width labels ranked by
// summed probability.
inline std::vector<ScoredLabel> prefix_beam_search(const ProbMatrix& m,
                                                   const Alphabet& alphabet,
                                                   int beam_width) {
  auto beams = detail::run_beam<false>(m, alphabet, beam_width);
  std::vector<ScoredLabel> out;
  out.reserve(beams.size());
  for (auto& [prefix, s] : beams) out.push_back({std::move(prefix), s.total()});
  return out;
}

// Prefix beam search that also carries, per prefix, the best alignment
// ending in blank and the best ending in a non-blank token. Each returned
// hypothesis holds the more probable of the two.
inline DecodeResult extended_prefix_beam_search(const ProbMatrix& m,
                                                const Alphabet& alphabet,
                                                int beam_width) {
  auto beams = detail::run_beam<true>(m, alphabet, beam_width);
  DecodeResult result;
  result.hypotheses.reserve(beams.size());
  for (auto& [prefix, s] : beams) {
    const detail::Candidate* best = &s.a_blank;
    const detail::Candidate& other = s.a_non_blank;
    if (other.set && (!best->set || other.log_prob > best->log_prob ||
                      (other.log_prob == best->log_prob &&
                       other.alignment < best->alignment))) {
      best = &other;
    }
    Hypothesis h{std::move(prefix), s.total(), best->alignment,
                 best->log_prob};
    if (collapse(h.alignment, alphabet) != h.label) {
      throw std::logic_error("decoded alignment does not collapse to label");
    }
    result.hypotheses.push_back(std::move(h));
  }
  return result;
}

// Dispatch by method. Plain beam search has no alignment, so its hypotheses
// leave alignment empty.
inline DecodeResult decode(const ProbMatrix& m, const Alphabet& alphabet,
                           DecodeMethod method, int beam_width) {
  switch (method) {
    case DecodeMethod::kGreedy:
      return greedy_decode(m, alphabet);
    case DecodeMethod::kExtendedBeam:
      return extended_prefix_beam_search(m, alphabet, beam_width);
    case DecodeMethod::kBeam: {
      DecodeResult r;
      for (auto& s : prefix_beam_search(m, alphabet, beam_width)) {
        r.hypotheses.push_back({std::move(s.label), s.log_prob, {}, kLogZero});
      }
      return r;
    }
  }
  throw Error(Errc::kParameter, "unknown decode method");
}

}  // namespace ctcevent

#endif  // CTCEVENT_DECODE_HPP_
