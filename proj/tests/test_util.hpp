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

// Shared fixtures and seeded generators for the test binaries.

#ifndef CTCEVENT_TESTS_TEST_UTIL_HPP_
#define CTCEVENT_TESTS_TEST_UTIL_HPP_

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "ctcevent/core.hpp"

namespace ctcevent::testing {

inline constexpr TokenId E = 1;  // eat
inline constexpr TokenId D = 2;  // drink
inline constexpr TokenId B = kBlank;

// Eight frames over {blank, eat, drink}; columns of the worked example.
inline ProbMatrix worked_example() {
  return validate_prob_matrix({{0.3, 0.5, 0.2},
                               {0.25, 0.6, 0.15},
                               {0.6, 0.2, 0.2},
                               {0.4, 0.35, 0.25},
                               {0.5, 0.4, 0.1},
                               {0.3, 0.3, 0.4},
                               {0.1, 0.2, 0.7},
                               {0.2, 0.3, 0.5}},
                              1.0);
}

inline Alphabet eat_drink() { return Alphabet({"eat", "drink"}); }

// Rows drawn uniformly and normalised. With continuous draws per-frame ties
// have probability zero, but rows are re-drawn if one occurs.
inline ProbMatrix random_matrix(std::mt19937_64& rng, int frames, int tokens) {
  std::uniform_real_distribution<double> unit(0.01, 1.0);
  std::vector<std::vector<double>> rows;
  for (int t = 0; t < frames; ++t) {
    std::vector<double> r(tokens);
    bool tie = true;
    while (tie) {
      double sum = 0.0;
      for (double& v : r) sum += (v = unit(rng));
      for (double& v : r) v /= sum;
      tie = false;
      for (int a = 0; a < tokens; ++a)
        for (int b = a + 1; b < tokens; ++b) tie = tie || r[a] == r[b];
    }
    rows.push_back(r);
  }
  return validate_prob_matrix(rows, 1.0);
}

// Rows whose argmax carries at least `floor` of the mass.
inline ProbMatrix peaked_matrix(std::mt19937_64& rng, int frames, int tokens,
                                double floor) {
  std::uniform_real_distribution<double> unit(0.01, 1.0);
  std::uniform_real_distribution<double> peak(floor, 0.999);
  std::uniform_int_distribution<int> pick(0, tokens - 1);
  std::vector<std::vector<double>> rows;
  for (int t = 0; t < frames; ++t) {
    std::vector<double> r(tokens);
    const int top = pick(rng);
    const double p = peak(rng);
    double sum = 0.0;
    for (int c = 0; c < tokens; ++c) {
      if (c != top) sum += (r[c] = unit(rng));
    }
    for (int c = 0; c < tokens; ++c) {
      r[c] = c == top ? p : r[c] / sum * (1.0 - p);
    }
    rows.push_back(r);
  }
  return validate_prob_matrix(rows, 1.0, true);
}

// A label with a valid alignment at the given length, possibly empty.
inline LabelSequence random_feasible_label(std::mt19937_64& rng, int frames,
                                           int tokens) {
  std::uniform_int_distribution<int> len(0, frames);
  std::uniform_int_distribution<int> cls(1, tokens - 1);
  while (true) {
    LabelSequence y(len(rng));
    for (auto& c : y) c = cls(rng);
    if (min_alignment_length(y) <= frames) return y;
  }
}

// Error category thrown by fn, or nullopt if it returns normally.
template <typename Fn>
std::optional<Errc> code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline bool rel_close(double a, double b, double rel) {
  if (a == b) return true;
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace ctcevent::testing

#endif  // CTCEVENT_TESTS_TEST_UTIL_HPP_
