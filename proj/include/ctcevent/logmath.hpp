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

#ifndef CTCEVENT_LOGMATH_HPP_
#define CTCEVENT_LOGMATH_HPP_

#include <algorithm>
#include <cmath>
#include <limits>

namespace ctcevent {

// Natural log of a probability; kLogZero stands for probability 0.
using LogProb = double;

inline constexpr LogProb kLogZero = -std::numeric_limits<double>::infinity();
inline constexpr LogProb kLogOne = 0.0;

inline LogProb log_add(LogProb a, LogProb b) {
  if (a == kLogZero) return b;
  if (b == kLogZero) return a;
  const LogProb hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

inline double to_prob(LogProb lp) { return lp == kLogZero ? 0.0 : std::exp(lp); }

}  // namespace ctcevent

#endif  // CTCEVENT_LOGMATH_HPP_
