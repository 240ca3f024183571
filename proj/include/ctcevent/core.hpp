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

#ifndef CTCEVENT_CORE_HPP_
#define CTCEVENT_CORE_HPP_

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ctcevent {

// Error categories. The CLI maps each to a distinct exit code.
enum class Errc {
  kInvalidToken,
  kNormalization,
  kDomain,
  kOracleTooLarge,
  kNoAlignment,
  kParameter,
  kCoverage,
  kOrdering,
  kScript,
  kFormat,
  kIo,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

using TokenId = int;

// Token index reserved for the blank symbol.
inline constexpr TokenId kBlank = 0;

// Blank-free sequence of event tokens. Adjacent equal tokens are distinct
// events.
using LabelSequence = std::vector<TokenId>;

// One token per frame, blanks included.
using Alignment = std::vector<TokenId>;

class Alphabet {
 public:
  explicit Alphabet(int size) : size_(size) {
    if (size < 2) {
      throw Error(Errc::kParameter,
                  "alphabet needs blank plus at least one class, got size " +
                      std::to_string(size));
    }
  }

  // class_names excludes the blank.
  explicit Alphabet(std::vector<std::string> class_names)
      : Alphabet(static_cast<int>(class_names.size()) + 1) {
    class_names_ = std::move(class_names);
  }

  int size() const noexcept { return size_; }
  TokenId blank_id() const noexcept { return kBlank; }
  int num_classes() const noexcept { return size_ - 1; }
  bool contains(TokenId t) const noexcept { return t >= 0 && t < size_; }
  bool has_names() const noexcept { return !class_names_.empty(); }

  // "blank" for the blank token, the class name when known, else "c<id>".
  std::string name(TokenId t) const {
    if (t == kBlank) return "blank";
    if (has_names() && contains(t)) return class_names_[t - 1];
    return "c" + std::to_string(t);
  }

  std::optional<TokenId> find(const std::string& name) const {
    for (TokenId t = 1; t < size_; ++t) {
      if (this->name(t) == name) return t;
    }
    return std::nullopt;
  }

  const std::vector<std::string>& class_names() const noexcept {
    return class_names_;
  }

  void check(TokenId t) const {
    if (!contains(t)) {
      throw Error(Errc::kInvalidToken,
                  "token " + std::to_string(t) + " outside alphabet of size " +
                      std::to_string(size_));
    }
  }

 private:
  int size_;
  std::vector<std::string> class_names_;
};

// Row-stochastic T x |alphabet| matrix of per-frame token probabilities.
// Log-probabilities are cached alongside since every decoder works in log
// space.
class ProbMatrix {
 public:
  static constexpr double kRowSumTolerance = 1e-6;
  static constexpr double kRenormalizeTolerance = 1e-3;

  ProbMatrix() = default;

  int frames() const noexcept { return frames_; }
  int tokens() const noexcept { return tokens_; }
  double sample_rate_hz() const noexcept { return sample_rate_hz_; }

  double operator()(int t, TokenId c) const {
    return probs_[static_cast<std::size_t>(t) * tokens_ + c];
  }
  double log(int t, TokenId c) const {
    return logs_[static_cast<std::size_t>(t) * tokens_ + c];
  }
  std::span<const double> row(int t) const {
    return {probs_.data() + static_cast<std::size_t>(t) * tokens_,
            static_cast<std::size_t>(tokens_)};
  }

  // Rows [start, start + count) as a standalone matrix.
  ProbMatrix slice(int start, int count) const {
    if (start < 0 || count < 1 || start + count > frames_) {
      throw Error(Errc::kParameter, "slice [" + std::to_string(start) + ", " +
                                        std::to_string(start + count) +
                                        ") out of range");
    }
    ProbMatrix out;
    out.frames_ = count;
    out.tokens_ = tokens_;
    out.sample_rate_hz_ = sample_rate_hz_;
    auto first = static_cast<std::size_t>(start) * tokens_;
    auto last = first + static_cast<std::size_t>(count) * tokens_;
    out.probs_.assign(probs_.begin() + first, probs_.begin() + last);
    out.logs_.assign(logs_.begin() + first, logs_.begin() + last);
    return out;
  }

  std::vector<std::vector<double>> to_rows() const {
    std::vector<std::vector<double>> rows;
    rows.reserve(frames_);
    for (int t = 0; t < frames_; ++t) {
      auto r = row(t);
      rows.emplace_back(r.begin(), r.end());
    }
    return rows;
  }

  friend ProbMatrix validate_prob_matrix(
      const std::vector<std::vector<double>>& rows, double sample_rate_hz,
      bool renormalize);

 private:
  int frames_ = 0;
  int tokens_ = 0;
  double sample_rate_hz_ = 1.0;
  std::vector<double> probs_;
  std::vector<double> logs_;
};

// Checks and packs raw rows. With renormalize, rows within
// kRenormalizeTolerance of unit sum are rescaled to sum exactly 1.
inline ProbMatrix validate_prob_matrix(
    const std::vector<std::vector<double>>& rows, double sample_rate_hz,
    bool renormalize = false) {
  if (!(sample_rate_hz > 0.0) || !std::isfinite(sample_rate_hz)) {
    throw Error(Errc::kParameter, "sample rate must be positive");
  }
  if (rows.empty()) {
    throw Error(Errc::kDomain, "probability matrix has no frames");
  }
  const std::size_t width = rows.front().size();
  if (width < 2) {
    throw Error(Errc::kDomain,
                "probability rows need blank plus at least one class");
  }

  ProbMatrix m;
  m.frames_ = static_cast<int>(rows.size());
  m.tokens_ = static_cast<int>(width);
  m.sample_rate_hz_ = sample_rate_hz;
  m.probs_.reserve(rows.size() * width);
  m.logs_.reserve(rows.size() * width);

  for (std::size_t t = 0; t < rows.size(); ++t) {
    const auto& r = rows[t];
    if (r.size() != width) {
      throw Error(Errc::kFormat, "row " + std::to_string(t) + " has " +
                                     std::to_string(r.size()) +
                                     " entries, expected " +
                                     std::to_string(width));
    }
    double sum = 0.0;
    for (double p : r) {
      if (!(p >= 0.0) || !(p <= 1.0)) {
        throw Error(Errc::kDomain, "row " + std::to_string(t) +
                                       " has entry outside [0, 1]: " +
                                       std::to_string(p));
      }
      sum += p;
    }
    double scale = 1.0;
    const double dev = std::abs(sum - 1.0);
    if (dev > ProbMatrix::kRowSumTolerance) {
      if (!renormalize || dev > ProbMatrix::kRenormalizeTolerance) {
        throw Error(Errc::kNormalization,
                    "row " + std::to_string(t) + " sums to " +
                        std::to_string(sum));
      }
      scale = 1.0 / sum;
    }
    for (double p : r) {
      const double v = p * scale;
      m.probs_.push_back(v);
      m.logs_.push_back(v > 0.0 ? std::log(v)
                                : -std::numeric_limits<double>::infinity());
    }
  }
  return m;
}

// Merges runs of equal tokens, then drops blanks.
inline LabelSequence collapse(std::span<const TokenId> alignment,
                              const Alphabet& alphabet) {
  LabelSequence out;
  TokenId prev = -1;
  for (TokenId t : alignment) {
    alphabet.check(t);
    if (t != prev && t != kBlank) out.push_back(t);
    prev = t;
  }
  return out;
}

// Shortest alignment length that can collapse to label: one frame per token
// plus a separating blank between equal neighbours.
inline int min_alignment_length(std::span<const TokenId> label) {
  int n = static_cast<int>(label.size());
  for (std::size_t i = 1; i < label.size(); ++i) {
    if (label[i] == label[i - 1]) ++n;
  }
  return n;
}

inline void check_label(std::span<const TokenId> label,
                        const Alphabet& alphabet) {
  for (TokenId t : label) {
    alphabet.check(t);
    if (t == kBlank) {
      throw Error(Errc::kInvalidToken, "label sequence contains blank");
    }
  }
}

inline void check_matrix(const ProbMatrix& m, const Alphabet& alphabet) {
  if (m.tokens() != alphabet.size()) {
    throw Error(Errc::kParameter,
                "matrix has " + std::to_string(m.tokens()) +
                    " token columns, alphabet has " +
                    std::to_string(alphabet.size()));
  }
}

}  // namespace ctcevent

#endif  // CTCEVENT_CORE_HPP_
