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

// Line-oriented CSV formats for frame streams and events, and the JSON
// sidecar carrying the sample rate.
//
//   probabilities   t,p_blank,p_<class1>[,p_<class2>...]
//   detections      frame,time_s,class
//   ground truth    start_frame,end_frame,class
//   gyro            t,roll_dps
//   sidecar         {"sample_rate_hz": <real>}

#ifndef CTCEVENT_IO_HPP_
#define CTCEVENT_IO_HPP_

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "ctcevent/core.hpp"
#include "ctcevent/eval.hpp"
#include "ctcevent/windowing.hpp"

namespace ctcevent::io {

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

inline std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    out.emplace_back(trim(line.substr(pos, comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

inline double parse_double(std::string_view s, int line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw Error(Errc::kFormat, "line " + std::to_string(line) +
                                   ": not a number: '" + std::string(s) + "'");
  }
  return v;
}

inline int parse_int(std::string_view s, int line) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw Error(Errc::kFormat, "line " + std::to_string(line) +
                                   ": not an integer: '" + std::string(s) + "'");
  }
  return v;
}

// Yields (line number, fields) for every non-empty line after the header.
template <typename Fn>
void for_each_row(std::istream& in, const std::vector<std::string>& header,
                  Fn&& fn) {
  std::string line;
  int n = 0;
  bool seen_header = false;
  while (std::getline(in, line)) {
    ++n;
    if (trim(line).empty()) continue;
    auto fields = split(line);
    if (!seen_header) {
      seen_header = true;
      if (!header.empty() && fields != header) {
        throw Error(Errc::kFormat, "unexpected header '" + line + "'");
      }
      if (header.empty()) fn(n, fields, true);
      continue;
    }
    fn(n, fields, false);
  }
  if (!seen_header) throw Error(Errc::kFormat, "missing CSV header");
}

inline void expect_fields(const std::vector<std::string>& f, std::size_t n,
                          int line) {
  if (f.size() != n) {
    throw Error(Errc::kFormat, "line " + std::to_string(line) + ": expected " +
                                   std::to_string(n) + " fields, got " +
                                   std::to_string(f.size()));
  }
}

inline std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace detail

inline std::ifstream open_in(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw Error(Errc::kIo, "cannot open '" + p.string() + "' for reading");
  return in;
}

inline std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p);
  if (!out) throw Error(Errc::kIo, "cannot open '" + p.string() + "' for writing");
  return out;
}

// Raw contents of a probability CSV, before validation.
struct ProbTable {
  std::vector<std::string> class_names;
  std::vector<std::vector<double>> rows;

  Alphabet alphabet() const { return Alphabet(class_names); }
};

inline ProbTable read_prob_table(std::istream& in) {
  ProbTable table;
  double prev_t = 0.0;
  detail::for_each_row(in, {}, [&](int line, const auto& f, bool header) {
    if (header) {
      if (f.size() < 3 || f[0] != "t" || f[1] != "p_blank") {
        throw Error(Errc::kFormat,
                    "probability header must start with 't,p_blank,p_<class>'");
      }
      for (std::size_t i = 2; i < f.size(); ++i) {
        if (f[i].size() < 3 || f[i].rfind("p_", 0) != 0) {
          throw Error(Errc::kFormat, "bad class column '" + f[i] + "'");
        }
        table.class_names.push_back(f[i].substr(2));
      }
      return;
    }
    detail::expect_fields(f, table.class_names.size() + 2, line);
    const double t = detail::parse_double(f[0], line);
    if (!table.rows.empty() && !(t > prev_t)) {
      throw Error(Errc::kFormat, "line " + std::to_string(line) +
                                     ": t must increase strictly");
    }
    prev_t = t;
    std::vector<double> row;
    for (std::size_t i = 1; i < f.size(); ++i) {
      row.push_back(detail::parse_double(f[i], line));
    }
    table.rows.push_back(std::move(row));
  });
  return table;
}

inline void write_prob_csv(std::ostream& out, const ProbMatrix& m,
                           const Alphabet& alphabet) {
  out << "t,p_blank";
  for (TokenId c = 1; c < alphabet.size(); ++c) out << ",p_" << alphabet.name(c);
  out << '\n';
  for (int t = 0; t < m.frames(); ++t) {
    out << t;
    for (double p : m.row(t)) out << ',' << detail::format_double(p);
    out << '\n';
  }
}

inline std::optional<double> read_sidecar_sample_rate(
    const std::filesystem::path& p) {
  if (!std::filesystem::exists(p)) return std::nullopt;
  auto in = open_in(p);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kFormat, "sidecar '" + p.string() + "': " + e.what());
  }
  if (!j.is_object() || !j.contains("sample_rate_hz") ||
      !j["sample_rate_hz"].is_number()) {
    throw Error(Errc::kFormat,
                "sidecar '" + p.string() + "' lacks numeric sample_rate_hz");
  }
  return j["sample_rate_hz"].get<double>();
}

inline void write_sidecar(const std::filesystem::path& p, double sample_rate_hz) {
  auto out = open_out(p);
  out << nlohmann::json{{"sample_rate_hz", sample_rate_hz}}.dump() << '\n';
}

// probs.csv -> probs.json
inline std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
  auto p = csv;
  p.replace_extension(".json");
  return p;
}

inline TokenId class_by_name(const Alphabet& alphabet, const std::string& name,
                             int line) {
  if (auto id = alphabet.find(name)) return *id;
  throw Error(Errc::kFormat, "line " + std::to_string(line) +
                                 ": unknown class '" + name + "'");
}

inline std::vector<Detection> read_detections(std::istream& in,
                                              const Alphabet& alphabet) {
  std::vector<Detection> out;
  detail::for_each_row(in, {"frame", "time_s", "class"},
                       [&](int line, const auto& f, bool) {
                         detail::expect_fields(f, 3, line);
                         out.push_back({class_by_name(alphabet, f[2], line),
                                        detail::parse_int(f[0], line),
                                        detail::parse_double(f[1], line)});
                       });
  return out;
}

inline void write_detections(std::ostream& out,
                             const std::vector<Detection>& detections,
                             const Alphabet& alphabet) {
  out << "frame,time_s,class\n";
  for (const auto& d : detections) {
    out << d.frame << ',' << detail::format_double(d.time_s) << ','
        << alphabet.name(d.class_id) << '\n';
  }
}

inline std::vector<GroundTruthEvent> read_ground_truth(std::istream& in,
                                                       const Alphabet& alphabet) {
  std::vector<GroundTruthEvent> out;
  detail::for_each_row(in, {"start_frame", "end_frame", "class"},
                       [&](int line, const auto& f, bool) {
                         detail::expect_fields(f, 3, line);
                         out.push_back({class_by_name(alphabet, f[2], line),
                                        detail::parse_int(f[0], line),
                                        detail::parse_int(f[1], line)});
                       });
  return out;
}

inline void write_ground_truth(std::ostream& out,
                               const std::vector<GroundTruthEvent>& events,
                               const Alphabet& alphabet) {
  out << "start_frame,end_frame,class\n";
  for (const auto& e : events) {
    out << e.start_frame << ',' << e.end_frame << ',' << alphabet.name(e.class_id)
        << '\n';
  }
}

inline std::vector<double> read_gyro(std::istream& in) {
  std::vector<double> roll;
  detail::for_each_row(in, {"t", "roll_dps"}, [&](int line, const auto& f, bool) {
    detail::expect_fields(f, 2, line);
    detail::parse_double(f[0], line);
    roll.push_back(detail::parse_double(f[1], line));
  });
  return roll;
}

// "eat,eat,drink" -> token ids. Empty string is the empty label.
inline LabelSequence parse_label(const std::string& text,
                                 const Alphabet& alphabet) {
  LabelSequence label;
  if (detail::trim(text).empty()) return label;
  for (const auto& name : detail::split(text)) {
    auto id = alphabet.find(name);
    if (!id) throw Error(Errc::kInvalidToken, "unknown class '" + name + "'");
    label.push_back(*id);
  }
  return label;
}

}  // namespace ctcevent::io

#endif  // CTCEVENT_IO_HPP_
