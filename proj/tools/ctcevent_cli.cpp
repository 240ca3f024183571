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

// ctcevent: decode, detect, score and generate frame-level event streams.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ctcevent/ctcevent.hpp"
#include "ctcevent/io.hpp"

namespace {

using namespace ctcevent;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitParameter = 2;
constexpr int kExitIo = 3;
constexpr int kExitFormat = 4;

constexpr const char* kExitCodeHelp =
    "Exit codes:\n"
    "  0  success\n"
    "  1  internal error\n"
    "  2  parameter error (bad flag, value or label)\n"
    "  3  I/O error (file cannot be opened)\n"
    "  4  format error (malformed CSV/JSON or invalid probabilities)\n";

int exit_code(Errc code) {
  switch (code) {
    case Errc::kIo:
      return kExitIo;
    case Errc::kFormat:
    case Errc::kNormalization:
    case Errc::kDomain:
    case Errc::kOrdering:
      return kExitFormat;
    case Errc::kParameter:
    case Errc::kInvalidToken:
    case Errc::kOracleTooLarge:
    case Errc::kNoAlignment:
    case Errc::kScript:
    case Errc::kCoverage:
      return kExitParameter;
  }
  return kExitInternal;
}

// Writes to the named file, or stdout when empty.
void emit(const std::string& path, const std::function<void(std::ostream&)>& fn) {
  if (path.empty()) {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  auto out = io::open_out(path);
  fn(out);
  if (!out) throw Error(Errc::kIo, "failed writing '" + path + "'");
}

struct Common {
  std::optional<double> sample_rate_hz;
  bool renormalize = false;
  std::string output;
};

void add_common(CLI::App* cmd, Common& c, bool with_output = true) {
  cmd->add_option("--sample-rate-hz", c.sample_rate_hz,
                  "Frame rate; overrides the .json sidecar next to the input")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--renormalize", c.renormalize,
                "Rescale rows within 1e-3 of summing to 1");
  if (with_output) cmd->add_option("-o,--output", c.output, "Output file (default stdout)");
}

double resolve_rate(const std::string& csv, const Common& c, bool required) {
  if (c.sample_rate_hz) return *c.sample_rate_hz;
  if (auto r = io::read_sidecar_sample_rate(io::sidecar_path(csv))) {
    if (!(*r > 0.0)) throw Error(Errc::kFormat, "sidecar sample rate must be positive");
    return *r;
  }
  if (required) {
    throw Error(Errc::kParameter,
                "no sample rate: pass --sample-rate-hz or provide " +
                    io::sidecar_path(csv).string());
  }
  return 1.0;
}

struct Loaded {
  ProbMatrix probs;
  Alphabet alphabet;
};

Loaded load_probs(const std::string& path, const Common& c, bool need_rate) {
  auto in = io::open_in(path);
  const io::ProbTable table = io::read_prob_table(in);
  const double rate = resolve_rate(path, c, need_rate);
  return {validate_prob_matrix(table.rows, rate, c.renormalize), table.alphabet()};
}

json label_json(const LabelSequence& label, const Alphabet& alphabet) {
  json names = json::array();
  for (TokenId t : label) names.push_back(alphabet.name(t));
  return names;
}

std::string alignment_string(const Alignment& a, const Alphabet& alphabet) {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i > 0) s += ' ';
    s += alphabet.name(a[i]);
  }
  return s;
}

std::string label_string(const LabelSequence& label, const Alphabet& alphabet) {
  return alignment_string(label, alphabet);
}

std::vector<int> parse_widths(const std::string& text) {
  std::vector<int> out;
  for (const auto& f : io::detail::split(text)) {
    int w = 0;
    const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), w);
    if (ec != std::errc() || ptr != f.data() + f.size() || f.empty()) {
      throw Error(Errc::kParameter, "bad beam width '" + f + "'");
    }
    out.push_back(w);
  }
  return out;
}

// Class names from the class column of detection and ground-truth CSVs, in
// order of first appearance.
Alphabet infer_alphabet(const std::vector<std::string>& paths) {
  std::vector<std::string> names;
  for (const auto& p : paths) {
    auto in = io::open_in(p);
    io::detail::for_each_row(in, {}, [&](int line, const auto& f, bool header) {
      if (header) return;
      io::detail::expect_fields(f, 3, line);
      if (f[2] == "blank") throw Error(Errc::kFormat, "blank is not an event class");
      if (std::find(names.begin(), names.end(), f[2]) == names.end()) {
        names.push_back(f[2]);
      }
    });
  }
  if (names.empty()) names.push_back("event");
  return Alphabet(names);
}

Alphabet alphabet_from_flag(const std::string& classes) {
  std::vector<std::string> names = io::detail::split(classes);
  for (const auto& n : names) {
    if (n.empty() || n == "blank") throw Error(Errc::kParameter, "bad class name '" + n + "'");
  }
  return Alphabet(names);
}

json counts_json(const ClassCounts& n) {
  return {{"tp", n.tp}, {"fp1", n.fp1}, {"fp2", n.fp2}, {"fp3", n.fp3}, {"fn", n.fn}};
}

json prf_json(const PRF& r) {
  return {{"precision", r.precision}, {"recall", r.recall}, {"f1", r.f1}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CTC event decoding, detection and evaluation", "ctcevent"};
  app.footer(kExitCodeHelp);
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  // decode
  Common decode_c;
  std::string decode_in, decode_method = "extended-beam";
  int decode_width = 3;
  auto* decode_cmd = app.add_subcommand("decode", "Decode a probability CSV to label hypotheses (JSON)");
  decode_cmd->add_option("input", decode_in, "Probability CSV (t,p_blank,p_<class>...)")->required();
  decode_cmd->add_option("--method", decode_method, "greedy | beam | extended-beam")
      ->capture_default_str();
  decode_cmd->add_option("--beam-width", decode_width, "Beam width k")->capture_default_str();
  add_common(decode_cmd, decode_c);

  // detect
  Common detect_c;
  std::string detect_in, detect_method = "extended-beam";
  double window_s = 8.0, stride_s = 4.0;
  int detect_width = 3;
  auto* detect_cmd = app.add_subcommand("detect", "Sliding-window detection (CSV frame,time_s,class)");
  detect_cmd->add_option("input", detect_in, "Probability CSV")->required();
  detect_cmd->add_option("--window-s", window_s, "Window length in seconds")->capture_default_str();
  detect_cmd->add_option("--stride-s", stride_s, "Window stride in seconds")->capture_default_str();
  detect_cmd->add_option("--method", detect_method, "greedy | extended-beam")->capture_default_str();
  detect_cmd->add_option("--beam-width", detect_width, "Beam width k")->capture_default_str();
  add_common(detect_cmd, detect_c);

  // loss
  Common loss_c;
  std::string loss_in, loss_label;
  bool loss_oracle = false;
  auto* loss_cmd = app.add_subcommand("loss", "Sequence probability and CTC loss of a label (JSON)");
  loss_cmd->add_option("input", loss_in, "Probability CSV")->required();
  loss_cmd->add_option("--label", loss_label, "Comma-separated class names, e.g. eat,eat,drink")
      ->required();
  loss_cmd->add_flag("--oracle", loss_oracle, "Cross-check against alignment enumeration");
  add_common(loss_cmd, loss_c);

  // eval
  std::string eval_det, eval_gt, eval_classes, eval_out;
  auto* eval_cmd = app.add_subcommand("eval", "Score detections against ground truth (JSON)");
  eval_cmd->add_option("detections", eval_det, "Detection CSV (frame,time_s,class)")->required();
  eval_cmd->add_option("ground_truth", eval_gt, "Ground truth CSV (start_frame,end_frame,class)")
      ->required();
  eval_cmd->add_option("--classes", eval_classes,
                       "Comma-separated class names (default: inferred from the files)");
  eval_cmd->add_option("-o,--output", eval_out, "Output file (default stdout)");

  // baseline
  auto* baseline_cmd = app.add_subcommand("baseline", "Reference detectors");
  baseline_cmd->require_subcommand(1);
  Common two_c;
  std::string two_in;
  TwoStageParams two_p;
  auto* two_cmd = baseline_cmd->add_subcommand(
      "two-stage", "Thresholded maximum search over a probability CSV");
  two_cmd->add_option("input", two_in, "Probability CSV")->required();
  two_cmd->add_option("--threshold", two_p.threshold, "Detection threshold in (0,1)")
      ->capture_default_str();
  two_cmd->add_option("--min-dist-s", two_p.min_distance_s, "Minimum seconds between detections")
      ->capture_default_str();
  add_common(two_cmd, two_c);

  std::string thr_in, thr_out, thr_class = "intake";
  std::optional<double> thr_rate;
  ThresholdParams thr_p;
  auto* thr_cmd = baseline_cmd->add_subcommand(
      "threshold", "Four-threshold detector over a gyro CSV (t,roll_dps)");
  thr_cmd->add_option("input", thr_in, "Gyro CSV")->required();
  thr_cmd->add_option("--t1", thr_p.t1, "Arming threshold, deg/s (> 0)")->capture_default_str();
  thr_cmd->add_option("--t2", thr_p.t2, "Firing threshold, deg/s (< 0)")->capture_default_str();
  thr_cmd->add_option("--t3", thr_p.t3, "Seconds between arming and firing")->capture_default_str();
  thr_cmd->add_option("--t4", thr_p.t4, "Lockout seconds after a detection")->capture_default_str();
  thr_cmd->add_option("--sample-rate-hz", thr_rate, "Gyro sample rate")
      ->check(CLI::PositiveNumber);
  thr_cmd->add_option("--class-name", thr_class, "Class name written to the CSV")
      ->capture_default_str();
  thr_cmd->add_option("-o,--output", thr_out, "Output file (default stdout)");

  // sweep
  Common sweep_c;
  std::string sweep_in, sweep_widths = "1,2,3,5,10", sweep_gt;
  double sweep_window_s = 8.0, sweep_stride_s = 4.0;
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "Extended beam search across beam widths (CSV beam_width,top_label,top_probability,f1)");
  sweep_cmd->add_option("input", sweep_in, "Probability CSV")->required();
  sweep_cmd->add_option("--widths", sweep_widths, "Comma-separated beam widths")
      ->capture_default_str();
  sweep_cmd->add_option("--ground-truth", sweep_gt, "Ground truth CSV; adds pipeline F1");
  sweep_cmd->add_option("--window-s", sweep_window_s, "Window length for F1")->capture_default_str();
  sweep_cmd->add_option("--stride-s", sweep_stride_s, "Window stride for F1")->capture_default_str();
  add_common(sweep_cmd, sweep_c);

  // gen
  SyntheticScript script;
  std::vector<std::string> gen_events;
  std::string gen_mode = "spiky", gen_classes = "eat,drink", gen_out, gen_gt;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic probability CSV and ground truth");
  gen_cmd->add_option("--frames", script.total_frames, "Number of frames")->required();
  gen_cmd->add_option("--event", gen_events, "Event as <class>:<apex_frame>, repeatable");
  gen_cmd->add_option("--mode", gen_mode, "spiky | blocky")->capture_default_str();
  gen_cmd->add_option("--extent", script.extent_frames, "Spike width or block length in frames")
      ->capture_default_str();
  gen_cmd->add_option("--noise", script.noise_level, "Noise level in [0,1)")->capture_default_str();
  gen_cmd->add_option("--block-peak", script.block_peak, "Class probability inside blocks")
      ->capture_default_str();
  gen_cmd->add_option("--seed", script.seed, "Noise seed")->capture_default_str();
  gen_cmd->add_option("--sample-rate-hz", script.sample_rate_hz, "Frame rate")
      ->capture_default_str();
  gen_cmd->add_option("--classes", gen_classes, "Comma-separated class names")
      ->capture_default_str();
  gen_cmd->add_option("-o,--output", gen_out, "Probability CSV (writes a .json sidecar beside it)");
  gen_cmd->add_option("--ground-truth", gen_gt, "Ground truth CSV output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitParameter;
  }

  try {
    if (*decode_cmd) {
      const Loaded in = load_probs(decode_in, decode_c, false);
      const DecodeMethod method = parse_decode_method(decode_method);
      const DecodeResult r = decode(in.probs, in.alphabet, method, decode_width);
      json hyps = json::array();
      for (const auto& h : r.hypotheses) {
        json j = {{"label", label_json(h.label, in.alphabet)},
                  {"probability", h.total_probability()},
                  {"log_probability", h.total_log_prob}};
        if (!h.alignment.empty()) {
          j["alignment"] = alignment_string(h.alignment, in.alphabet);
          j["alignment_ids"] = h.alignment;
          j["alignment_probability"] = h.alignment_probability();
        }
        hyps.push_back(std::move(j));
      }
      json doc = {{"method", to_string(method)}, {"frames", in.probs.frames()},
                  {"hypotheses", hyps}};
      if (method != DecodeMethod::kGreedy) doc["beam_width"] = decode_width;
      emit(decode_c.output, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
    } else if (*detect_cmd) {
      const Loaded in = load_probs(detect_in, detect_c, true);
      const WindowSpec spec =
          WindowSpec::from_seconds(window_s, in.probs.sample_rate_hz(), stride_s);
      const auto dets = detect_pipeline(in.probs, spec, in.alphabet,
                                        parse_decode_method(detect_method), detect_width);
      emit(detect_c.output, [&](std::ostream& os) {
        io::write_detections(os, dets, in.alphabet);
      });
    } else if (*loss_cmd) {
      const Loaded in = load_probs(loss_in, loss_c, false);
      const LabelSequence label = io::parse_label(loss_label, in.alphabet);
      const LogProb lp = log_prob_forward(in.probs, label, in.alphabet);
      const double loss = ctc_loss(in.probs, label, in.alphabet);
      json doc = {{"label", label_json(label, in.alphabet)},
                  {"probability", to_prob(lp)},
                  {"loss", std::isfinite(loss) ? json(loss) : json("inf")}};
      if (loss_oracle) {
        const double brute = prob_brute_force(in.probs, label, in.alphabet);
        doc["oracle"] = {{"probability", brute},
                         {"abs_diff", std::abs(brute - to_prob(lp))}};
      }
      emit(loss_c.output, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
    } else if (*eval_cmd) {
      const Alphabet alphabet = eval_classes.empty() ? infer_alphabet({eval_gt, eval_det})
                                                     : alphabet_from_flag(eval_classes);
      auto det_in = io::open_in(eval_det);
      auto gt_in = io::open_in(eval_gt);
      const auto dets = io::read_detections(det_in, alphabet);
      const auto gt = io::read_ground_truth(gt_in, alphabet);
      EvalCounts counts = evaluate(dets, gt);
      for (TokenId c = 1; c < alphabet.size(); ++c) counts[c];
      json per_class = json::object();
      for (const auto& [c, n] : counts.per_class) {
        per_class[alphabet.name(c)] = {{"counts", counts_json(n)}, {"prf", prf_json(prf1(n))}};
      }
      ClassCounts total;
      for (const auto& [c, n] : counts.per_class) total += n;
      const json doc = {{"per_class", per_class},
                        {"combined", {{"counts", counts_json(total)},
                                      {"prf", prf_json(prf1(counts))},
                                      {"macro_f1", macro_f1(counts)}}}};
      emit(eval_out, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
    } else if (*two_cmd) {
      const Loaded in = load_probs(two_in, two_c, true);
      const auto dets = two_stage_detect(in.probs, two_p);
      emit(two_c.output, [&](std::ostream& os) {
        io::write_detections(os, dets, in.alphabet);
      });
    } else if (*thr_cmd) {
      if (!thr_rate) throw Error(Errc::kParameter, "baseline threshold needs --sample-rate-hz");
      auto in = io::open_in(thr_in);
      const auto roll = io::read_gyro(in);
      const auto dets = threshold_detect(roll, *thr_rate, thr_p);
      const Alphabet alphabet = alphabet_from_flag(thr_class);
      emit(thr_out, [&](std::ostream& os) { io::write_detections(os, dets, alphabet); });
    } else if (*sweep_cmd) {
      const bool scored = !sweep_gt.empty();
      const Loaded in = load_probs(sweep_in, sweep_c, scored);
      std::optional<SweepTruth> truth;
      if (scored) {
        auto gt_in = io::open_in(sweep_gt);
        truth = SweepTruth{io::read_ground_truth(gt_in, in.alphabet),
                           WindowSpec::from_seconds(sweep_window_s,
                                                    in.probs.sample_rate_hz(),
                                                    sweep_stride_s)};
      }
      const auto rows = sweep_beam_width(in.probs, in.alphabet, parse_widths(sweep_widths), truth);
      emit(sweep_c.output, [&](std::ostream& os) {
        os << "beam_width,top_label,top_probability,f1\n";
        for (const auto& r : rows) {
          os << r.beam_width << ',' << label_string(r.top_label, in.alphabet) << ','
             << io::detail::format_double(to_prob(r.top_log_prob)) << ',';
          if (r.f1) os << io::detail::format_double(*r.f1);
          os << '\n';
        }
      });
    } else if (*gen_cmd) {
      const Alphabet alphabet = alphabet_from_flag(gen_classes);
      script.num_classes = alphabet.num_classes();
      if (gen_mode == "spiky") {
        script.mode = SyntheticMode::kSpiky;
      } else if (gen_mode == "blocky") {
        script.mode = SyntheticMode::kBlocky;
      } else {
        throw Error(Errc::kParameter, "unknown mode '" + gen_mode + "'");
      }
      for (const auto& e : gen_events) {
        const auto colon = e.rfind(':');
        if (colon == std::string::npos) {
          throw Error(Errc::kParameter, "event '" + e + "' is not <class>:<frame>");
        }
        const auto cls = alphabet.find(e.substr(0, colon));
        if (!cls || *cls == kBlank) {
          throw Error(Errc::kParameter, "event '" + e + "' has an unknown class");
        }
        int frame = 0;
        const std::string f = e.substr(colon + 1);
        const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), frame);
        if (ec != std::errc() || ptr != f.data() + f.size() || f.empty()) {
          throw Error(Errc::kParameter, "event '" + e + "' has a bad frame");
        }
        script.events.push_back({*cls, frame});
      }
      const auto rec = gen_synthetic(script);
      emit(gen_out, [&](std::ostream& os) { io::write_prob_csv(os, rec.probs, alphabet); });
      if (!gen_out.empty()) io::write_sidecar(io::sidecar_path(gen_out), script.sample_rate_hz);
      if (!gen_gt.empty()) {
        emit(gen_gt, [&](std::ostream& os) {
          io::write_ground_truth(os, rec.ground_truth, alphabet);
        });
      }
    }
  } catch (const Error& e) {
    std::cerr << "ctcevent: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "ctcevent: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}
