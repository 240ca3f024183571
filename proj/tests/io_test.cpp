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

#include "ctcevent/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "test_util.hpp"

namespace ctcevent {
namespace {

using namespace ctcevent::testing;

TEST(ProbCsvTest, RoundTrip) {
  const ProbMatrix m = worked_example();
  std::stringstream ss;
  io::write_prob_csv(ss, m, eat_drink());
  EXPECT_EQ(ss.str().substr(0, ss.str().find('\n')), "t,p_blank,p_eat,p_drink");
  const io::ProbTable table = io::read_prob_table(ss);
  EXPECT_EQ(table.class_names, (std::vector<std::string>{"eat", "drink"}));
  EXPECT_EQ(table.rows, m.to_rows());
  EXPECT_EQ(table.alphabet().name(D), "drink");
}

TEST(ProbCsvTest, FormatErrors) {
  auto code = [](const std::string& text) {
    return code_of([&] {
      std::istringstream in(text);
      io::read_prob_table(in);
    });
  };
  EXPECT_EQ(code(""), Errc::kFormat);
  EXPECT_EQ(code("t,p_eat,p_blank\n0,0.5,0.5\n"), Errc::kFormat);
  EXPECT_EQ(code("t,p_blank\n0,1\n"), Errc::kFormat);
  EXPECT_EQ(code("t,p_blank,eat\n0,0.5,0.5\n"), Errc::kFormat);
  EXPECT_EQ(code("t,p_blank,p_eat\n0,0.5\n"), Errc::kFormat);
  EXPECT_EQ(code("t,p_blank,p_eat\n0,0.5,x\n"), Errc::kFormat);
  EXPECT_EQ(code("t,p_blank,p_eat\n1,0.5,0.5\n1,0.5,0.5\n"), Errc::kFormat);
  EXPECT_FALSE(code("t,p_blank,p_eat\n0,0.5,0.5\n\n0.5,0.2,0.8\r\n"));
}

TEST(DetectionCsvTest, RoundTrip) {
  const std::vector<Detection> d{{E, 3, 3.0 / 64}, {D, 700, 700 / 64.0}};
  std::stringstream ss;
  io::write_detections(ss, d, eat_drink());
  EXPECT_EQ(io::read_detections(ss, eat_drink()), d);
}

TEST(DetectionCsvTest, UnknownClass) {
  std::istringstream in("frame,time_s,class\n1,0.1,sleep\n");
  EXPECT_EQ(code_of([&] { io::read_detections(in, eat_drink()); }), Errc::kFormat);
  std::istringstream bad("frame,time,class\n1,0.1,eat\n");
  EXPECT_EQ(code_of([&] { io::read_detections(bad, eat_drink()); }), Errc::kFormat);
}

TEST(GroundTruthCsvTest, RoundTrip) {
  const std::vector<GroundTruthEvent> gt{{E, 1, 4}, {D, 9, 9}};
  std::stringstream ss;
  io::write_ground_truth(ss, gt, eat_drink());
  const auto back = io::read_ground_truth(ss, eat_drink());
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].class_id, D);
  EXPECT_EQ(back[1].start_frame, 9);
  EXPECT_EQ(back[0].end_frame, 4);
}

TEST(GyroCsvTest, Reads) {
  std::istringstream in("t,roll_dps\n0,1.5\n0.1,-30\n");
  EXPECT_EQ(io::read_gyro(in), (std::vector<double>{1.5, -30}));
  std::istringstream bad("t,roll_dps\n0,abc\n");
  EXPECT_EQ(code_of([&] { io::read_gyro(bad); }), Errc::kFormat);
}

TEST(SidecarTest, RoundTripAndErrors) {
  const auto dir = std::filesystem::temp_directory_path() / "ctcevent_io_test";
  std::filesystem::create_directories(dir);
  const auto csv = dir / "probs.csv";
  EXPECT_EQ(io::sidecar_path(csv), dir / "probs.json");
  EXPECT_FALSE(io::read_sidecar_sample_rate(io::sidecar_path(csv)).has_value());
  io::write_sidecar(io::sidecar_path(csv), 64.0);
  EXPECT_EQ(io::read_sidecar_sample_rate(io::sidecar_path(csv)), 64.0);
  {
    auto out = io::open_out(dir / "bad.json");
    out << "{\"rate\": 3}";
  }
  EXPECT_EQ(code_of([&] { io::read_sidecar_sample_rate(dir / "bad.json"); }),
            Errc::kFormat);
  EXPECT_EQ(code_of([&] { io::open_in(dir / "missing.csv"); }), Errc::kIo);
  std::filesystem::remove_all(dir);
}

TEST(ParseLabelTest, NamesAndErrors) {
  EXPECT_EQ(io::parse_label("eat,eat,drink", eat_drink()), (LabelSequence{E, E, D}));
  EXPECT_EQ(io::parse_label("", eat_drink()), LabelSequence{});
  EXPECT_EQ(code_of([] { io::parse_label("eat,sleep", eat_drink()); }),
            Errc::kInvalidToken);
}

}  // namespace
}  // namespace ctcevent
