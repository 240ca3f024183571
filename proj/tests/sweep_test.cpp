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

#include "ctcevent/sweep.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "ctcevent/synthetic.hpp"
#include "test_util.hpp"

namespace ctcevent {
namespace {

using namespace ctcevent::testing;

TEST(SweepTest, WorkedExampleWidths) {
  const auto rows = sweep_beam_width(worked_example(), eat_drink(), {1, 3});
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].top_label, (LabelSequence{E, D}));
  EXPECT_EQ(rows[1].top_label, (LabelSequence{E, E, D}));
  EXPECT_FALSE(rows[0].f1.has_value());
}

// Pruned beams rank by partial mass, so the top label is not monotone in
// width: width 5 briefly prefers [E,D,E,D] (0.1170) over [E,E,D].
TEST(SweepTest, TopLabelAcrossWidths) {
  const auto rows = sweep_beam_width(worked_example(), eat_drink(), {3, 5, 10, 50});
  EXPECT_EQ(rows[0].top_label, (LabelSequence{E, E, D}));
  EXPECT_EQ(rows[1].top_label, (LabelSequence{E, D, E, D}));
  EXPECT_NEAR(rows[1].top_log_prob, std::log(0.11704549), 1e-8);
  EXPECT_EQ(rows[2].top_label, (LabelSequence{E, E, D}));
  EXPECT_EQ(rows[3].top_label, (LabelSequence{E, E, D}));
  EXPECT_NEAR(std::exp(rows[3].top_log_prob), 0.13049988, 1e-10);
}

TEST(SweepTest, ZeroWidthRejected) {
  EXPECT_EQ(code_of([] { sweep_beam_width(worked_example(), eat_drink(), {3, 0}); }),
            Errc::kParameter);
}

TEST(SweepTest, ScoresAgainstGroundTruth) {
  SyntheticScript s;
  s.total_frames = 800;
  s.events = {{E, 100}, {D, 300}, {E, 600}};
  const auto rec = gen_synthetic(s);
  const auto rows =
      sweep_beam_width(rec.probs, eat_drink(), {1, 3},
                       SweepTruth{rec.ground_truth, WindowSpec::from_seconds(8.0, 64.0)});
  for (const auto& r : rows) {
    ASSERT_TRUE(r.f1.has_value());
    EXPECT_EQ(*r.f1, 1.0);
    EXPECT_EQ(r.top_label, (LabelSequence{E, D, E}));
  }
}

}  // namespace
}  // namespace ctcevent
