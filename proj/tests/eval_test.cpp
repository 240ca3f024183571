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

#include "ctcevent/eval.hpp"

#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"

namespace ctcevent {
namespace {

using namespace ctcevent::testing;

Detection at(TokenId c, int frame) { return {c, frame, static_cast<double>(frame)}; }

std::vector<GroundTruthEvent> fixture_gt() { return {{E, 10, 20}, {E, 30, 40}, {D, 50, 60}}; }

TEST(EvaluateTest, AllFiveRules) {
  const EvalCounts n =
      evaluate({at(E, 12), at(E, 15), at(E, 25), at(D, 33), at(E, 55)}, fixture_gt());
  EXPECT_EQ(n.at(E), (ClassCounts{1, 1, 1, 1, 1}));
  EXPECT_EQ(n.at(D), (ClassCounts{0, 0, 0, 1, 1}));
}

TEST(EvaluateTest, NoDetections) {
  const EvalCounts n = evaluate({}, fixture_gt());
  EXPECT_EQ(n.at(E), (ClassCounts{0, 0, 0, 0, 2}));
  EXPECT_EQ(n.at(D), (ClassCounts{0, 0, 0, 0, 1}));
}

TEST(EvaluateTest, InclusiveBounds) {
  EXPECT_EQ(evaluate({at(E, 10)}, fixture_gt()).at(E).tp, 1);
  EXPECT_EQ(evaluate({at(E, 20)}, fixture_gt()).at(E).tp, 1);
  EXPECT_EQ(evaluate({at(E, 21)}, fixture_gt()).at(E).fp2, 1);
  EXPECT_EQ(evaluate({at(E, 9)}, fixture_gt()).at(E).fp2, 1);
}

TEST(EvaluateTest, WrongClassLeavesEventOpen) {
  const EvalCounts n = evaluate({at(D, 11), at(E, 12)}, fixture_gt());
  EXPECT_EQ(n.at(D).fp3, 1);
  EXPECT_EQ(n.at(E).tp, 1);
  EXPECT_EQ(n.at(E).fn, 1);
}

TEST(EvaluateTest, Errors) {
  EXPECT_EQ(code_of([] { evaluate({at(E, 30), at(E, 12)}, fixture_gt()); }),
            Errc::kOrdering);
  EXPECT_EQ(code_of([] { evaluate({}, {{E, 10, 20}, {D, 20, 30}}); }), Errc::kOrdering);
  EXPECT_EQ(code_of([] { evaluate({}, {{E, 30, 40}, {D, 10, 20}}); }), Errc::kOrdering);
  EXPECT_EQ(code_of([] { evaluate({}, {{E, 5, 4}}); }), Errc::kDomain);
  EXPECT_EQ(code_of([] { evaluate({}, {{B, 5, 6}}); }), Errc::kDomain);
}

TEST(PrfTest, Arithmetic) {
  const PRF r = prf1(ClassCounts{1, 1, 1, 1, 1});
  EXPECT_DOUBLE_EQ(r.precision, 0.25);
  EXPECT_DOUBLE_EQ(r.recall, 0.5);
  EXPECT_NEAR(r.f1, 1.0 / 3.0, 1e-12);
}

TEST(PrfTest, PerfectAndZero) {
  const PRF p = prf1(ClassCounts{4, 0, 0, 0, 0});
  EXPECT_EQ(p.precision, 1.0);
  EXPECT_EQ(p.recall, 1.0);
  EXPECT_EQ(p.f1, 1.0);
  EXPECT_EQ(prf1(ClassCounts{0, 2, 0, 0, 3}).f1, 0.0);
  EXPECT_EQ(prf1(ClassCounts{}).f1, 0.0);
}

TEST(PrfTest, SelectedClassesAndMacro) {
  const EvalCounts n =
      evaluate({at(E, 12), at(E, 15), at(E, 25), at(D, 33), at(E, 55)}, fixture_gt());
  EXPECT_NEAR(prf1(n, {E}).f1, 1.0 / 3.0, 1e-12);
  EXPECT_EQ(prf1(n, {D}).f1, 0.0);
  // Summed: tp=1, fp=4, fn=2.
  EXPECT_NEAR(prf1(n).precision, 0.2, 1e-12);
  EXPECT_NEAR(prf1(n).recall, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(macro_f1(n), 1.0 / 6.0, 1e-12);
}

struct Case {
  std::vector<Detection> detections;
  std::vector<GroundTruthEvent> gt;
};

Case random_case(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> gap(0, 15), len(0, 10), cls(1, 2), n(0, 12);
  Case c;
  int f = gap(rng);
  const int events = n(rng);
  for (int i = 0; i < events; ++i) {
    const int l = len(rng);
    c.gt.push_back({cls(rng), f, f + l});
    f += l + 1 + gap(rng);
  }
  std::uniform_int_distribution<int> pos(0, f + 5);
  std::vector<int> frames(n(rng) * 2);
  for (int& x : frames) x = pos(rng);
  std::sort(frames.begin(), frames.end());
  for (int x : frames) c.detections.push_back(at(cls(rng), x));
  return c;
}

TEST(EvaluateTest, PropertyConservation) {
  std::mt19937_64 rng(10);
  for (int iter = 0; iter < 500; ++iter) {
    const Case c = random_case(rng);
    const EvalCounts n = evaluate(c.detections, c.gt);
    std::map<TokenId, int> events;
    for (const auto& e : c.gt) ++events[e.class_id];
    for (const auto& [cls, k] : events) ASSERT_EQ(n.at(cls).tp + n.at(cls).fn, k);
    int total = 0;
    for (const auto& [cls, k] : n.per_class) total += k.tp + k.false_positives();
    ASSERT_EQ(total, static_cast<int>(c.detections.size()));
  }
}

TEST(EvaluateTest, PropertyTranslationInvariance) {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 300; ++iter) {
    Case c = random_case(rng);
    const EvalCounts before = evaluate(c.detections, c.gt);
    const int shift = 1000;
    for (auto& d : c.detections) d.frame += shift;
    for (auto& e : c.gt) {
      e.start_frame += shift;
      e.end_frame += shift;
    }
    ASSERT_EQ(evaluate(c.detections, c.gt), before);
  }
}

TEST(EvaluateTest, PropertyOutsideDetectionAddsFp2) {
  std::mt19937_64 rng(12);
  for (int iter = 0; iter < 300; ++iter) {
    Case c = random_case(rng);
    const EvalCounts before = evaluate(c.detections, c.gt);
    const int last = c.gt.empty() ? 0 : c.gt.back().end_frame;
    const int frame = std::max(last, c.detections.empty() ? 0 : c.detections.back().frame) + 1;
    c.detections.push_back(at(D, frame));
    EvalCounts expected = before;
    ++expected[D].fp2;
    ASSERT_EQ(evaluate(c.detections, c.gt), expected);
  }
}

TEST(EvaluateTest, PropertyMergedCountsMatchSummedPrf) {
  std::mt19937_64 rng(13);
  EvalCounts merged;
  ClassCounts sum;
  for (int iter = 0; iter < 50; ++iter) {
    const Case c = random_case(rng);
    const EvalCounts n = evaluate(c.detections, c.gt);
    merged += n;
    for (const auto& [cls, k] : n.per_class) sum += k;
  }
  EXPECT_EQ(prf1(merged).f1, prf1(sum).f1);
}

}  // namespace
}  // namespace ctcevent
