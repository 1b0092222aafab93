// Copyright 2026 The saferules Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <sstream>

#include "saferules/audit.hpp"
#include "saferules/error.hpp"
#include "saferules/monitor.hpp"
#include "test_support.hpp"

namespace saferules {
namespace {

using test::Rng;
using test::uniform;

FrameStore store_with(const PipelineGraph& g, std::shared_ptr<const MonoImage> left_mono,
                      std::shared_ptr<const PointCloud> cloud) {
  FrameStore store(g, 0);
  if (left_mono) store.put("Bayer2Mono_Left", "output", left_mono);
  if (cloud) store.put("PointCloud_3D", "output", cloud);
  store.seal();
  return store;
}

std::shared_ptr<const PointCloud> cloud_inside(std::size_t n) {
  auto c = std::make_shared<PointCloud>();
  for (std::size_t i = 0; i < n; ++i) c->points.push_back({0.0, 0.25, 1.5});
  c->points.push_back({5.0, 5.0, 5.0});  // outside the landmark box
  return c;
}

TEST(Evaluate, LandmarkBoundaryIsStrict) {
  const auto g = test::stereo_graph();
  const auto rules = rules::compile(test::kLandmarkSnippet, g);
  auto at = [&](std::size_t n) { return evaluate(rules, store_with(g, nullptr, cloud_inside(n)))[0]; };
  const auto v900 = at(900);
  EXPECT_EQ(v900.outcome, Outcome::Fail);
  ASSERT_EQ(v900.evaluated.size(), 2u);
  EXPECT_EQ(v900.evaluated[0].value, Rational(900));
  EXPECT_EQ(v900.evaluated[1].value, Rational(900));
  EXPECT_EQ(at(901).outcome, Outcome::Pass);
}

TEST(Evaluate, RatioAndSpreadOnFlatImage) {
  const auto g = test::stereo_graph();
  const auto rules = rules::compile(test::kHistogramSnippet, g);
  const auto verdicts = evaluate(rules, store_with(g, std::make_shared<const MonoImage>(8, 8, 8, 9), nullptr));
  ASSERT_EQ(verdicts.size(), 2u);
  EXPECT_EQ(verdicts[0].rule_id, "R1");
  EXPECT_EQ(verdicts[0].outcome, Outcome::Fail);
  EXPECT_EQ(verdicts[0].evaluated[0].value, Rational(1, 256));
  EXPECT_EQ(verdicts[0].evaluated[0].label, "length(nonempty(h.bins))/length(h.bins)");
  EXPECT_EQ(verdicts[1].evaluated[0].value, Rational(0));
  EXPECT_NE(verdicts[0].message.find("violated"), std::string::npos);
}

TEST(Evaluate, RatioThresholdIsExact) {
  // 26 of 256 levels is above 1/10, 25 of 256 is below it.
  const auto g = test::stereo_graph();
  const auto rules = rules::compile(test::kHistogramSnippet, g);
  for (int occupied : {25, 26}) {
    auto img = std::make_shared<MonoImage>(16, 16, 8, 0);
    for (int i = 0; i < occupied; ++i) img->samples[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(i);
    const auto v = evaluate(rules, store_with(g, img, nullptr))[0];
    EXPECT_EQ(v.outcome, occupied == 26 ? Outcome::Pass : Outcome::Fail) << occupied;
  }
}

TEST(Evaluate, MissingTapOnlyAffectsDependentRules) {
  const auto g = test::stereo_graph();
  const auto rules = rules::compile(test::reference_rules(), g);
  const auto verdicts = evaluate(rules, store_with(g, nullptr, cloud_inside(1000)));
  ASSERT_EQ(verdicts.size(), 3u);
  EXPECT_EQ(verdicts[0].outcome, Outcome::Error);
  EXPECT_EQ(verdicts[0].error, "MissingValue");
  EXPECT_EQ(verdicts[1].outcome, Outcome::Error);
  EXPECT_EQ(verdicts[2].outcome, Outcome::Pass);
}

TEST(Evaluate, DivisionByZeroIsAnError) {
  const auto g = test::stereo_graph();
  const auto rules = rules::compile("length(PointCloud_3D.output.inArea(Camera_Left_Landmark))/0>1;", g);
  const auto v = evaluate(rules, store_with(g, nullptr, cloud_inside(3)))[0];
  EXPECT_EQ(v.outcome, Outcome::Error);
  EXPECT_EQ(v.error, "DivisionByZero");
}

TEST(Evaluate, UnsealedStoreIsRejected) {
  const auto g = test::stereo_graph();
  FrameStore store(g, 0);
  EXPECT_THROW(evaluate(rules::compile(test::kLandmarkSnippet, g), store), InvalidArgument);
}

TEST(Evaluate, HistogramSharedAcrossRules) {
  const auto g = test::stereo_graph();
  const auto rules = rules::compile(test::kHistogramSnippet, g);
  const auto store = store_with(g, std::make_shared<const MonoImage>(8, 8, 8, 9), nullptr);
  evaluate(rules, store);
  EXPECT_EQ(store.histogram_computations(), 1u);
}

Verdict verdict(const std::string& id, std::int64_t frame, Outcome o) {
  return Verdict{id, frame, o, {}, "", o == Outcome::Error ? "X" : ""};
}

TEST(Gate, PassKeepsContinue) {
  const auto d = gate({verdict("R1", 0, Outcome::Pass), verdict("R2", 0, Outcome::Pass)}, {});
  EXPECT_EQ(d.state, GateState::Continue);
  EXPECT_TRUE(d.tripped_by.empty());
}

TEST(Gate, FailAndErrorLatch) {
  auto d = gate({verdict("R1", 4, Outcome::Pass), verdict("R2", 4, Outcome::Fail), verdict("R3", 4, Outcome::Error)},
                {});
  EXPECT_TRUE(d.stopped());
  EXPECT_EQ(d.tripped_by, (std::vector<Trip>{{4, "R2"}, {4, "R3"}}));
  d = gate({verdict("R1", 5, Outcome::Pass)}, d);
  EXPECT_TRUE(d.stopped());
  EXPECT_EQ(d.tripped_by.size(), 2u);
  EXPECT_FALSE(reset(d).stopped());
}

TEST(GateProperty, LatchIsMonotone) {
  Rng rng(21);
  for (int seq = 0; seq < 500; ++seq) {
    PipelineDecision d;
    bool seen_bad = false;
    const int frames = uniform(rng, 1, 30);
    for (int f = 0; f < frames; ++f) {
      std::vector<Verdict> vs;
      for (int r = 1; r <= 3; ++r) {
        const int roll = uniform(rng, 0, 19);
        const Outcome o = roll == 0 ? Outcome::Fail : roll == 1 ? Outcome::Error : Outcome::Pass;
        seen_bad = seen_bad || o != Outcome::Pass;
        vs.push_back(verdict("R" + std::to_string(r), f, o));
      }
      const bool was = d.stopped();
      const auto trips_before = d.tripped_by;
      d = gate(vs, d);
      ASSERT_EQ(d.stopped(), seen_bad);
      if (was) {
        ASSERT_TRUE(d.stopped());
        // Trips from earlier frames are kept.
        ASSERT_TRUE(std::equal(trips_before.begin(), trips_before.end(), d.tripped_by.begin()));
      }
    }
  }
}

TEST(Audit, RoundTrip) {
  std::ostringstream os;
  AuditLog log(os, true);
  std::vector<Verdict> verdicts{
      Verdict{"R1", 0, Outcome::Pass, {{"a/b", Rational(3, 7)}, {"0.1", Rational(1, 10)}}, "holds: a/b>0.1;", ""},
      Verdict{"R2", 0, Outcome::Error, {}, "MissingValue: no value at X.output", "MissingValue"},
  };
  PipelineDecision d = gate(verdicts, {});
  log.append(0, verdicts, d);
  log.append_reset(1);

  std::istringstream is(os.str());
  const auto records = parse_audit_log(is);
  ASSERT_EQ(records.size(), 4u);
  EXPECT_EQ(records[0].kind, AuditRecord::Kind::Verdict);
  EXPECT_EQ(*records[0].verdict, verdicts[0]);
  EXPECT_EQ(*records[1].verdict, verdicts[1]);
  EXPECT_EQ(records[2].kind, AuditRecord::Kind::Decision);
  EXPECT_EQ(*records[2].decision, d);
  EXPECT_EQ(records[3].kind, AuditRecord::Kind::Reset);
  EXPECT_EQ(records[3].frame_id, 1);
  EXPECT_EQ(records[0].timestamp.back(), 'Z');
}

TEST(Audit, StableWithoutTimestamps) {
  std::ostringstream os;
  AuditLog log(os, false);
  log.append(2, {Verdict{"R1", 2, Outcome::Fail, {{"x", Rational(1)}, {"2", Rational(2)}}, "violated: x>2;", ""}},
             PipelineDecision{GateState::ProtectiveStop, {{2, "R1"}}});
  EXPECT_EQ(os.str(),
            "VERDICT\t2\tR1\tFAIL\tx=1;2=2\tviolated: x>2;\t-\n"
            "DECISION\t2\tPROTECTIVE_STOP\t2:R1\t-\n");
}

TEST(Audit, MalformedLine) {
  std::istringstream is("VERDICT\tnot-a-number\n");
  EXPECT_THROW(parse_audit_log(is), InvalidArgument);
}

}  // namespace
}  // namespace saferules
