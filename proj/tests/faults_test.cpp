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

#include <algorithm>

#include "saferules/error.hpp"
#include "saferules/faults.hpp"
#include "saferules/kernels.hpp"
#include "saferules/monitor.hpp"
#include "test_support.hpp"

namespace saferules {
namespace {

using test::Rng;

std::size_t at_max(const RawImage& img) {
  const auto top = max_level(img.bit_depth);
  return static_cast<std::size_t>(std::count(img.samples.begin(), img.samples.end(), top));
}

TEST(Scene, DefaultRendersInsideBothViews) {
  const SceneConfig cfg;
  const auto pair = render_scene(cfg);
  EXPECT_EQ(pair.left.width, 320);
  EXPECT_EQ(pair.right.height, 240);
  EXPECT_EQ(pair.left.bit_depth, 12);
  EXPECT_NO_THROW(pair.left.validate());
  EXPECT_NO_THROW(pair.right.validate());
}

TEST(Scene, NoiselessRenderIsDeterministic) {
  SceneConfig cfg;
  cfg.noise_amplitude = 0;
  const auto a = render_scene(cfg);
  const auto b = render_scene(cfg);
  EXPECT_EQ(a.left, b.left);
  EXPECT_EQ(a.right, b.right);
  // Same seed with noise is deterministic too, and differs per frame.
  cfg.noise_amplitude = 4;
  EXPECT_EQ(render_scene(cfg, 3).left, render_scene(cfg, 3).left);
  EXPECT_NE(render_scene(cfg, 3).left, render_scene(cfg, 4).left);
}

TEST(Scene, LandmarkInLowerHalf) {
  const SceneConfig cfg;
  const auto [row, col] = landmark_pixel(cfg);
  EXPECT_GT(row, cfg.height / 2.0);
  EXPECT_NEAR(row, cfg.calib.cy + cfg.calib.focal_length * 0.25 / 1.5, 1e-9);
  EXPECT_NEAR(col, cfg.calib.cx, 1e-9);
}

TEST(Scene, LandmarkBrightCrossDark) {
  SceneConfig cfg;
  cfg.noise_amplitude = 0;
  const auto left = kernels::debayer_to_mono(render_scene(cfg).left);
  const auto top = static_cast<double>(max_level(cfg.bit_depth));
  // Inside the white square away from the cross arms.
  EXPECT_GT(left.at(140, 150) / top, 0.8);
  // Centre of the cross.
  EXPECT_LT(left.at(160, 170) / top, 0.1);
}

TEST(Scene, LandmarkDisparityMatchesDepth) {
  const SceneConfig cfg;
  const auto pair = render_scene(cfg);
  const auto store = run_frame(test::stereo_graph(cfg.calib), pair.left, pair.right, 0);
  const auto& d = store.get<DisparityImage>("DisparityMap", "output");
  const double expected = cfg.calib.focal_length * cfg.calib.baseline / cfg.landmark.center.z;
  ASSERT_DOUBLE_EQ(expected, 24.0);
  std::vector<int> values;
  for (int v = 150; v < 190; ++v) {
    for (int u = 140; u < 180; ++u) values.push_back(d.at(u, v));
  }
  std::nth_element(values.begin(), values.begin() + values.size() / 2, values.end());
  EXPECT_NEAR(values[values.size() / 2], expected, 1.0);
}

TEST(Scene, FrustumViolation) {
  SceneConfig cfg;
  cfg.landmark.center = {2.0, 0.25, 1.5};
  EXPECT_THROW(render_scene(cfg), FrustumViolation);
  cfg.landmark.center = {0.0, 0.25, 0.2};
  EXPECT_THROW(render_scene(cfg), FrustumViolation);
}

TEST(Scene, InvalidConfig) {
  SceneConfig cfg;
  cfg.landmark.side = 0;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
}

TEST(Faults, CoverLeavesFewLevels) {
  Rng rng(31);
  for (int iter = 0; iter < 50; ++iter) {
    const auto img = test::random_raw(rng, 20);
    const auto covered = inject(img, {FaultKind::Cover, CameraSide::Left});
    EXPECT_LE(kernels::histogram(covered).occupied_levels(), 3u);
    EXPECT_EQ(covered.width, img.width);
    EXPECT_EQ(covered.bit_depth, img.bit_depth);
  }
}

TEST(Faults, CoverOfMonoAfterDebayerLeavesFewLevels) {
  const auto pair = render_scene(SceneConfig{});
  const auto mono = kernels::debayer_to_mono(inject(pair.left, {FaultKind::Cover, CameraSide::Left}));
  EXPECT_LE(kernels::histogram(mono).occupied_levels(), 3u);
}

TEST(Faults, OverexposeSaturates) {
  for (int bd : {8, 10, 12, 16}) {
    SceneConfig cfg;
    cfg.bit_depth = bd;
    const auto pair = render_scene(cfg);
    FaultSpec f;
    f.kind = FaultKind::Overexpose;
    const auto img = inject(pair.right, f);
    EXPECT_GE(at_max(img), img.pixel_count() * 95 / 100) << bd;
  }
}

TEST(Faults, PartialCoverBand) {
  const auto pair = render_scene(SceneConfig{});
  FaultSpec f;
  f.kind = FaultKind::PartialCover;
  f.fraction = 0.3;
  EXPECT_EQ(covered_columns(0.3, 320), 96);
  const auto out = inject(pair.left, f);
  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < out.width; ++x) {
      if (x < 96) {
        ASSERT_LE(out.at(x, y), kCoverLevel + 1);
      } else {
        ASSERT_EQ(out.at(x, y), pair.left.at(x, y));
      }
    }
  }
}

TEST(Faults, CoveredColumnsIsCeiling) {
  EXPECT_EQ(covered_columns(0.5, 11), 6);
  EXPECT_EQ(covered_columns(1.0, 7), 7);
  EXPECT_EQ(covered_columns(0.01, 320), 4);
}

TEST(Faults, ApplyTargetsOneSide) {
  const auto pair = render_scene(SceneConfig{});
  const auto faulted = apply_faults(pair, {parse_fault("cover:right")});
  EXPECT_EQ(faulted.left, pair.left);
  EXPECT_NE(faulted.right, pair.right);
}

TEST(Faults, Parse) {
  const auto f = parse_fault("partial_cover:left:0.25");
  EXPECT_EQ(f.kind, FaultKind::PartialCover);
  EXPECT_EQ(f.target, CameraSide::Left);
  EXPECT_DOUBLE_EQ(f.fraction, 0.25);
  EXPECT_DOUBLE_EQ(parse_fault("overexpose:right:8").gain, 8.0);
  EXPECT_THROW(parse_fault("cover"), InvalidArgument);
  EXPECT_THROW(parse_fault("smudge:left"), InvalidArgument);
  EXPECT_THROW(parse_fault("cover:up"), InvalidArgument);
  EXPECT_THROW(parse_fault("partial_cover:left:1.5"), InvalidArgument);
  EXPECT_THROW(parse_fault("partial_cover:left:abc"), InvalidArgument);
  EXPECT_THROW(parse_fault("cover:left:1"), InvalidArgument);
}

}  // namespace
}  // namespace saferules
