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

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "saferules/image.hpp"
#include "saferules/pipeline.hpp"

namespace saferules {

/// Fronto-parallel white square with a black cross through its center.
struct LandmarkSpec {
  bool present = true;
  double side = 0.30;                 // m
  Point3 center{0.0, 0.25, 1.5};      // m, left-camera frame
  double cross_arm_width = 0.04;      // m

  friend bool operator==(const LandmarkSpec&, const LandmarkSpec&) = default;
};

/// Synthetic stereo scene: textured ground plane below the cameras, a
/// textured backdrop behind it, and the landmark in front.
struct SceneConfig {
  int width = 320;
  int height = 240;
  int bit_depth = 12;
  BayerPattern pattern = BayerPattern::RGGB;
  CalibrationInfo calib{};
  LandmarkSpec landmark{};
  double camera_height = 1.0;     // m above the ground plane
  double backdrop_depth = 4.0;    // m
  std::uint64_t seed = 1;         // texture and noise
  int noise_amplitude = 4;        // levels, uniform in [-a, a]

  /// Throws InvalidArgument on bad geometry or ranges.
  void validate() const;

  friend bool operator==(const SceneConfig&, const SceneConfig&) = default;
};

struct StereoPair {
  RawImage left;
  RawImage right;
};

/// Ray-casts the scene into both cameras (right camera displaced by the
/// baseline along +x, no distortion). Texture is fixed by `cfg.seed`; sensor
/// noise is drawn per frame from (`cfg.seed`, `frame_index`). Throws
/// FrustumViolation if a present landmark is not fully visible in both views.
StereoPair render_scene(const SceneConfig& cfg, std::uint64_t frame_index = 0);

/// Row/column of the landmark center as seen by the left camera.
std::pair<double, double> landmark_pixel(const SceneConfig& cfg);

enum class FaultKind { Cover, Overexpose, PartialCover };

std::string_view to_string(FaultKind kind);

struct FaultSpec {
  FaultKind kind = FaultKind::Cover;
  CameraSide target = CameraSide::Left;
  double fraction = 0.3;          // PartialCover: share of the width, from the left edge
  double gain = 4.0;              // Overexpose
  double offset = 0.9;            // Overexpose, fraction of full scale
  std::uint64_t seed = 7;         // Cover noise

  void validate() const;

  friend bool operator==(const FaultSpec&, const FaultSpec&) = default;
};

/// Low constant level used for a covered lens.
inline constexpr std::uint16_t kCoverLevel = 2;

/// Columns blanked by a partial cover: ceil(fraction * width).
int covered_columns(double fraction, int width);

/// Applies a lens fault to one image; `fault.target` is not consulted.
///   Cover         every sample -> level 2 +/- 1
///   Overexpose    v -> min(max, round(gain * v + offset * max))
///   PartialCover  Cover restricted to the leftmost covered_columns()
RawImage inject(const RawImage& img, const FaultSpec& fault);

/// Applies each fault to the image it targets, in order.
StereoPair apply_faults(StereoPair pair, const std::vector<FaultSpec>& faults);

/// Parses the `KIND:TARGET[:PARAM]` flag form, e.g. `cover:left`,
/// `overexpose:right:6`, `partial_cover:left:0.3`. PARAM is the gain for
/// overexpose and the fraction for partial_cover.
FaultSpec parse_fault(std::string_view text);

}  // namespace saferules
