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

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace saferules {

enum class BayerPattern { RGGB, BGGR, GRBG, GBRG };

std::string_view to_string(BayerPattern pattern);
BayerPattern parse_bayer_pattern(std::string_view text);

/// Largest representable level for a bit depth, 2^bit_depth - 1.
constexpr std::uint32_t max_level(int bit_depth) { return (1u << bit_depth) - 1u; }

/// Single-sensor mosaic straight off the camera. Width and height are even so
/// that every pixel belongs to exactly one 2x2 Bayer cell.
struct RawImage {
  int width = 0;
  int height = 0;
  int bit_depth = 8;
  BayerPattern pattern = BayerPattern::RGGB;
  std::vector<std::uint16_t> samples;

  RawImage() = default;
  RawImage(int width, int height, int bit_depth, BayerPattern pattern, std::uint16_t fill = 0);

  std::uint16_t& at(int x, int y) { return samples[static_cast<std::size_t>(y) * width + x]; }
  std::uint16_t at(int x, int y) const { return samples[static_cast<std::size_t>(y) * width + x]; }
  std::size_t pixel_count() const { return samples.size(); }

  /// Throws InvalidArgument when an invariant does not hold.
  void validate() const;

  friend bool operator==(const RawImage&, const RawImage&) = default;
};

struct MonoImage {
  int width = 0;
  int height = 0;
  int bit_depth = 8;
  std::vector<std::uint16_t> samples;

  MonoImage() = default;
  MonoImage(int width, int height, int bit_depth, std::uint16_t fill = 0);

  std::uint16_t& at(int x, int y) { return samples[static_cast<std::size_t>(y) * width + x]; }
  std::uint16_t at(int x, int y) const { return samples[static_cast<std::size_t>(y) * width + x]; }
  std::size_t pixel_count() const { return samples.size(); }

  void validate() const;

  friend bool operator==(const MonoImage&, const MonoImage&) = default;
};

/// Per-intensity-level pixel counts; `counts.size() == 2^bit_depth`.
struct Histogram {
  int bit_depth = 8;
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;

  std::size_t levels() const { return counts.size(); }
  std::size_t occupied_levels() const;

  friend bool operator==(const Histogram&, const Histogram&) = default;
};

struct DisparityImage {
  static constexpr std::int32_t kInvalid = -1;

  int width = 0;
  int height = 0;
  int max_disparity = 0;
  std::vector<std::int32_t> values;

  DisparityImage() = default;
  DisparityImage(int width, int height, int max_disparity, std::int32_t fill = kInvalid);

  std::int32_t& at(int x, int y) { return values[static_cast<std::size_t>(y) * width + x]; }
  std::int32_t at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
  bool valid(int x, int y) const { return at(x, y) != kInvalid; }

  friend bool operator==(const DisparityImage&, const DisparityImage&) = default;
};

/// Left-camera frame, meters: x right, y down, z forward.
struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Point3&, const Point3&) = default;
};

struct PointCloud {
  std::vector<Point3> points;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }

  friend bool operator==(const PointCloud&, const PointCloud&) = default;
};

/// Named axis-aligned box in the left-camera frame. Bounds are inclusive.
class Region {
 public:
  /// Throws InvalidArgument unless min < max componentwise and the z range is
  /// strictly in front of the camera.
  Region(std::string name, Point3 min_corner, Point3 max_corner);

  const std::string& name() const { return name_; }
  const Point3& min_corner() const { return min_; }
  const Point3& max_corner() const { return max_; }
  bool contains(const Point3& p) const;

  friend bool operator==(const Region&, const Region&) = default;

 private:
  std::string name_;
  Point3 min_;
  Point3 max_;
};

/// Shared intrinsics of a rectified horizontal stereo pair.
struct CalibrationInfo {
  double focal_length = 300.0;  // pixels
  double cx = 160.0;            // pixels
  double cy = 120.0;            // pixels
  double baseline = 0.12;       // meters
  double radial_k1 = 0.0;

  void validate() const;

  friend bool operator==(const CalibrationInfo&, const CalibrationInfo&) = default;
};

}  // namespace saferules
