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

#include "saferules/image.hpp"

#include <algorithm>
#include <cmath>

#include "saferules/error.hpp"

namespace saferules {

namespace {

void check_geometry(int width, int height, int bit_depth) {
  if (width <= 0 || height <= 0) {
    throw InvalidArgument("image dimensions must be positive, got " + std::to_string(width) + "x" +
                          std::to_string(height));
  }
  if (bit_depth < 1 || bit_depth > 16) {
    throw InvalidArgument("bit depth must be in [1, 16], got " + std::to_string(bit_depth));
  }
}

void check_samples(const std::vector<std::uint16_t>& samples, int width, int height, int bit_depth) {
  if (samples.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw InvalidArgument("sample count does not match image dimensions");
  }
  const auto limit = max_level(bit_depth);
  const auto it = std::find_if(samples.begin(), samples.end(), [&](std::uint16_t s) { return s > limit; });
  if (it != samples.end()) {
    throw InvalidArgument("sample " + std::to_string(*it) + " exceeds " + std::to_string(bit_depth) +
                          "-bit range");
  }
}

}  // namespace

std::string_view to_string(BayerPattern pattern) {
  switch (pattern) {
    case BayerPattern::RGGB: return "RGGB";
    case BayerPattern::BGGR: return "BGGR";
    case BayerPattern::GRBG: return "GRBG";
    case BayerPattern::GBRG: return "GBRG";
  }
  return "RGGB";
}

BayerPattern parse_bayer_pattern(std::string_view text) {
  for (auto p : {BayerPattern::RGGB, BayerPattern::BGGR, BayerPattern::GRBG, BayerPattern::GBRG}) {
    if (to_string(p) == text) return p;
  }
  throw InvalidArgument("unknown Bayer pattern '" + std::string(text) + "'");
}

RawImage::RawImage(int w, int h, int depth, BayerPattern p, std::uint16_t fill)
    : width(w), height(h), bit_depth(depth), pattern(p) {
  check_geometry(w, h, depth);
  samples.assign(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill);
}

void RawImage::validate() const {
  check_geometry(width, height, bit_depth);
  if (width % 2 != 0 || height % 2 != 0) {
    throw InvalidArgument("raw image dimensions must be even for a Bayer mosaic");
  }
  check_samples(samples, width, height, bit_depth);
}

MonoImage::MonoImage(int w, int h, int depth, std::uint16_t fill) : width(w), height(h), bit_depth(depth) {
  check_geometry(w, h, depth);
  samples.assign(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill);
}

void MonoImage::validate() const {
  check_geometry(width, height, bit_depth);
  check_samples(samples, width, height, bit_depth);
}

std::size_t Histogram::occupied_levels() const {
  return static_cast<std::size_t>(std::count_if(counts.begin(), counts.end(), [](auto c) { return c > 0; }));
}

DisparityImage::DisparityImage(int w, int h, int max_d, std::int32_t fill)
    : width(w), height(h), max_disparity(max_d) {
  values.assign(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill);
}

Region::Region(std::string name, Point3 min_corner, Point3 max_corner)
    : name_(std::move(name)), min_(min_corner), max_(max_corner) {
  if (name_.empty()) throw InvalidArgument("region name must not be empty");
  if (!(min_.x < max_.x && min_.y < max_.y && min_.z < max_.z)) {
    throw InvalidArgument("region '" + name_ + "': min corner must be below max corner componentwise");
  }
  if (!(min_.z > 0.0)) {
    throw InvalidArgument("region '" + name_ + "': z range must lie in front of the camera");
  }
}

bool Region::contains(const Point3& p) const {
  return p.x >= min_.x && p.x <= max_.x && p.y >= min_.y && p.y <= max_.y && p.z >= min_.z && p.z <= max_.z;
}

void CalibrationInfo::validate() const {
  if (!(focal_length > 0.0) || !std::isfinite(focal_length)) {
    throw InvalidArgument("focal length must be positive");
  }
  if (!(baseline > 0.0) || !std::isfinite(baseline)) throw InvalidArgument("baseline must be positive");
  if (!std::isfinite(cx) || !std::isfinite(cy) || !std::isfinite(radial_k1)) {
    throw InvalidArgument("calibration values must be finite");
  }
}

}  // namespace saferules
