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

#include "saferules/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

#include "saferules/error.hpp"

namespace saferules::kernels {

MonoImage debayer_to_mono(const RawImage& raw) {
  raw.validate();
  MonoImage out(raw.width, raw.height, raw.bit_depth);
  for (int y = 0; y < raw.height; y += 2) {
    for (int x = 0; x < raw.width; x += 2) {
      const std::uint32_t sum = raw.at(x, y) + raw.at(x + 1, y) + raw.at(x, y + 1) + raw.at(x + 1, y + 1);
      const auto mean = static_cast<std::uint16_t>((sum + 2) / 4);
      out.at(x, y) = mean;
      out.at(x + 1, y) = mean;
      out.at(x, y + 1) = mean;
      out.at(x + 1, y + 1) = mean;
    }
  }
  return out;
}

namespace {

Histogram count_levels(const std::vector<std::uint16_t>& samples, int bit_depth) {
  Histogram h;
  h.bit_depth = bit_depth;
  h.counts.assign(static_cast<std::size_t>(max_level(bit_depth)) + 1, 0);
  for (auto s : samples) ++h.counts[s];
  h.total = samples.size();
  return h;
}

}  // namespace

Histogram histogram(const MonoImage& img) {
  img.validate();
  return count_levels(img.samples, img.bit_depth);
}

Histogram histogram(const RawImage& raw) {
  raw.validate();
  return count_levels(raw.samples, raw.bit_depth);
}

MonoImage rectify(const MonoImage& img, const CalibrationInfo& calib) {
  img.validate();
  calib.validate();
  if (calib.radial_k1 == 0.0) return img;

  MonoImage out(img.width, img.height, img.bit_depth);
  const double max_x = img.width - 1;
  const double max_y = img.height - 1;
  const double inv_f2 = 1.0 / (calib.focal_length * calib.focal_length);
  for (int v = 0; v < img.height; ++v) {
    for (int u = 0; u < img.width; ++u) {
      const double dx = u - calib.cx;
      const double dy = v - calib.cy;
      const double scale = 1.0 + calib.radial_k1 * (dx * dx + dy * dy) * inv_f2;
      const double sx = calib.cx + dx * scale;
      const double sy = calib.cy + dy * scale;
      if (!(sx >= 0.0 && sx <= max_x && sy >= 0.0 && sy <= max_y)) continue;

      const int x0 = static_cast<int>(std::floor(sx));
      const int y0 = static_cast<int>(std::floor(sy));
      const int x1 = std::min(x0 + 1, img.width - 1);
      const int y1 = std::min(y0 + 1, img.height - 1);
      const double fx = sx - x0;
      const double fy = sy - y0;
      const double top = img.at(x0, y0) * (1.0 - fx) + img.at(x1, y0) * fx;
      const double bottom = img.at(x0, y1) * (1.0 - fx) + img.at(x1, y1) * fx;
      const double value = top * (1.0 - fy) + bottom * fy;
      out.at(u, v) = static_cast<std::uint16_t>(std::floor(value + 0.5));
    }
  }
  return out;
}

DisparityImage disparity(const MonoImage& left, const MonoImage& right, int block, int max_disparity) {
  if (left.width != right.width || left.height != right.height || left.bit_depth != right.bit_depth) {
    throw DimensionMismatch("stereo pair differs in size or bit depth: " + std::to_string(left.width) + "x" +
                            std::to_string(left.height) + "@" + std::to_string(left.bit_depth) + " vs " +
                            std::to_string(right.width) + "x" + std::to_string(right.height) + "@" +
                            std::to_string(right.bit_depth));
  }
  if (block < 3 || block % 2 == 0) throw InvalidArgument("block size must be odd and >= 3");
  if (max_disparity < 0) throw InvalidArgument("max disparity must be non-negative");

  const int half = block / 2;
  DisparityImage out(left.width, left.height, max_disparity);
  for (int v = half; v < left.height - half; ++v) {
    for (int u = half; u < left.width - half; ++u) {
      const int reachable = std::min(max_disparity, u - half);
      std::uint64_t best_cost = std::numeric_limits<std::uint64_t>::max();
      int best_d = 0;
      for (int d = 0; d <= reachable; ++d) {
        std::uint64_t cost = 0;
        for (int dy = -half; dy <= half; ++dy) {
          for (int dx = -half; dx <= half; ++dx) {
            cost += static_cast<std::uint64_t>(
                std::abs(static_cast<int>(left.at(u + dx, v + dy)) - static_cast<int>(right.at(u + dx - d, v + dy))));
          }
        }
        if (cost < best_cost) {
          best_cost = cost;
          best_d = d;
        }
      }
      out.at(u, v) = best_d;
    }
  }
  return out;
}

PointCloud reproject(const DisparityImage& disp, const CalibrationInfo& calib) {
  calib.validate();
  PointCloud cloud;
  const double fb = calib.focal_length * calib.baseline;
  for (int v = 0; v < disp.height; ++v) {
    for (int u = 0; u < disp.width; ++u) {
      const auto d = disp.at(u, v);
      if (d == DisparityImage::kInvalid || d <= 0) continue;
      const double z = fb / d;
      cloud.points.push_back({(u - calib.cx) * z / calib.focal_length, (v - calib.cy) * z / calib.focal_length, z});
    }
  }
  return cloud;
}

PointCloud in_area(const PointCloud& cloud, const Region& region) {
  PointCloud out;
  for (const auto& p : cloud.points) {
    if (region.contains(p)) out.points.push_back(p);
  }
  return out;
}

}  // namespace saferules::kernels
