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
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "saferules/image.hpp"
#include "saferules/pipeline.hpp"

namespace saferules::test {

// Both reference rule groups, including the line break inside
// the member chain of the landmark rule.
inline constexpr const char* kHistogramSnippet =
    "h=Bayer2Mono_Left.output.histogram;\n"
    "length(nonempty(h.bins))/length(h.bins)>0.1;\n"
    "max(h)-min(h)>1000p;\n";

inline constexpr const char* kLandmarkSnippet =
    "length(PointCloud_3D.output.\n"
    "  inArea(Camera_Left_Landmark))>900;\n";

inline std::string reference_rules() { return std::string(kHistogramSnippet) + kLandmarkSnippet; }

inline Region landmark_region() { return Region("Camera_Left_Landmark", {-0.15, 0.10, 1.2}, {0.15, 0.40, 1.8}); }

inline PipelineGraph stereo_graph(const CalibrationInfo& calib = {}) {
  return build_stereo_pipeline(calib).with_region(landmark_region());
}

inline std::filesystem::path source_dir() { return SAFERULES_SOURCE_DIR; }

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream is(p);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("saferules_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline double uniform_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline MonoImage random_mono(Rng& rng, int max_side = 48) {
  const int bd = uniform(rng, 1, 16);
  MonoImage img(uniform(rng, 1, max_side), uniform(rng, 1, max_side), bd);
  for (auto& s : img.samples) s = static_cast<std::uint16_t>(uniform(rng, 0, static_cast<int>(max_level(bd))));
  return img;
}

inline RawImage random_raw(Rng& rng, int max_half_side = 24) {
  const int bd = uniform(rng, 1, 16);
  RawImage img(2 * uniform(rng, 1, max_half_side), 2 * uniform(rng, 1, max_half_side), bd, BayerPattern::RGGB);
  for (auto& s : img.samples) s = static_cast<std::uint16_t>(uniform(rng, 0, static_cast<int>(max_level(bd))));
  return img;
}

}  // namespace saferules::test
