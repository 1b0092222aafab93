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

#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "saferules/faults.hpp"
#include "saferules/pipeline.hpp"
#include "saferules/standards.hpp"

namespace saferules::config {

/// Pipeline configuration document (JSON):
///
///   {
///     "calibration": {"focal_length": 300, "cx": 160, "cy": 120,
///                     "baseline": 0.12, "radial_k1": 0.0}   | "calib.json",
///     "components": [{"name": "Camera_Left", "kind": "camera", "side": "left"},
///                    {"name": "DisparityMap", "kind": "disparity",
///                     "block_size": 5, "max_disparity": 32}, ...],
///     "connectors": [{"from": "Camera_Left.output", "to": "Bayer2Mono_Left.input"}, ...],
///     "regions": [{"name": "Camera_Left_Landmark",
///                  "min": [-0.15, 0.10, 1.2], "max": [0.15, 0.40, 1.8]}],
///     "safety_mapping": {"R1": ["Protective Stop"], ...}
///   }
///
/// Without "components" the standard stereo pipeline is built; "connectors"
/// must then be absent too. A string calibration is a path relative to the
/// configuration file.
struct PipelineConfig {
  PipelineGraph graph;
  standards::RuleMapping mapping;
};

PipelineConfig parse_pipeline_config(std::string_view json_text,
                                     const std::filesystem::path& base_dir = std::filesystem::current_path());
PipelineConfig load_pipeline_config(const std::filesystem::path& path);

/// Synthetic input document (JSON): every SceneConfig field, optional
/// "faults" ([{"kind": "partial_cover", "target": "left", "fraction": 0.3}])
/// and "frames". Missing calibration falls back to `default_calib`.
struct SyntheticConfig {
  SceneConfig scene;
  std::vector<FaultSpec> faults;
  std::optional<int> frames;
};

SyntheticConfig parse_synthetic_config(std::string_view json_text, const CalibrationInfo& default_calib);
SyntheticConfig load_synthetic_config(const std::filesystem::path& path, const CalibrationInfo& default_calib);

}  // namespace saferules::config
