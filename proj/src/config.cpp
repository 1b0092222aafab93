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

#include "saferules/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "saferules/error.hpp"

namespace saferules::config {

using nlohmann::json;

namespace {

std::string read_text(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("field '") + key + "' has the wrong type");
  }
}

const json& require(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
  return obj.at(key);
}

Point3 point(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) throw ConfigError(std::string(what) + " must be an array of three numbers");
  try {
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
  } catch (const json::exception&) {
    throw ConfigError(std::string(what) + " must be an array of three numbers");
  }
}

CalibrationInfo calibration(const json& j, const CalibrationInfo& fallback) {
  if (!j.is_object()) throw ConfigError("calibration must be an object");
  CalibrationInfo c;
  c.focal_length = get_or(j, "focal_length", fallback.focal_length);
  c.cx = get_or(j, "cx", fallback.cx);
  c.cy = get_or(j, "cy", fallback.cy);
  c.baseline = get_or(j, "baseline", fallback.baseline);
  c.radial_k1 = get_or(j, "radial_k1", fallback.radial_k1);
  try {
    c.validate();
  } catch (const Error& e) {
    throw ConfigError(std::string("calibration: ") + e.what());
  }
  return c;
}

Endpoint endpoint(const json& j) {
  const auto text = j.get<std::string>();
  const auto dot = text.find('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 == text.size()) {
    throw ConfigError("connector endpoint must be 'component.port', got '" + text + "'");
  }
  return {text.substr(0, dot), text.substr(dot + 1)};
}

std::vector<Component> components(const json& list) {
  std::vector<Component> out;
  for (const auto& j : list) {
    Component c;
    try {
      c = make_component(require(j, "name").get<std::string>(),
                         parse_component_kind(require(j, "kind").get<std::string>()));
    } catch (const json::exception&) {
      throw ConfigError("component name and kind must be strings");
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
    if (c.kind == ComponentKind::Camera) {
      const auto side = get_or<std::string>(j, "side", "");
      if (side == "left") {
        c.side = CameraSide::Left;
      } else if (side == "right") {
        c.side = CameraSide::Right;
      } else {
        throw ConfigError("camera '" + c.name + "' needs \"side\": \"left\" or \"right\"");
      }
    }
    c.block_size = get_or(j, "block_size", c.block_size);
    c.max_disparity = get_or(j, "max_disparity", c.max_disparity);
    out.push_back(std::move(c));
  }
  return out;
}

FaultSpec fault(const json& j) {
  FaultSpec f;
  const auto kind = get_or<std::string>(j, "kind", "");
  const auto target = get_or<std::string>(j, "target", "");
  try {
    f = parse_fault(kind + ":" + target);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  f.fraction = get_or(j, "fraction", f.fraction);
  f.gain = get_or(j, "gain", f.gain);
  f.offset = get_or(j, "offset", f.offset);
  f.seed = get_or(j, "seed", f.seed);
  try {
    f.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return f;
}

}  // namespace

PipelineConfig parse_pipeline_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  const json doc = parse_json(json_text);
  if (!doc.is_object()) throw ConfigError("pipeline configuration must be a JSON object");

  CalibrationInfo calib;
  if (doc.contains("calibration")) {
    const json& c = doc.at("calibration");
    calib = c.is_string() ? calibration(parse_json(read_text(base_dir / c.get<std::string>())), CalibrationInfo{})
                          : calibration(c, CalibrationInfo{});
  }

  try {
    std::optional<PipelineGraph> graph;
    if (doc.contains("components")) {
      std::vector<Connector> connectors;
      for (const auto& j : get_or(doc, "connectors", json::array())) {
        connectors.push_back({endpoint(require(j, "from")), endpoint(require(j, "to"))});
      }
      graph.emplace(components(doc.at("components")), std::move(connectors), calib);
    } else {
      if (doc.contains("connectors")) throw ConfigError("\"connectors\" given without \"components\"");
      graph.emplace(build_stereo_pipeline(calib));
    }

    for (const auto& j : get_or(doc, "regions", json::array())) {
      graph.emplace(graph->with_region(
          Region(require(j, "name").get<std::string>(), point(require(j, "min"), "region min"),
                 point(require(j, "max"), "region max"))));
    }

    standards::RuleMapping mapping;
    const json mapping_doc = get_or(doc, "safety_mapping", json::object());
    for (const auto& [rule, functions] : mapping_doc.items()) {
      auto& target = mapping[rule];
      for (const auto& fn : functions) target.insert(fn.get<std::string>());
    }
    return PipelineConfig{std::move(*graph), std::move(mapping)};
  } catch (const json::exception& e) {
    throw ConfigError(std::string("pipeline configuration: ") + e.what());
  }
}

PipelineConfig load_pipeline_config(const std::filesystem::path& path) {
  return parse_pipeline_config(read_text(path), path.parent_path());
}

SyntheticConfig parse_synthetic_config(std::string_view json_text, const CalibrationInfo& default_calib) {
  const json doc = parse_json(json_text);
  if (!doc.is_object()) throw ConfigError("synthetic configuration must be a JSON object");
  SyntheticConfig out;
  SceneConfig& s = out.scene;
  try {
    s.width = get_or(doc, "width", s.width);
    s.height = get_or(doc, "height", s.height);
    s.bit_depth = get_or(doc, "bit_depth", s.bit_depth);
    s.pattern = parse_bayer_pattern(get_or<std::string>(doc, "bayer_pattern", "RGGB"));
    s.calib = doc.contains("calibration") ? calibration(doc.at("calibration"), default_calib) : default_calib;
    s.camera_height = get_or(doc, "camera_height", s.camera_height);
    s.backdrop_depth = get_or(doc, "backdrop_depth", s.backdrop_depth);
    s.seed = get_or(doc, "seed", s.seed);
    s.noise_amplitude = get_or(doc, "noise_amplitude", s.noise_amplitude);
    if (doc.contains("landmark")) {
      const json& lm = doc.at("landmark");
      s.landmark.present = get_or(lm, "present", s.landmark.present);
      s.landmark.side = get_or(lm, "side", s.landmark.side);
      if (lm.contains("center")) s.landmark.center = point(lm.at("center"), "landmark center");
      s.landmark.cross_arm_width = get_or(lm, "cross_arm_width", s.landmark.cross_arm_width);
    }
    for (const auto& j : get_or(doc, "faults", json::array())) out.faults.push_back(fault(j));
    if (doc.contains("frames")) out.frames = doc.at("frames").get<int>();
    s.validate();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("synthetic configuration: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("synthetic configuration: ") + e.what());
  }
  return out;
}

SyntheticConfig load_synthetic_config(const std::filesystem::path& path, const CalibrationInfo& default_calib) {
  return parse_synthetic_config(read_text(path), default_calib);
}

}  // namespace saferules::config
