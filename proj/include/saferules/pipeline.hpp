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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "saferules/image.hpp"

namespace saferules {

enum class PortType { RawImage, MonoImage, DisparityImage, PointCloud };

std::string_view to_string(PortType type);

enum class ComponentKind { Camera, Debayer, Rectify, Disparity, PointCloud };

std::string_view to_string(ComponentKind kind);
ComponentKind parse_component_kind(std::string_view text);

enum class CameraSide { Left, Right };

struct Port {
  std::string name;
  PortType type;

  friend bool operator==(const Port&, const Port&) = default;
};

struct Component {
  std::string name;
  ComponentKind kind;
  std::vector<Port> inputs;
  std::vector<Port> outputs;
  std::optional<CameraSide> side;  // cameras only
  int block_size = 5;              // disparity only
  int max_disparity = 32;          // disparity only

  const Port* input(std::string_view port) const;
  const Port* output(std::string_view port) const;

  friend bool operator==(const Component&, const Component&) = default;
};

/// The DSL's `.output` accessor selects the port with this name.
inline constexpr std::string_view kOutputPort = "output";

/// Component with the canonical ports of its kind.
Component make_component(std::string name, ComponentKind kind);

struct Endpoint {
  std::string component;
  std::string port;

  friend auto operator<=>(const Endpoint&, const Endpoint&) = default;
};

std::string to_string(const Endpoint& endpoint);

struct Connector {
  Endpoint from;
  Endpoint to;

  friend bool operator==(const Connector&, const Connector&) = default;
};

/// Dataflow graph of named components, their connectors and the named
/// regions rules may refer to. Instances are immutable once built; the
/// modifying helpers return new graphs.
class PipelineGraph {
 public:
  /// Validates and takes ownership. Throws GraphError when the components do
  /// not form a well-typed DAG whose sources are cameras.
  PipelineGraph(std::vector<Component> components, std::vector<Connector> connectors, CalibrationInfo calib);

  const std::vector<Component>& components() const { return components_; }
  const std::vector<Connector>& connectors() const { return connectors_; }
  const std::map<std::string, Region, std::less<>>& regions() const { return regions_; }
  const CalibrationInfo& calibration() const { return calib_; }

  const Component* find(std::string_view component) const;
  const Region* find_region(std::string_view name) const;
  /// Connector feeding the given input port.
  const Connector& source_of(std::string_view component, std::string_view port) const;

  /// Components sorted so every producer precedes its consumers; ties keep
  /// declaration order.
  const std::vector<std::string>& topological_order() const { return order_; }

  /// Copy of this graph with one more region. Throws DuplicateRegion.
  PipelineGraph with_region(Region region) const;

  friend bool operator==(const PipelineGraph&, const PipelineGraph&) = default;

 private:
  void validate();

  std::vector<Component> components_;
  std::vector<Connector> connectors_;
  std::map<std::string, Region, std::less<>> regions_;
  CalibrationInfo calib_;
  std::vector<std::string> order_;
};

/// The two-camera RAW -> mono -> rectified -> disparity -> point cloud
/// pipeline. The left rectified view also feeds the point-cloud stage as the
/// reference frame of the reconstructed points.
PipelineGraph build_stereo_pipeline(const CalibrationInfo& calib);

PipelineGraph add_region(const PipelineGraph& graph, Region region);

}  // namespace saferules
