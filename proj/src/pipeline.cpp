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

#include "saferules/pipeline.hpp"

#include <algorithm>
#include <set>

#include "saferules/error.hpp"

namespace saferules {

std::string_view to_string(PortType type) {
  switch (type) {
    case PortType::RawImage: return "RawImage";
    case PortType::MonoImage: return "MonoImage";
    case PortType::DisparityImage: return "DisparityImage";
    case PortType::PointCloud: return "PointCloud";
  }
  return "?";
}

std::string_view to_string(ComponentKind kind) {
  switch (kind) {
    case ComponentKind::Camera: return "camera";
    case ComponentKind::Debayer: return "debayer";
    case ComponentKind::Rectify: return "rectify";
    case ComponentKind::Disparity: return "disparity";
    case ComponentKind::PointCloud: return "point_cloud";
  }
  return "?";
}

ComponentKind parse_component_kind(std::string_view text) {
  for (auto k : {ComponentKind::Camera, ComponentKind::Debayer, ComponentKind::Rectify, ComponentKind::Disparity,
                 ComponentKind::PointCloud}) {
    if (to_string(k) == text) return k;
  }
  throw InvalidArgument("unknown component kind '" + std::string(text) + "'");
}

std::string to_string(const Endpoint& endpoint) { return endpoint.component + "." + endpoint.port; }

const Port* Component::input(std::string_view port) const {
  auto it = std::find_if(inputs.begin(), inputs.end(), [&](const Port& p) { return p.name == port; });
  return it == inputs.end() ? nullptr : &*it;
}

const Port* Component::output(std::string_view port) const {
  auto it = std::find_if(outputs.begin(), outputs.end(), [&](const Port& p) { return p.name == port; });
  return it == outputs.end() ? nullptr : &*it;
}

Component make_component(std::string name, ComponentKind kind) {
  Component c;
  c.name = std::move(name);
  c.kind = kind;
  const std::string out(kOutputPort);
  switch (kind) {
    case ComponentKind::Camera:
      c.outputs = {{out, PortType::RawImage}};
      break;
    case ComponentKind::Debayer:
      c.inputs = {{"input", PortType::RawImage}};
      c.outputs = {{out, PortType::MonoImage}};
      break;
    case ComponentKind::Rectify:
      c.inputs = {{"input", PortType::MonoImage}};
      c.outputs = {{out, PortType::MonoImage}};
      break;
    case ComponentKind::Disparity:
      c.inputs = {{"left", PortType::MonoImage}, {"right", PortType::MonoImage}};
      c.outputs = {{out, PortType::DisparityImage}};
      break;
    case ComponentKind::PointCloud:
      c.inputs = {{"disparity", PortType::DisparityImage}, {"reference", PortType::MonoImage}};
      c.outputs = {{out, PortType::PointCloud}};
      break;
  }
  return c;
}

PipelineGraph::PipelineGraph(std::vector<Component> components, std::vector<Connector> connectors,
                             CalibrationInfo calib)
    : components_(std::move(components)), connectors_(std::move(connectors)), calib_(calib) {
  validate();
}

const Component* PipelineGraph::find(std::string_view component) const {
  auto it = std::find_if(components_.begin(), components_.end(),
                         [&](const Component& c) { return c.name == component; });
  return it == components_.end() ? nullptr : &*it;
}

const Region* PipelineGraph::find_region(std::string_view name) const {
  auto it = regions_.find(name);
  return it == regions_.end() ? nullptr : &it->second;
}

const Connector& PipelineGraph::source_of(std::string_view component, std::string_view port) const {
  auto it = std::find_if(connectors_.begin(), connectors_.end(), [&](const Connector& c) {
    return c.to.component == component && c.to.port == port;
  });
  if (it == connectors_.end()) {
    throw GraphError("UnconnectedInput", std::string(component) + "." + std::string(port) + " has no connector");
  }
  return *it;
}

void PipelineGraph::validate() {
  calib_.validate();
  std::set<std::string, std::less<>> names;
  for (const auto& c : components_) {
    if (c.name.empty()) throw GraphError("InvalidComponent", "component name must not be empty");
    if (!names.insert(c.name).second) throw GraphError("DuplicateComponent", "duplicate component '" + c.name + "'");
    std::set<std::string> ports;
    for (const auto& p : c.inputs) {
      if (!ports.insert(p.name).second) throw GraphError("DuplicatePort", "duplicate port " + c.name + "." + p.name);
    }
    for (const auto& p : c.outputs) {
      if (!ports.insert(p.name).second) throw GraphError("DuplicatePort", "duplicate port " + c.name + "." + p.name);
    }
    if (c.inputs.empty() && c.kind != ComponentKind::Camera) {
      throw GraphError("InvalidSource", "source component '" + c.name + "' is not a camera");
    }
    if (c.kind == ComponentKind::Camera) {
      if (!c.inputs.empty()) throw GraphError("InvalidSource", "camera '" + c.name + "' must not have inputs");
      if (!c.side) throw GraphError("InvalidSource", "camera '" + c.name + "' has no side (left/right)");
    }
  }

  std::map<Endpoint, int> drivers;
  for (const auto& conn : connectors_) {
    const Component* from = find(conn.from.component);
    const Component* to = find(conn.to.component);
    const Port* out = from ? from->output(conn.from.port) : nullptr;
    const Port* in = to ? to->input(conn.to.port) : nullptr;
    if (!out) throw GraphError("UnknownEndpoint", "no output port " + to_string(conn.from));
    if (!in) throw GraphError("UnknownEndpoint", "no input port " + to_string(conn.to));
    if (out->type != in->type) {
      throw GraphError("ConnectorTypeMismatch", to_string(conn.from) + " (" + std::string(to_string(out->type)) +
                                                    ") -> " + to_string(conn.to) + " (" +
                                                    std::string(to_string(in->type)) + ")");
    }
    if (++drivers[conn.to] > 1) throw GraphError("MultipleDrivers", to_string(conn.to) + " has several connectors");
  }
  for (const auto& c : components_) {
    for (const auto& p : c.inputs) {
      if (!drivers.count(Endpoint{c.name, p.name})) {
        throw GraphError("UnconnectedInput", c.name + "." + p.name + " has no connector");
      }
    }
  }

  // Kahn's algorithm, always taking the earliest-declared ready component.
  std::map<std::string, int, std::less<>> pending;
  for (const auto& c : components_) pending[c.name] = 0;
  for (const auto& conn : connectors_) ++pending[conn.to.component];
  order_.clear();
  std::vector<bool> done(components_.size(), false);
  while (order_.size() < components_.size()) {
    std::size_t next = components_.size();
    for (std::size_t i = 0; i < components_.size(); ++i) {
      if (!done[i] && pending[components_[i].name] == 0) {
        next = i;
        break;
      }
    }
    if (next == components_.size()) throw GraphError("CycleError", "pipeline graph contains a cycle");
    done[next] = true;
    order_.push_back(components_[next].name);
    for (const auto& conn : connectors_) {
      if (conn.from.component == components_[next].name) --pending[conn.to.component];
    }
  }
}

PipelineGraph PipelineGraph::with_region(Region region) const {
  if (regions_.count(region.name())) throw DuplicateRegion(region.name());
  PipelineGraph copy = *this;
  auto name = region.name();
  copy.regions_.emplace(std::move(name), std::move(region));
  return copy;
}

PipelineGraph build_stereo_pipeline(const CalibrationInfo& calib) {
  auto camera = [](std::string name, CameraSide side) {
    Component c = make_component(std::move(name), ComponentKind::Camera);
    c.side = side;
    return c;
  };
  std::vector<Component> components{
      camera("Camera_Left", CameraSide::Left),
      camera("Camera_Right", CameraSide::Right),
      make_component("Bayer2Mono_Left", ComponentKind::Debayer),
      make_component("Bayer2Mono_Right", ComponentKind::Debayer),
      make_component("Rectify_Left", ComponentKind::Rectify),
      make_component("Rectify_Right", ComponentKind::Rectify),
      make_component("DisparityMap", ComponentKind::Disparity),
      make_component("PointCloud_3D", ComponentKind::PointCloud),
  };
  const std::string out(kOutputPort);
  std::vector<Connector> connectors{
      {{"Camera_Left", out}, {"Bayer2Mono_Left", "input"}},
      {{"Camera_Right", out}, {"Bayer2Mono_Right", "input"}},
      {{"Bayer2Mono_Left", out}, {"Rectify_Left", "input"}},
      {{"Bayer2Mono_Right", out}, {"Rectify_Right", "input"}},
      {{"Rectify_Left", out}, {"DisparityMap", "left"}},
      {{"Rectify_Right", out}, {"DisparityMap", "right"}},
      {{"DisparityMap", out}, {"PointCloud_3D", "disparity"}},
      {{"Rectify_Left", out}, {"PointCloud_3D", "reference"}},
  };
  return PipelineGraph(std::move(components), std::move(connectors), calib);
}

PipelineGraph add_region(const PipelineGraph& graph, Region region) { return graph.with_region(std::move(region)); }

}  // namespace saferules
