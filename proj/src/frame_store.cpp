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

#include "saferules/frame_store.hpp"

#include "saferules/error.hpp"
#include "saferules/kernels.hpp"

namespace saferules {

PortType type_of(const PortValue& value) {
  switch (value.index()) {
    case 0: return PortType::RawImage;
    case 1: return PortType::MonoImage;
    case 2: return PortType::DisparityImage;
    default: return PortType::PointCloud;
  }
}

FrameStore::FrameStore(const PipelineGraph& graph, std::int64_t frame_id) : frame_id_(frame_id) {
  for (const auto& c : graph.components()) {
    for (const auto& p : c.outputs) declared_.emplace(Endpoint{c.name, p.name}, p.type);
  }
}

FrameStore::FrameStore(const FrameStore& other)
    : frame_id_(other.frame_id_), declared_(other.declared_), values_(other.values_), sealed_(other.sealed_) {
  std::lock_guard lock(other.cache_mutex_);
  histograms_ = other.histograms_;
}

void FrameStore::put(std::string_view component, std::string_view port, PortValue value) {
  const Endpoint key{std::string(component), std::string(port)};
  if (sealed_) throw InvalidArgument("frame " + std::to_string(frame_id_) + " is sealed");
  auto decl = declared_.find(key);
  if (decl == declared_.end()) throw GraphError("UnknownEndpoint", "no output port " + to_string(key));
  if (decl->second != type_of(value)) {
    throw InvalidArgument("port " + to_string(key) + " expects " + std::string(to_string(decl->second)));
  }
  if (!values_.emplace(key, std::move(value)).second) {
    throw InvalidArgument("port " + to_string(key) + " already written in frame " + std::to_string(frame_id_));
  }
}

const PortValue& FrameStore::tap(std::string_view component, std::string_view port) const {
  const Endpoint key{std::string(component), std::string(port)};
  if (!declared_.count(key)) throw GraphError("UnknownEndpoint", "no output port " + to_string(key));
  auto it = values_.find(key);
  if (it == values_.end()) throw MissingValue(key.component, key.port);
  return it->second;
}

std::shared_ptr<const Histogram> FrameStore::histogram(std::string_view component, std::string_view port) const {
  const PortValue& value = tap(component, port);
  const Endpoint key{std::string(component), std::string(port)};
  std::lock_guard lock(cache_mutex_);
  if (auto it = histograms_.find(key); it != histograms_.end()) return it->second;

  std::shared_ptr<const Histogram> h;
  if (const auto* mono = std::get_if<std::shared_ptr<const MonoImage>>(&value)) {
    h = std::make_shared<const Histogram>(kernels::histogram(**mono));
  } else if (const auto* raw = std::get_if<std::shared_ptr<const RawImage>>(&value)) {
    h = std::make_shared<const Histogram>(kernels::histogram(**raw));
  } else {
    throw InvalidArgument("port " + to_string(key) + " does not hold an image");
  }
  ++histogram_computations_;
  histograms_.emplace(key, h);
  return h;
}

bool FrameStore::same_values(const FrameStore& other) const {
  if (values_.size() != other.values_.size()) return false;
  for (const auto& [key, value] : values_) {
    auto it = other.values_.find(key);
    if (it == other.values_.end() || it->second.index() != value.index()) return false;
    const bool equal = std::visit(
        [&](const auto& lhs) {
          using Ptr = std::decay_t<decltype(lhs)>;
          return *lhs == *std::get<Ptr>(it->second);
        },
        value);
    if (!equal) return false;
  }
  return true;
}

}  // namespace saferules
