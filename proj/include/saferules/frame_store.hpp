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

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <variant>

#include "saferules/error.hpp"
#include "saferules/image.hpp"
#include "saferules/pipeline.hpp"

namespace saferules {

using PortValue = std::variant<std::shared_ptr<const RawImage>, std::shared_ptr<const MonoImage>,
                               std::shared_ptr<const DisparityImage>, std::shared_ptr<const PointCloud>>;

PortType type_of(const PortValue& value);

/// Typed values produced at every output port for one frame.
///
/// A store is written by exactly one executor and then sealed; after that it
/// can be read from any number of threads. Histograms of image ports are
/// derived lazily and cached for the lifetime of the store.
class FrameStore {
 public:
  FrameStore(const PipelineGraph& graph, std::int64_t frame_id);

  FrameStore(const FrameStore& other);
  FrameStore& operator=(const FrameStore&) = delete;

  std::int64_t frame_id() const { return frame_id_; }
  bool sealed() const { return sealed_; }
  std::size_t size() const { return values_.size(); }

  /// Throws GraphError for undeclared ports, InvalidArgument for a value of
  /// the wrong type or a repeated write, and once the store is sealed.
  void put(std::string_view component, std::string_view port, PortValue value);
  void seal() { sealed_ = true; }

  /// Throws MissingValue if the port has not been written this frame.
  const PortValue& tap(std::string_view component, std::string_view port) const;

  template <typename T>
  const T& get(std::string_view component, std::string_view port) const {
    const auto* held = std::get_if<std::shared_ptr<const T>>(&tap(component, port));
    if (!held) throw InvalidArgument("port " + std::string(component) + "." + std::string(port) + " has another type");
    return **held;
  }

  /// Histogram of a RawImage or MonoImage port, computed on first request.
  std::shared_ptr<const Histogram> histogram(std::string_view component, std::string_view port) const;

  /// Number of histograms actually computed (cache misses).
  std::size_t histogram_computations() const { return histogram_computations_.load(); }

  /// Bit-exact comparison of stored port values.
  bool same_values(const FrameStore& other) const;

 private:
  std::int64_t frame_id_;
  std::map<Endpoint, PortType> declared_;
  std::map<Endpoint, PortValue> values_;
  bool sealed_ = false;

  mutable std::mutex cache_mutex_;
  mutable std::map<Endpoint, std::shared_ptr<const Histogram>> histograms_;
  mutable std::atomic<std::size_t> histogram_computations_{0};
};

}  // namespace saferules
