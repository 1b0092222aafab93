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
#include <string>
#include <string_view>
#include <vector>

#include "saferules/frame_store.hpp"
#include "saferules/image.hpp"
#include "saferules/pipeline.hpp"
#include "saferules/rational.hpp"
#include "saferules/rules/compiler.hpp"

namespace saferules {

enum class Outcome { Pass, Fail, Error };

std::string_view to_string(Outcome outcome);
Outcome parse_outcome(std::string_view text);

struct Operand {
  std::string label;
  Rational value;

  friend bool operator==(const Operand&, const Operand&) = default;
};

struct Verdict {
  std::string rule_id;
  std::int64_t frame_id = 0;
  Outcome outcome = Outcome::Error;
  /// The comparison operands that could be evaluated, left then right.
  std::vector<Operand> evaluated;
  std::string message;
  /// Name of the causing error for ERROR verdicts, empty otherwise.
  std::string error;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

enum class GateState { Continue, ProtectiveStop };

std::string_view to_string(GateState state);
GateState parse_gate_state(std::string_view text);

struct Trip {
  std::int64_t frame_id = 0;
  std::string rule_id;

  friend bool operator==(const Trip&, const Trip&) = default;
};

/// Latched decision: once PROTECTIVE_STOP is entered only `reset` leaves it.
struct PipelineDecision {
  GateState state = GateState::Continue;
  std::vector<Trip> tripped_by;

  bool stopped() const { return state == GateState::ProtectiveStop; }

  friend bool operator==(const PipelineDecision&, const PipelineDecision&) = default;
};

/// Runs every component in topological order and returns the sealed store.
/// Throws DimensionMismatch (or the failing kernel's error) without producing
/// a partial store.
FrameStore run_frame(const PipelineGraph& graph, const RawImage& left, const RawImage& right, std::int64_t frame_id);

/// One verdict per rule in rule-id order. Assigned subexpressions are
/// evaluated once and shared; an evaluation error only affects the rules
/// depending on it. The store is not modified beyond its histogram cache.
std::vector<Verdict> evaluate(const rules::CompiledRuleSet& rules, const FrameStore& store);

/// Any FAIL or ERROR latches PROTECTIVE_STOP and records the tripping rules.
PipelineDecision gate(const std::vector<Verdict>& verdicts, PipelineDecision decision);

/// Explicit operator reset.
PipelineDecision reset(const PipelineDecision& decision);

}  // namespace saferules
