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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "saferules/monitor.hpp"

namespace saferules {

/// Append-only, tab-separated audit trail. Record layouts:
///
///   VERDICT  <frame> <rule> <PASS|FAIL|ERROR> <operands> <message> <timestamp>
///   DECISION <frame> <CONTINUE|PROTECTIVE_STOP> <trips> <timestamp>
///   RESET    <frame> <timestamp>
///
/// `operands` is `label=value` pairs joined by `;` (values exact, `n` or
/// `n/d`), `trips` is `frame:rule` pairs joined by `,`; an empty list is `-`.
/// Timestamps are ISO-8601 UTC, or `-` when disabled. ERROR verdict messages
/// start with the error name.
class AuditLog {
 public:
  AuditLog(std::ostream& sink, bool timestamps);

  /// One VERDICT line per verdict, in order, then one DECISION line. Throws
  /// IoError if the sink fails.
  void append(std::int64_t frame_id, const std::vector<Verdict>& verdicts, const PipelineDecision& decision);
  void append_reset(std::int64_t frame_id);

 private:
  void flush_checked();

  std::ostream& sink_;
  bool timestamps_;
};

std::string iso8601_now();

struct AuditRecord {
  enum class Kind { Verdict, Decision, Reset };

  Kind kind = Kind::Verdict;
  std::int64_t frame_id = 0;
  std::optional<Verdict> verdict;
  std::optional<PipelineDecision> decision;
  std::string timestamp;
};

/// Parses a log written by AuditLog. Throws InvalidArgument on malformed lines.
std::vector<AuditRecord> parse_audit_log(std::istream& in);

}  // namespace saferules
