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
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "saferules/rules/compiler.hpp"

namespace saferules::standards {

struct SafetyFunction {
  std::string name;
  std::string qualifier;  // parenthetical scope note, may be empty
  std::string level;      // "a".."e" or "N/A"

  std::string display_name() const { return qualifier.empty() ? name : name + " (" + qualifier + ")"; }

  friend bool operator==(const SafetyFunction&, const SafetyFunction&) = default;
};

/// Required performance levels for a type 3.2 field robot.
class SafetyFunctionTable {
 public:
  static const SafetyFunctionTable& field_robot();

  const std::vector<SafetyFunction>& entries() const { return entries_; }
  /// Matches either the bare name or the display name.
  const SafetyFunction* find(std::string_view name) const;

 private:
  explicit SafetyFunctionTable(std::vector<SafetyFunction> entries);
  std::vector<SafetyFunction> entries_;
};

/// rule id -> names of the safety functions the rule monitors.
using RuleMapping = std::map<std::string, std::set<std::string>>;

enum class CoverageStatus { Covered, Uncovered, NotApplicable };

std::string_view to_string(CoverageStatus status);

struct CoverageRow {
  SafetyFunction function;
  std::vector<std::string> rules;
  CoverageStatus status;
};

struct CoverageReport {
  std::vector<CoverageRow> rows;
  std::vector<std::string> unmapped_rules;

  /// Human-readable report. States which rules monitor each function; says
  /// nothing about certification.
  std::string to_text() const;
  /// Tab-separated records:
  ///   FUNCTION <name> <level> <COVERED|UNCOVERED|N-A> <rules, comma-joined or ->
  ///   UNMAPPED <rule>
  std::string to_records() const;
};

/// Throws UnknownRule or UnknownFunction for mapping entries that name
/// nothing in `rules` or `table`.
CoverageReport coverage_report(const rules::CompiledRuleSet& rules, const RuleMapping& mapping,
                               const SafetyFunctionTable& table = SafetyFunctionTable::field_robot());

}  // namespace saferules::standards
