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

#include "saferules/standards.hpp"

#include <algorithm>
#include <sstream>

#include "saferules/error.hpp"

namespace saferules::standards {

SafetyFunctionTable::SafetyFunctionTable(std::vector<SafetyFunction> entries) : entries_(std::move(entries)) {}

const SafetyFunctionTable& SafetyFunctionTable::field_robot() {
  static const SafetyFunctionTable table({
      {"Emergency Stop", "", "d"},
      {"Protective Stop", "", "e"},
      {"Limits to workspace", "incl. forbidden area avoidance", "e"},
      {"safety-related speed control", "", "e"},
      {"safety-related force control", "", "N/A"},
      {"Hazardous collision avoidance", "", "e"},
      {"Stability Control", "incl. overload protection", "d"},
  });
  return table;
}

const SafetyFunction* SafetyFunctionTable::find(std::string_view name) const {
  for (const auto& e : entries_) {
    if (e.name == name || e.display_name() == name) return &e;
  }
  return nullptr;
}

std::string_view to_string(CoverageStatus status) {
  switch (status) {
    case CoverageStatus::Covered: return "COVERED";
    case CoverageStatus::Uncovered: return "UNCOVERED";
    case CoverageStatus::NotApplicable: return "N-A";
  }
  return "?";
}

CoverageReport coverage_report(const rules::CompiledRuleSet& rules, const RuleMapping& mapping,
                               const SafetyFunctionTable& table) {
  std::map<std::string, std::vector<std::string>> by_function;
  for (const auto& [rule_id, functions] : mapping) {
    if (!rules.find(rule_id)) throw UnknownRule(rule_id);
    for (const auto& fn : functions) {
      const SafetyFunction* entry = table.find(fn);
      if (!entry) throw UnknownFunction(fn);
      by_function[entry->name].push_back(rule_id);
    }
  }

  CoverageReport report;
  for (const auto& entry : table.entries()) {
    CoverageRow row{entry, {}, CoverageStatus::Uncovered};
    // Keep source order (R1, R2, ..., R10) rather than lexical order.
    for (const auto& rule : rules.rules) {
      const auto& mapped = by_function[entry.name];
      if (std::find(mapped.begin(), mapped.end(), rule.id) != mapped.end()) row.rules.push_back(rule.id);
    }
    if (entry.level == "N/A") {
      row.status = CoverageStatus::NotApplicable;
    } else if (!row.rules.empty()) {
      row.status = CoverageStatus::Covered;
    }
    report.rows.push_back(std::move(row));
  }
  for (const auto& rule : rules.rules) {
    auto it = mapping.find(rule.id);
    if (it == mapping.end() || it->second.empty()) report.unmapped_rules.push_back(rule.id);
  }
  return report;
}

namespace {

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += sep;
    out += s;
  }
  return out;
}

}  // namespace

std::string CoverageReport::to_text() const {
  std::ostringstream os;
  os << "Safety function coverage for a field robot\n";
  os << "Rows state which runtime rules monitor each function; they are not a compliance statement.\n\n";
  std::size_t width = 0;
  for (const auto& row : rows) width = std::max(width, row.function.display_name().size());
  for (const auto& row : rows) {
    const auto name = row.function.display_name();
    os << name << std::string(width - name.size() + 2, ' ') << "PL " << row.function.level;
    os << std::string(row.function.level.size() < 3 ? 4 - row.function.level.size() : 1, ' ');
    os << to_string(row.status);
    if (!row.rules.empty()) os << "  monitored by " << join(row.rules, ", ");
    os << "\n";
  }
  os << "\nUnmapped rules: " << (unmapped_rules.empty() ? "none" : join(unmapped_rules, ", ")) << "\n";
  return os.str();
}

std::string CoverageReport::to_records() const {
  std::ostringstream os;
  for (const auto& row : rows) {
    os << "FUNCTION\t" << row.function.display_name() << '\t' << row.function.level << '\t' << to_string(row.status)
       << '\t' << (row.rules.empty() ? "-" : join(row.rules, ",")) << '\n';
  }
  for (const auto& r : unmapped_rules) os << "UNMAPPED\t" << r << '\n';
  return os.str();
}

}  // namespace saferules::standards
