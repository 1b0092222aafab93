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

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "saferules/pipeline.hpp"
#include "saferules/rational.hpp"
#include "saferules/rules/ast.hpp"
#include "saferules/rules/types.hpp"

namespace saferules::rules {

enum class PlanOp {
  Tap,        // leaf: stored value at (component, port)
  RegionRef,  // leaf: registered region
  Constant,   // leaf: literal
  Histogram,
  Bins,
  NonEmpty,
  Length,
  MaxLevel,
  MinLevel,
  InArea,
  Add,
  Sub,
  Mul,
  Div,
  Greater,
  Less,
  GreaterEqual,
  LessEqual,
  Equal,
};

std::string_view to_string(PlanOp op);

/// One operation of the evaluation DAG. Inputs always refer to nodes with a
/// smaller index, so the node vector is a topological order.
struct PlanNode {
  PlanOp op;
  SemanticType type;
  std::vector<std::size_t> inputs;
  Endpoint tap;        // Tap
  std::string region;  // RegionRef
  Rational constant;   // Constant

  friend bool operator==(const PlanNode&, const PlanNode&) = default;
};

struct CompiledRule {
  std::string id;  // "R1", "R2", ... in source order
  std::size_t root;
  BinaryOp comparison;
  std::string lhs_label;
  std::string rhs_label;
  std::string text;  // canonical statement text
  SourceSpan span;

  friend bool operator==(const CompiledRule& a, const CompiledRule& b) {
    return a.id == b.id && a.root == b.root && a.comparison == b.comparison && a.lhs_label == b.lhs_label &&
           a.rhs_label == b.rhs_label && a.text == b.text && a.span.begin == b.span.begin &&
           a.span.end == b.span.end;
  }
};

/// Type-checked rules bound to one pipeline graph. Assignments become shared
/// DAG nodes, so a value used by several rules is computed once per frame.
struct CompiledRuleSet {
  std::vector<PlanNode> nodes;
  std::vector<CompiledRule> rules;
  /// Regions referenced by the rules, copied from the graph.
  std::map<std::string, Region, std::less<>> regions;

  const CompiledRule* find(std::string_view rule_id) const;
  std::map<std::string, SourceSpan> source_map() const;

  /// Throws GraphError if a tap is missing from `graph`, or InvalidArgument if
  /// the plan is not a DAG in index order.
  void validate(const PipelineGraph& graph) const;

  /// Stable textual listing of the plan, one node per line.
  std::string dump() const;

  friend bool operator==(const CompiledRuleSet&, const CompiledRuleSet&) = default;
};

/// Binds every identifier and builtin and type-checks each statement.
/// Throws UnknownIdentifier, TypeMismatch or AmbiguousOutput.
CompiledRuleSet resolve(const RuleSet& rules, const PipelineGraph& graph);

/// tokenize + parse + resolve.
CompiledRuleSet compile(std::string_view source, const PipelineGraph& graph);

}  // namespace saferules::rules
