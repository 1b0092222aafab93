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

#include "saferules/monitor.hpp"

#include <optional>
#include <variant>

#include "saferules/error.hpp"
#include "saferules/kernels.hpp"

namespace saferules {

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Pass: return "PASS";
    case Outcome::Fail: return "FAIL";
    case Outcome::Error: return "ERROR";
  }
  return "?";
}

Outcome parse_outcome(std::string_view text) {
  for (auto o : {Outcome::Pass, Outcome::Fail, Outcome::Error}) {
    if (to_string(o) == text) return o;
  }
  throw InvalidArgument("unknown outcome '" + std::string(text) + "'");
}

std::string_view to_string(GateState state) {
  return state == GateState::Continue ? "CONTINUE" : "PROTECTIVE_STOP";
}

GateState parse_gate_state(std::string_view text) {
  if (text == "CONTINUE") return GateState::Continue;
  if (text == "PROTECTIVE_STOP") return GateState::ProtectiveStop;
  throw InvalidArgument("unknown gate state '" + std::string(text) + "'");
}

FrameStore run_frame(const PipelineGraph& graph, const RawImage& left, const RawImage& right,
                     std::int64_t frame_id) {
  left.validate();
  right.validate();
  if (left.width != right.width || left.height != right.height || left.bit_depth != right.bit_depth) {
    throw DimensionMismatch("left and right frames differ: " + std::to_string(left.width) + "x" +
                            std::to_string(left.height) + " vs " + std::to_string(right.width) + "x" +
                            std::to_string(right.height));
  }

  FrameStore store(graph, frame_id);
  const std::string out(kOutputPort);
  auto input = [&](const Component& c, std::string_view port) -> const PortValue& {
    const Connector& conn = graph.source_of(c.name, port);
    return store.tap(conn.from.component, conn.from.port);
  };
  auto mono = [&](const Component& c, std::string_view port) -> const MonoImage& {
    return *std::get<std::shared_ptr<const MonoImage>>(input(c, port));
  };

  for (const auto& name : graph.topological_order()) {
    const Component& c = *graph.find(name);
    switch (c.kind) {
      case ComponentKind::Camera:
        store.put(c.name, out, std::make_shared<const RawImage>(c.side == CameraSide::Left ? left : right));
        break;
      case ComponentKind::Debayer: {
        const auto& raw = *std::get<std::shared_ptr<const RawImage>>(input(c, "input"));
        store.put(c.name, out, std::make_shared<const MonoImage>(kernels::debayer_to_mono(raw)));
        break;
      }
      case ComponentKind::Rectify:
        store.put(c.name, out,
                  std::make_shared<const MonoImage>(kernels::rectify(mono(c, "input"), graph.calibration())));
        break;
      case ComponentKind::Disparity:
        store.put(c.name, out,
                  std::make_shared<const DisparityImage>(
                      kernels::disparity(mono(c, "left"), mono(c, "right"), c.block_size, c.max_disparity)));
        break;
      case ComponentKind::PointCloud: {
        const auto& disp = *std::get<std::shared_ptr<const DisparityImage>>(input(c, "disparity"));
        const MonoImage& reference = mono(c, "reference");
        if (reference.width != disp.width || reference.height != disp.height) {
          throw DimensionMismatch("reference view does not match the disparity map");
        }
        store.put(c.name, out, std::make_shared<const PointCloud>(kernels::reproject(disp, graph.calibration())));
        break;
      }
    }
  }
  store.seal();
  return store;
}

namespace {

using Series = std::shared_ptr<const std::vector<std::uint64_t>>;
using Value = std::variant<Rational, bool, PortValue, std::shared_ptr<const Histogram>, Series,
                           std::shared_ptr<const PointCloud>, const Region*>;

struct Slot {
  bool done = false;
  std::optional<Value> value;
  std::string error;
  std::string message;
};

class Evaluator {
 public:
  Evaluator(const rules::CompiledRuleSet& rules, const FrameStore& store)
      : rules_(rules), store_(store), slots_(rules.nodes.size()) {}

  Verdict verdict(const rules::CompiledRule& rule) {
    Verdict v;
    v.rule_id = rule.id;
    v.frame_id = store_.frame_id();
    const auto& root = rules_.nodes[rule.root];

    const Slot& result = eval(rule.root);
    const std::string labels[2] = {rule.lhs_label, rule.rhs_label};
    for (std::size_t k = 0; k < 2 && k < root.inputs.size(); ++k) {
      const Slot& operand = eval(root.inputs[k]);
      if (operand.value) {
        if (const auto* r = std::get_if<Rational>(&*operand.value)) v.evaluated.push_back({labels[k], *r});
      }
    }
    if (!result.value) {
      v.outcome = Outcome::Error;
      v.error = result.error;
      v.message = result.error + ": " + result.message;
      return v;
    }
    const bool holds = std::get<bool>(*result.value);
    v.outcome = holds ? Outcome::Pass : Outcome::Fail;
    std::string shown;
    if (v.evaluated.size() == 2) {
      shown = format_rational(v.evaluated[0].value) + " " + std::string(rules::to_string(rule.comparison)) + " " +
              format_rational(v.evaluated[1].value);
    }
    v.message = std::string(holds ? "holds: " : "violated: ") + rule.text + (shown.empty() ? "" : " [" + shown + "]");
    return v;
  }

 private:
  const Slot& eval(std::size_t index) {
    Slot& slot = slots_[index];
    if (slot.done) return slot;
    slot.done = true;
    const auto& node = rules_.nodes[index];
    for (auto in : node.inputs) {
      const Slot& arg = eval(in);
      if (!arg.value) {
        slot.error = arg.error;
        slot.message = arg.message;
        return slot;
      }
    }
    try {
      slot.value = compute(node);
    } catch (const Error& e) {
      slot.error = e.name();
      slot.message = e.what();
    } catch (const std::exception& e) {
      slot.error = "EvaluationError";
      slot.message = e.what();
    }
    return slot;
  }

  const Value& arg(const rules::PlanNode& node, std::size_t k) const { return *slots_[node.inputs[k]].value; }

  Rational scalar(const rules::PlanNode& node, std::size_t k) const { return std::get<Rational>(arg(node, k)); }

  std::shared_ptr<const Histogram> histogram_arg(const rules::PlanNode& node) const {
    return std::get<std::shared_ptr<const Histogram>>(arg(node, 0));
  }

  Value compute(const rules::PlanNode& node) {
    using rules::PlanOp;
    switch (node.op) {
      case PlanOp::Tap:
        return Value{store_.tap(node.tap.component, node.tap.port)};
      case PlanOp::RegionRef: {
        auto it = rules_.regions.find(node.region);
        if (it == rules_.regions.end()) throw UnknownIdentifier({}, node.region);
        return Value{&it->second};
      }
      case PlanOp::Constant:
        return Value{node.constant};
      case PlanOp::Histogram: {
        const auto& source = rules_.nodes[node.inputs[0]];
        if (source.op == PlanOp::Tap) return Value{store_.histogram(source.tap.component, source.tap.port)};
        const auto& port = std::get<PortValue>(arg(node, 0));
        if (const auto* m = std::get_if<std::shared_ptr<const MonoImage>>(&port)) {
          return Value{std::make_shared<const Histogram>(kernels::histogram(**m))};
        }
        return Value{std::make_shared<const Histogram>(kernels::histogram(*std::get<0>(port)))};
      }
      case PlanOp::Bins: {
        const auto h = histogram_arg(node);
        return Value{Series(h, &h->counts)};
      }
      case PlanOp::NonEmpty: {
        auto filtered = std::make_shared<std::vector<std::uint64_t>>();
        for (auto c : *std::get<Series>(arg(node, 0))) {
          if (c > 0) filtered->push_back(c);
        }
        return Value{Series(std::move(filtered))};
      }
      case PlanOp::Length: {
        const Value& v = arg(node, 0);
        if (const auto* s = std::get_if<Series>(&v)) return Value{Rational(static_cast<std::int64_t>((*s)->size()))};
        if (const auto* c = std::get_if<std::shared_ptr<const PointCloud>>(&v)) {
          return Value{Rational(static_cast<std::int64_t>((*c)->size()))};
        }
        const auto& port = std::get<PortValue>(v);
        return Value{Rational(static_cast<std::int64_t>(std::get<std::shared_ptr<const PointCloud>>(port)->size()))};
      }
      case PlanOp::MaxLevel:
      case PlanOp::MinLevel: {
        const auto h = histogram_arg(node);
        std::optional<std::int64_t> level;
        for (std::size_t i = 0; i < h->counts.size(); ++i) {
          if (h->counts[i] == 0) continue;
          if (!level || node.op == PlanOp::MaxLevel) level = static_cast<std::int64_t>(i);
          if (node.op == PlanOp::MinLevel) break;
        }
        if (!level) throw InvalidArgument("histogram has no occupied level");
        return Value{Rational(*level)};
      }
      case PlanOp::InArea: {
        const Value& v = arg(node, 0);
        std::shared_ptr<const PointCloud> cloud;
        if (const auto* c = std::get_if<std::shared_ptr<const PointCloud>>(&v)) {
          cloud = *c;
        } else {
          cloud = std::get<std::shared_ptr<const PointCloud>>(std::get<PortValue>(v));
        }
        const Region* region = std::get<const Region*>(arg(node, 1));
        return Value{std::make_shared<const PointCloud>(kernels::in_area(*cloud, *region))};
      }
      case PlanOp::Add: return Value{scalar(node, 0) + scalar(node, 1)};
      case PlanOp::Sub: return Value{scalar(node, 0) - scalar(node, 1)};
      case PlanOp::Mul: return Value{scalar(node, 0) * scalar(node, 1)};
      case PlanOp::Div: {
        const Rational rhs = scalar(node, 1);
        if (rhs == Rational(0)) throw Error("DivisionByZero", "division by zero");
        return Value{scalar(node, 0) / rhs};
      }
      case PlanOp::Greater: return Value{scalar(node, 0) > scalar(node, 1)};
      case PlanOp::Less: return Value{scalar(node, 0) < scalar(node, 1)};
      case PlanOp::GreaterEqual: return Value{scalar(node, 0) >= scalar(node, 1)};
      case PlanOp::LessEqual: return Value{scalar(node, 0) <= scalar(node, 1)};
      case PlanOp::Equal: return Value{scalar(node, 0) == scalar(node, 1)};
    }
    throw InvalidArgument("unhandled plan operation");
  }

  const rules::CompiledRuleSet& rules_;
  const FrameStore& store_;
  std::vector<Slot> slots_;
};

}  // namespace

std::vector<Verdict> evaluate(const rules::CompiledRuleSet& rules, const FrameStore& store) {
  if (!store.sealed()) throw InvalidArgument("frame " + std::to_string(store.frame_id()) + " is not sealed");
  Evaluator evaluator(rules, store);
  std::vector<Verdict> out;
  out.reserve(rules.rules.size());
  for (const auto& rule : rules.rules) out.push_back(evaluator.verdict(rule));
  return out;
}

PipelineDecision gate(const std::vector<Verdict>& verdicts, PipelineDecision decision) {
  for (const auto& v : verdicts) {
    if (v.outcome != Outcome::Pass) {
      decision.state = GateState::ProtectiveStop;
      decision.tripped_by.push_back({v.frame_id, v.rule_id});
    }
  }
  return decision;
}

PipelineDecision reset(const PipelineDecision&) { return PipelineDecision{}; }

}  // namespace saferules
