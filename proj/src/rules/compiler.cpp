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

#include "saferules/rules/compiler.hpp"

#include <optional>
#include <sstream>

#include "saferules/rules/parser.hpp"

namespace saferules::rules {

std::string to_string(Dimension dim) {
  switch (dim) {
    case Dimension::None: return "dimensionless";
    case Dimension::Count: return "count";
    case Dimension::Level: return "level";
    case Dimension::Ratio: return "ratio";
    case Dimension::Pixel: return "pixel";
  }
  return "?";
}

std::string to_string(const SemanticType& type) {
  switch (type.kind) {
    case TypeKind::RawImage: return "RawImage";
    case TypeKind::MonoImage: return "MonoImage";
    case TypeKind::DisparityImage: return "DisparityImage";
    case TypeKind::Histogram: return "Histogram";
    case TypeKind::Series: return "Series(count)";
    case TypeKind::PointCloud: return "PointCloud";
    case TypeKind::Region: return "Region";
    case TypeKind::Scalar: return "Scalar(" + to_string(type.dim) + ")";
    case TypeKind::Boolean: return "Boolean";
  }
  return "?";
}

std::optional<Dimension> unify(Dimension a, Dimension b) {
  if (a == b) return a;
  if (a == Dimension::None) return b;
  if (b == Dimension::None) return a;
  if (a == Dimension::Pixel && (b == Dimension::Count || b == Dimension::Level)) return b;
  if (b == Dimension::Pixel && (a == Dimension::Count || a == Dimension::Level)) return a;
  return std::nullopt;
}

std::string_view to_string(PlanOp op) {
  switch (op) {
    case PlanOp::Tap: return "tap";
    case PlanOp::RegionRef: return "region";
    case PlanOp::Constant: return "const";
    case PlanOp::Histogram: return "histogram";
    case PlanOp::Bins: return "bins";
    case PlanOp::NonEmpty: return "nonempty";
    case PlanOp::Length: return "length";
    case PlanOp::MaxLevel: return "max";
    case PlanOp::MinLevel: return "min";
    case PlanOp::InArea: return "inArea";
    case PlanOp::Add: return "+";
    case PlanOp::Sub: return "-";
    case PlanOp::Mul: return "*";
    case PlanOp::Div: return "/";
    case PlanOp::Greater: return ">";
    case PlanOp::Less: return "<";
    case PlanOp::GreaterEqual: return ">=";
    case PlanOp::LessEqual: return "<=";
    case PlanOp::Equal: return "==";
  }
  return "?";
}

const CompiledRule* CompiledRuleSet::find(std::string_view rule_id) const {
  for (const auto& r : rules) {
    if (r.id == rule_id) return &r;
  }
  return nullptr;
}

std::map<std::string, SourceSpan> CompiledRuleSet::source_map() const {
  std::map<std::string, SourceSpan> out;
  for (const auto& r : rules) out.emplace(r.id, r.span);
  return out;
}

void CompiledRuleSet::validate(const PipelineGraph& graph) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (auto in : nodes[i].inputs) {
      if (in >= i) throw InvalidArgument("plan node " + std::to_string(i) + " is not in topological order");
    }
    if (nodes[i].op == PlanOp::Tap) {
      const Component* c = graph.find(nodes[i].tap.component);
      if (!c || !c->output(nodes[i].tap.port)) {
        throw GraphError("UnknownEndpoint", "plan taps missing port " + to_string(nodes[i].tap));
      }
    }
  }
  for (const auto& r : rules) {
    if (r.root >= nodes.size()) throw InvalidArgument("rule " + r.id + " has no plan root");
  }
}

std::string CompiledRuleSet::dump() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    os << "%" << i << " = " << to_string(n.op);
    if (n.op == PlanOp::Tap) os << " " << to_string(n.tap);
    if (n.op == PlanOp::RegionRef) os << " " << n.region;
    if (n.op == PlanOp::Constant) os << " " << format_rational(n.constant);
    for (auto in : n.inputs) os << " %" << in;
    os << " : " << to_string(n.type) << "\n";
  }
  for (const auto& r : rules) os << r.id << " -> %" << r.root << "  " << r.text << "\n";
  return os.str();
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Either a plan node or a bare component name awaiting a port selection.
struct Resolved {
  std::optional<std::size_t> node;
  const Component* component = nullptr;
};

TypeKind kind_of(PortType type) {
  switch (type) {
    case PortType::RawImage: return TypeKind::RawImage;
    case PortType::MonoImage: return TypeKind::MonoImage;
    case PortType::DisparityImage: return TypeKind::DisparityImage;
    case PortType::PointCloud: return TypeKind::PointCloud;
  }
  return TypeKind::RawImage;
}

PlanOp plan_op(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return PlanOp::Add;
    case BinaryOp::Sub: return PlanOp::Sub;
    case BinaryOp::Mul: return PlanOp::Mul;
    case BinaryOp::Div: return PlanOp::Div;
    case BinaryOp::Greater: return PlanOp::Greater;
    case BinaryOp::Less: return PlanOp::Less;
    case BinaryOp::GreaterEqual: return PlanOp::GreaterEqual;
    case BinaryOp::LessEqual: return PlanOp::LessEqual;
    case BinaryOp::Equal: return PlanOp::Equal;
  }
  return PlanOp::Add;
}

class Resolver {
 public:
  explicit Resolver(const PipelineGraph& graph) : graph_(graph) {}

  CompiledRuleSet run(const RuleSet& rules) {
    for (const auto& stmt : rules.statements) {
      if (const auto* a = std::get_if<Assign>(&stmt.body)) {
        bindings_.insert_or_assign(a->name, resolve(*a->value));
        assigned_.insert_or_assign(a->name, a->value);
        continue;
      }
      const Expr& cond = *std::get<Assert>(stmt.body).condition;
      const std::size_t root = value(cond);
      if (out_.nodes[root].type.kind != TypeKind::Boolean) {
        throw TypeMismatch(cond.position, "Boolean", to_string(out_.nodes[root].type));
      }
      const Expr* shown = &cond;
      while (const auto* id = std::get_if<Ident>(&shown->node)) shown = assigned_.at(id->name).get();
      const auto& cmp = std::get<Binary>(shown->node);
      CompiledRule rule;
      rule.id = "R" + std::to_string(out_.rules.size() + 1);
      rule.root = root;
      rule.comparison = cmp.op;
      rule.lhs_label = print(*cmp.lhs);
      rule.rhs_label = print(*cmp.rhs);
      rule.text = print(stmt);
      rule.span = stmt.span;
      out_.rules.push_back(std::move(rule));
    }
    out_.validate(graph_);
    return std::move(out_);
  }

 private:
  std::size_t add(PlanNode node) {
    for (std::size_t i = 0; i < out_.nodes.size(); ++i) {
      if (out_.nodes[i] == node) return i;
    }
    out_.nodes.push_back(std::move(node));
    return out_.nodes.size() - 1;
  }

  const SemanticType& type_of(std::size_t node) const { return out_.nodes[node].type; }

  std::size_t value(const Expr& e) {
    Resolved r = resolve(e);
    if (r.component) throw TypeMismatch(e.position, "a value", "component '" + r.component->name + "'");
    return *r.node;
  }

  Resolved resolve(const Expr& e) {
    return std::visit(overloaded{
                          [&](const Ident& x) { return resolve_ident(x, e.position); },
                          [&](const Member& x) { return resolve_member(x, e.position); },
                          [&](const Call& x) { return resolve_call(x, e.position); },
                          [&](const Binary& x) { return Resolved{resolve_binary(x, e.position)}; },
                          [&](const Number& x) {
                            PlanNode n{PlanOp::Constant,
                                       SemanticType::scalar(x.unit == Unit::Pixel ? Dimension::Pixel : Dimension::None),
                                       {}, {}, {}, x.value};
                            return Resolved{add(std::move(n))};
                          },
                      },
                      e.node);
  }

  Resolved resolve_ident(const Ident& x, SourcePosition pos) {
    if (auto it = bindings_.find(x.name); it != bindings_.end()) return it->second;
    if (const Component* c = graph_.find(x.name)) return Resolved{std::nullopt, c};
    if (const Region* region = graph_.find_region(x.name)) {
      out_.regions.insert_or_assign(region->name(), *region);
      return Resolved{add(PlanNode{PlanOp::RegionRef, SemanticType::of(TypeKind::Region), {}, {}, x.name, {}})};
    }
    throw UnknownIdentifier(pos, x.name);
  }

  Resolved resolve_member(const Member& x, SourcePosition pos) {
    Resolved object = resolve(*x.object);
    if (!object.component) return Resolved{builtin(x.name, {*object.node}, pos)};

    const Component& c = *object.component;
    const Port* port = nullptr;
    if (x.name == kOutputPort) {
      if (c.outputs.size() != 1) throw AmbiguousOutput(pos, c.name);
      port = &c.outputs.front();
    } else {
      port = c.output(x.name);
      if (!port) throw UnknownIdentifier(pos, c.name + "." + x.name);
    }
    PlanNode n{PlanOp::Tap, SemanticType::of(kind_of(port->type)), {}, Endpoint{c.name, port->name}, {}, {}};
    return Resolved{add(std::move(n))};
  }

  Resolved resolve_call(const Call& x, SourcePosition pos) {
    std::vector<std::size_t> args;
    if (x.receiver) args.push_back(value(*x.receiver));
    for (const auto& a : x.args) args.push_back(value(*a));
    return Resolved{builtin(x.name, std::move(args), pos)};
  }

  void expect_arity(const std::string& name, const std::vector<std::size_t>& args, std::size_t n,
                    SourcePosition pos) const {
    if (args.size() != n) {
      throw TypeMismatch(pos, name + " taking " + std::to_string(n) + " argument(s)",
                         std::to_string(args.size()) + " argument(s)");
    }
  }

  void expect_kind(std::size_t node, std::initializer_list<TypeKind> kinds, SourcePosition pos) const {
    for (auto k : kinds) {
      if (type_of(node).kind == k) return;
    }
    std::string expected;
    for (auto k : kinds) expected += (expected.empty() ? "" : " or ") + to_string(SemanticType::of(k));
    throw TypeMismatch(pos, expected, to_string(type_of(node)));
  }

  std::size_t builtin(const std::string& name, std::vector<std::size_t> args, SourcePosition pos) {
    struct Signature {
      std::string_view name;
      PlanOp op;
      std::initializer_list<TypeKind> accepts;
      SemanticType result;
    };
    static const Signature unary[] = {
        {"histogram", PlanOp::Histogram, {TypeKind::MonoImage, TypeKind::RawImage},
         SemanticType::of(TypeKind::Histogram)},
        {"bins", PlanOp::Bins, {TypeKind::Histogram}, SemanticType::of(TypeKind::Series)},
        {"nonempty", PlanOp::NonEmpty, {TypeKind::Series}, SemanticType::of(TypeKind::Series)},
        {"length", PlanOp::Length, {TypeKind::Series, TypeKind::PointCloud}, SemanticType::scalar(Dimension::Count)},
        {"max", PlanOp::MaxLevel, {TypeKind::Histogram}, SemanticType::scalar(Dimension::Level)},
        {"min", PlanOp::MinLevel, {TypeKind::Histogram}, SemanticType::scalar(Dimension::Level)},
    };
    for (const auto& sig : unary) {
      if (sig.name != name) continue;
      expect_arity(name, args, 1, pos);
      expect_kind(args[0], sig.accepts, pos);
      return add(PlanNode{sig.op, sig.result, std::move(args), {}, {}, {}});
    }
    if (name == "inArea") {
      expect_arity(name, args, 2, pos);
      expect_kind(args[0], {TypeKind::PointCloud}, pos);
      expect_kind(args[1], {TypeKind::Region}, pos);
      return add(PlanNode{PlanOp::InArea, SemanticType::of(TypeKind::PointCloud), std::move(args), {}, {}, {}});
    }
    throw UnknownIdentifier(pos, name);
  }

  std::size_t resolve_binary(const Binary& x, SourcePosition pos) {
    const std::size_t lhs = value(*x.lhs);
    const std::size_t rhs = value(*x.rhs);
    const SemanticType& lt = type_of(lhs);
    const SemanticType& rt = type_of(rhs);
    if (lt.kind != TypeKind::Scalar) throw TypeMismatch(x.lhs->position, "Scalar", to_string(lt));
    if (rt.kind != TypeKind::Scalar) throw TypeMismatch(x.rhs->position, "Scalar", to_string(rt));

    auto mismatch = [&] { return TypeMismatch(pos, "operand compatible with " + to_string(lt), to_string(rt)); };
    SemanticType result;
    switch (x.op) {
      case BinaryOp::Add:
      case BinaryOp::Sub: {
        auto d = unify(lt.dim, rt.dim);
        if (!d) throw mismatch();
        result = SemanticType::scalar(*d);
        break;
      }
      case BinaryOp::Mul:
        if (lt.dim == Dimension::None || lt.dim == Dimension::Ratio) {
          result = SemanticType::scalar(rt.dim == Dimension::None ? lt.dim : rt.dim);
        } else if (rt.dim == Dimension::None || rt.dim == Dimension::Ratio) {
          result = SemanticType::scalar(lt.dim);
        } else {
          throw mismatch();
        }
        break;
      case BinaryOp::Div:
        if (rt.dim == Dimension::None) {
          result = SemanticType::scalar(lt.dim);
        } else if (auto d = unify(lt.dim, rt.dim); d && lt.dim != Dimension::None) {
          result = SemanticType::scalar(Dimension::Ratio);
        } else if (lt.dim == Dimension::None && rt.dim == Dimension::Ratio) {
          result = SemanticType::scalar(Dimension::Ratio);
        } else {
          throw mismatch();
        }
        break;
      default:
        if (!unify(lt.dim, rt.dim)) throw mismatch();
        result = SemanticType::of(TypeKind::Boolean);
        break;
    }
    return add(PlanNode{plan_op(x.op), result, {lhs, rhs}, {}, {}, {}});
  }

  const PipelineGraph& graph_;
  CompiledRuleSet out_;
  std::map<std::string, Resolved, std::less<>> bindings_;
  std::map<std::string, ExprPtr, std::less<>> assigned_;
};

}  // namespace

CompiledRuleSet resolve(const RuleSet& rules, const PipelineGraph& graph) { return Resolver(graph).run(rules); }

CompiledRuleSet compile(std::string_view source, const PipelineGraph& graph) {
  return resolve(parse_source(source), graph);
}

}  // namespace saferules::rules
