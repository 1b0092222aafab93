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

#include "saferules/rules/ast.hpp"

#include <algorithm>

namespace saferules::rules {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

int precedence(BinaryOp op) {
  switch (op) {
    case BinaryOp::Mul:
    case BinaryOp::Div: return 3;
    case BinaryOp::Add:
    case BinaryOp::Sub: return 2;
    default: return 1;
  }
}

constexpr int kPostfixPrecedence = 4;

int precedence(const Expr& e) {
  if (const auto* b = std::get_if<Binary>(&e.node)) return precedence(b->op);
  return kPostfixPrecedence;
}

std::string parenthesize(const Expr& e, bool wrap) { return wrap ? "(" + print(e) + ")" : print(e); }

std::string print_receiver(const Expr& e) {
  return parenthesize(e, std::holds_alternative<Binary>(e.node) || std::holds_alternative<Number>(e.node));
}

std::string print_args(const std::vector<ExprPtr>& args) {
  std::string out = "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i > 0) out += ",";
    out += print(*args[i]);
  }
  return out + ")";
}

}  // namespace

std::string_view to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Greater: return ">";
    case BinaryOp::Less: return "<";
    case BinaryOp::GreaterEqual: return ">=";
    case BinaryOp::LessEqual: return "<=";
    case BinaryOp::Equal: return "==";
  }
  return "?";
}

bool is_comparison(BinaryOp op) { return precedence(op) == 1; }

ExprPtr make_ident(std::string name, SourcePosition pos) {
  return std::make_shared<const Expr>(Expr{Ident{std::move(name)}, pos});
}

ExprPtr make_member(ExprPtr object, std::string name, SourcePosition pos) {
  return std::make_shared<const Expr>(Expr{Member{std::move(object), std::move(name)}, pos});
}

ExprPtr make_call(ExprPtr receiver, std::string name, std::vector<ExprPtr> args, SourcePosition pos) {
  return std::make_shared<const Expr>(Expr{Call{std::move(receiver), std::move(name), std::move(args)}, pos});
}

ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, SourcePosition pos) {
  return std::make_shared<const Expr>(Expr{Binary{op, std::move(lhs), std::move(rhs)}, pos});
}

ExprPtr make_number(Rational value, Unit unit, SourcePosition pos) {
  return std::make_shared<const Expr>(Expr{Number{value, unit}, pos});
}

std::size_t RuleSet::assertion_count() const {
  return static_cast<std::size_t>(std::count_if(statements.begin(), statements.end(), [](const Statement& s) {
    return std::holds_alternative<Assert>(s.body);
  }));
}

bool equal(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      overloaded{
          [&](const Ident& x) { return x.name == std::get<Ident>(b.node).name; },
          [&](const Member& x) {
            const auto& y = std::get<Member>(b.node);
            return x.name == y.name && equal(*x.object, *y.object);
          },
          [&](const Call& x) {
            const auto& y = std::get<Call>(b.node);
            if (x.name != y.name || x.args.size() != y.args.size()) return false;
            if (static_cast<bool>(x.receiver) != static_cast<bool>(y.receiver)) return false;
            if (x.receiver && !equal(*x.receiver, *y.receiver)) return false;
            for (std::size_t i = 0; i < x.args.size(); ++i) {
              if (!equal(*x.args[i], *y.args[i])) return false;
            }
            return true;
          },
          [&](const Binary& x) {
            const auto& y = std::get<Binary>(b.node);
            return x.op == y.op && equal(*x.lhs, *y.lhs) && equal(*x.rhs, *y.rhs);
          },
          [&](const Number& x) {
            const auto& y = std::get<Number>(b.node);
            return x.value == y.value && x.unit == y.unit;
          },
      },
      a.node);
}

bool equal(const RuleSet& a, const RuleSet& b) {
  if (a.statements.size() != b.statements.size()) return false;
  for (std::size_t i = 0; i < a.statements.size(); ++i) {
    const auto& x = a.statements[i].body;
    const auto& y = b.statements[i].body;
    if (x.index() != y.index()) return false;
    if (const auto* ax = std::get_if<Assign>(&x)) {
      const auto& ay = std::get<Assign>(y);
      if (ax->name != ay.name || !equal(*ax->value, *ay.value)) return false;
    } else if (!equal(*std::get<Assert>(x).condition, *std::get<Assert>(y).condition)) {
      return false;
    }
  }
  return true;
}

std::string print(const Expr& expr) {
  return std::visit(
      overloaded{
          [](const Ident& x) { return x.name; },
          [](const Member& x) { return print_receiver(*x.object) + "." + x.name; },
          [](const Call& x) {
            std::string head = x.receiver ? print_receiver(*x.receiver) + "." + x.name : x.name;
            return head + print_args(x.args);
          },
          [](const Binary& x) {
            const int p = precedence(x.op);
            // Comparisons do not chain, arithmetic is left-associative.
            const bool wrap_lhs = precedence(*x.lhs) < p || (p == 1 && precedence(*x.lhs) == 1);
            const bool wrap_rhs = precedence(*x.rhs) <= p;
            return parenthesize(*x.lhs, wrap_lhs) + std::string(to_string(x.op)) + parenthesize(*x.rhs, wrap_rhs);
          },
          [](const Number& x) { return format_decimal(x.value) + (x.unit == Unit::Pixel ? "p" : ""); },
      },
      expr.node);
}

std::string print(const Statement& stmt) {
  if (const auto* a = std::get_if<Assign>(&stmt.body)) return a->name + "=" + print(*a->value) + ";";
  return print(*std::get<Assert>(stmt.body).condition) + ";";
}

std::string print(const RuleSet& rules) {
  std::string out;
  for (const auto& s : rules.statements) out += print(s) + "\n";
  return out;
}

std::string dump(const Expr& expr) {
  return std::visit(
      overloaded{
          [](const Ident& x) { return "(ident " + x.name + ")"; },
          [](const Member& x) { return "(member " + dump(*x.object) + " " + x.name + ")"; },
          [](const Call& x) {
            std::string out = "(call " + x.name + " " + (x.receiver ? dump(*x.receiver) : std::string("_"));
            for (const auto& a : x.args) out += " " + dump(*a);
            return out + ")";
          },
          [](const Binary& x) {
            return "(" + std::string(to_string(x.op)) + " " + dump(*x.lhs) + " " + dump(*x.rhs) + ")";
          },
          [](const Number& x) {
            return "(number " + format_rational(x.value) + (x.unit == Unit::Pixel ? " p" : "") + ")";
          },
      },
      expr.node);
}

std::string dump(const RuleSet& rules) {
  std::string out;
  for (const auto& s : rules.statements) {
    if (const auto* a = std::get_if<Assign>(&s.body)) {
      out += "(assign " + a->name + " " + dump(*a->value) + ")\n";
    } else {
      out += "(assert " + dump(*std::get<Assert>(s.body).condition) + ")\n";
    }
  }
  return out;
}

}  // namespace saferules::rules
