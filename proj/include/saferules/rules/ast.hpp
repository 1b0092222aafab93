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

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "saferules/error.hpp"
#include "saferules/rational.hpp"

namespace saferules::rules {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Ident {
  std::string name;
};

/// `object.name` with no argument list.
struct Member {
  ExprPtr object;
  std::string name;
};

/// `name(args)` or, with a receiver, `receiver.name(args)`.
struct Call {
  ExprPtr receiver;  // may be null
  std::string name;
  std::vector<ExprPtr> args;
};

enum class BinaryOp { Add, Sub, Mul, Div, Greater, Less, GreaterEqual, LessEqual, Equal };

std::string_view to_string(BinaryOp op);
bool is_comparison(BinaryOp op);

struct Binary {
  BinaryOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};

enum class Unit { None, Pixel };

struct Number {
  Rational value;
  Unit unit = Unit::None;
};

struct Expr {
  std::variant<Ident, Member, Call, Binary, Number> node;
  /// Location of the token that names the node: the identifier, the member or
  /// call name, the operator, or the literal.
  SourcePosition position;
};

ExprPtr make_ident(std::string name, SourcePosition pos = {});
ExprPtr make_member(ExprPtr object, std::string name, SourcePosition pos = {});
ExprPtr make_call(ExprPtr receiver, std::string name, std::vector<ExprPtr> args, SourcePosition pos = {});
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, SourcePosition pos = {});
ExprPtr make_number(Rational value, Unit unit = Unit::None, SourcePosition pos = {});

/// Byte range [begin, end) of a statement including its terminating `;`.
struct SourceSpan {
  SourcePosition begin;
  SourcePosition end;
};

struct Assign {
  std::string name;
  ExprPtr value;
};

struct Assert {
  ExprPtr condition;
};

struct Statement {
  std::variant<Assign, Assert> body;
  SourceSpan span;
};

struct RuleSet {
  std::vector<Statement> statements;

  std::size_t assertion_count() const;
};

/// Structural equality; source positions are ignored.
bool equal(const Expr& a, const Expr& b);
bool equal(const RuleSet& a, const RuleSet& b);

/// Canonical source text: minimal parentheses, one statement per line.
std::string print(const Expr& expr);
std::string print(const Statement& stmt);
std::string print(const RuleSet& rules);

/// Fully parenthesised S-expression dump used by golden tests, e.g.
/// `(> (call length () (ident h)) 900)`.
std::string dump(const Expr& expr);
std::string dump(const RuleSet& rules);

}  // namespace saferules::rules
