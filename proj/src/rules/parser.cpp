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

#include "saferules/rules/parser.hpp"

#include <optional>
#include <set>

namespace saferules::rules {

namespace {

class Parser {
 public:
  explicit Parser(const std::vector<Token>& tokens) : tokens_(tokens) {}

  RuleSet run() {
    RuleSet rules;
    std::set<std::string, std::less<>> assigned;
    while (!at_end()) {
      Statement stmt = statement();
      if (const auto* a = std::get_if<Assign>(&stmt.body); a && !assigned.insert(a->name).second) {
        throw ParseError(stmt.span.begin, "duplicate assignment to '" + a->name + "'");
      }
      rules.statements.push_back(std::move(stmt));
    }
    return rules;
  }

 private:
  bool at_end() const { return i_ >= tokens_.size(); }
  const Token* peek() const { return at_end() ? nullptr : &tokens_[i_]; }

  bool is(TokenKind kind, std::string_view lexeme) const {
    const Token* t = peek();
    return t && t->kind == kind && t->lexeme == lexeme;
  }
  bool is(TokenKind kind) const { return peek() && peek()->kind == kind; }

  SourcePosition here() const {
    if (!at_end()) return tokens_[i_].position;
    if (tokens_.empty()) return {};
    const Token& last = tokens_.back();
    SourcePosition pos = last.position;
    pos.column += last.lexeme.size();
    pos.offset += last.lexeme.size();
    return pos;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const std::string found = at_end() ? "end of input" : "'" + peek()->lexeme + "'";
    throw ParseError(here(), std::move(expected), found);
  }

  const Token& expect(TokenKind kind, std::string_view lexeme) {
    if (!is(kind, lexeme)) fail({"'" + std::string(lexeme) + "'"});
    return tokens_[i_++];
  }

  const Token& expect_ident() {
    if (!is(TokenKind::Identifier)) fail({"identifier"});
    return tokens_[i_++];
  }

  Statement statement() {
    const SourcePosition begin = here();
    ExprPtr first = expr();
    Statement stmt;
    if (is(TokenKind::Operator, "=")) {
      const auto* target = std::get_if<Ident>(&first->node);
      if (!target) throw ParseError(here(), "assignment target must be a bare identifier");
      ++i_;
      stmt.body = Assign{target->name, expr()};
    } else {
      stmt.body = Assert{first};
    }
    const Token& semi = expect(TokenKind::Punctuation, ";");
    SourcePosition end = semi.position;
    ++end.column;
    ++end.offset;
    stmt.span = {begin, end};
    return stmt;
  }

  static std::optional<BinaryOp> comparison_op(const Token& t) {
    if (t.kind != TokenKind::Operator) return std::nullopt;
    if (t.lexeme == ">") return BinaryOp::Greater;
    if (t.lexeme == "<") return BinaryOp::Less;
    if (t.lexeme == ">=") return BinaryOp::GreaterEqual;
    if (t.lexeme == "<=") return BinaryOp::LessEqual;
    if (t.lexeme == "==") return BinaryOp::Equal;
    return std::nullopt;
  }

  ExprPtr expr() {
    ExprPtr lhs = sum();
    if (const Token* t = peek()) {
      if (auto op = comparison_op(*t)) {
        ++i_;
        ExprPtr rhs = sum();
        if (peek() && comparison_op(*peek())) throw ParseError(here(), "comparisons do not chain; add parentheses");
        return make_binary(*op, lhs, rhs, t->position);
      }
    }
    return lhs;
  }

  ExprPtr sum() {
    ExprPtr lhs = product();
    while (is(TokenKind::Operator, "+") || is(TokenKind::Operator, "-")) {
      const Token& t = tokens_[i_++];
      lhs = make_binary(t.lexeme == "+" ? BinaryOp::Add : BinaryOp::Sub, lhs, product(), t.position);
    }
    return lhs;
  }

  ExprPtr product() {
    ExprPtr lhs = postfix();
    while (is(TokenKind::Operator, "*") || is(TokenKind::Operator, "/")) {
      const Token& t = tokens_[i_++];
      lhs = make_binary(t.lexeme == "*" ? BinaryOp::Mul : BinaryOp::Div, lhs, postfix(), t.position);
    }
    return lhs;
  }

  ExprPtr postfix() {
    ExprPtr e = primary();
    while (is(TokenKind::Punctuation, ".")) {
      ++i_;
      const Token& name = expect_ident();
      if (is(TokenKind::Punctuation, "(")) {
        e = make_call(e, name.lexeme, args(), name.position);
      } else {
        e = make_member(e, name.lexeme, name.position);
      }
    }
    return e;
  }

  std::vector<ExprPtr> args() {
    expect(TokenKind::Punctuation, "(");
    std::vector<ExprPtr> out;
    if (!is(TokenKind::Punctuation, ")")) {
      out.push_back(expr());
      while (is(TokenKind::Punctuation, ",")) {
        ++i_;
        out.push_back(expr());
      }
    }
    if (!is(TokenKind::Punctuation, ")")) fail({"','", "')'"});
    ++i_;
    return out;
  }

  ExprPtr primary() {
    if (is(TokenKind::Identifier)) {
      const Token& t = tokens_[i_++];
      if (is(TokenKind::Punctuation, "(")) return make_call(nullptr, t.lexeme, args(), t.position);
      return make_ident(t.lexeme, t.position);
    }
    if (is(TokenKind::Number)) {
      const Token& t = tokens_[i_++];
      Unit unit = Unit::None;
      if (is(TokenKind::UnitSuffix)) {
        ++i_;
        unit = Unit::Pixel;
      }
      Rational value;
      try {
        value = parse_rational(t.lexeme);
      } catch (const Error&) {
        throw ParseError(t.position, "number literal out of range: " + t.lexeme);
      }
      return make_number(value, unit, t.position);
    }
    if (is(TokenKind::Punctuation, "(")) {
      ++i_;
      ExprPtr inner = expr();
      expect(TokenKind::Punctuation, ")");
      return inner;
    }
    fail({"identifier", "number", "'('"});
  }

  const std::vector<Token>& tokens_;
  std::size_t i_ = 0;
};

}  // namespace

RuleSet parse(const std::vector<Token>& tokens) { return Parser(tokens).run(); }

RuleSet parse_source(std::string_view source) { return parse(tokenize(source)); }

}  // namespace saferules::rules
