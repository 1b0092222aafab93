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

#include "saferules/rules/lexer.hpp"

namespace saferules::rules {

namespace {

bool is_ident_start(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

// Decodes the code point starting at `s[i]` for diagnostics only.
char32_t code_point_at(std::string_view s, std::size_t i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) return b0;
  int extra = b0 >= 0xf0 ? 3 : b0 >= 0xe0 ? 2 : b0 >= 0xc0 ? 1 : 0;
  char32_t cp = b0 & (0x3f >> extra);
  for (int k = 1; k <= extra && i + k < s.size(); ++k) cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3f);
  return cp;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (i_ < src_.size()) {
      const char c = src_[i_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance(1);
      } else if (c == '#') {
        while (i_ < src_.size() && src_[i_] != '\n') advance(1);
      } else if (is_ident_start(c)) {
        std::size_t n = 1;
        while (i_ + n < src_.size() && is_ident_char(src_[i_ + n])) ++n;
        emit(out, TokenKind::Identifier, n);
      } else if (is_digit(c)) {
        lex_number(out);
      } else if (c == '>' || c == '<' || c == '=') {
        emit(out, TokenKind::Operator, peek(1) == '=' ? 2 : 1);
      } else if (c == '+' || c == '-' || c == '*' || c == '/') {
        emit(out, TokenKind::Operator, 1);
      } else if (c == '(' || c == ')' || c == '.' || c == ',' || c == ';') {
        emit(out, TokenKind::Punctuation, 1);
      } else {
        throw LexError(pos_, code_point_at(src_, i_));
      }
    }
    return out;
  }

 private:
  char peek(std::size_t ahead) const { return i_ + ahead < src_.size() ? src_[i_ + ahead] : '\0'; }

  void lex_number(std::vector<Token>& out) {
    std::size_t n = 0;
    while (is_digit(peek(n))) ++n;
    if (peek(n) == '.' && is_digit(peek(n + 1))) {
      ++n;
      while (is_digit(peek(n))) ++n;
    }
    emit(out, TokenKind::Number, n);
    if (peek(0) == 'p' && !is_ident_char(peek(1))) emit(out, TokenKind::UnitSuffix, 1);
  }

  void emit(std::vector<Token>& out, TokenKind kind, std::size_t n) {
    out.push_back(Token{kind, std::string(src_.substr(i_, n)), pos_});
    advance(n);
  }

  void advance(std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src_[i_] == '\n') {
        ++pos_.line;
        pos_.column = 1;
      } else {
        ++pos_.column;
      }
      ++i_;
      pos_.offset = i_;
    }
  }

  std::string_view src_;
  std::size_t i_ = 0;
  SourcePosition pos_;
};

}  // namespace

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Identifier: return "identifier";
    case TokenKind::Number: return "number";
    case TokenKind::UnitSuffix: return "unit";
    case TokenKind::Operator: return "operator";
    case TokenKind::Punctuation: return "punctuation";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace saferules::rules
