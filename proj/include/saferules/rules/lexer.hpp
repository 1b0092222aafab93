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

#include <string>
#include <string_view>
#include <vector>

#include "saferules/error.hpp"

namespace saferules::rules {

enum class TokenKind { Identifier, Number, UnitSuffix, Operator, Punctuation };

std::string_view to_string(TokenKind kind);

struct Token {
  TokenKind kind;
  std::string lexeme;
  SourcePosition position;

  friend bool operator==(const Token&, const Token&) = default;
};

/// Splits rule source into tokens.
///
/// Whitespace and `#` comments (to end of line) separate tokens and are
/// dropped. A `p` written directly after a number, and not followed by an
/// identifier character, is a unit suffix. Throws LexError on any character
/// outside the rule alphabet.
std::vector<Token> tokenize(std::string_view source);

}  // namespace saferules::rules
