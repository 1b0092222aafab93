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

#include <string_view>
#include <vector>

#include "saferules/rules/ast.hpp"
#include "saferules/rules/lexer.hpp"

namespace saferules::rules {

/// Recursive-descent parser for
///
///   ruleset   := statement*
///   statement := (ident "=" expr | expr) ";"
///   expr      := sum (("<" | ">" | "<=" | ">=" | "==") sum)?
///   sum       := product (("+" | "-") product)*
///   product   := postfix (("*" | "/") postfix)*
///   postfix   := primary ("." ident ("(" args? ")")?)*
///   primary   := ident ("(" args? ")")? | number "p"? | "(" expr ")"
///   args      := expr ("," expr)*
///
/// Throws ParseError with the offending position and the expected set.
RuleSet parse(const std::vector<Token>& tokens);

/// tokenize + parse.
RuleSet parse_source(std::string_view source);

}  // namespace saferules::rules
