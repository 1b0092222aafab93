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

#include "saferules/error.hpp"

#include <sstream>

namespace saferules {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ", ";
    out += items[i];
  }
  return out;
}

std::string describe_char(char32_t c) {
  std::ostringstream os;
  if (c >= 0x20 && c < 0x7f) {
    os << '\'' << static_cast<char>(c) << '\'';
  } else {
    os << "U+" << std::hex << std::uppercase << static_cast<unsigned>(c);
  }
  return os.str();
}

}  // namespace

std::string to_string(const SourcePosition& pos) {
  return std::to_string(pos.line) + ":" + std::to_string(pos.column);
}

Error::Error(std::string name, const std::string& message)
    : std::runtime_error(message), name_(std::move(name)) {}

PositionedError::PositionedError(std::string name, SourcePosition pos, const std::string& message)
    : Error(std::move(name), to_string(pos) + ": " + message), pos_(pos) {}

LexError::LexError(SourcePosition pos, char32_t offending)
    : PositionedError("LexError", pos, "unexpected character " + describe_char(offending)) {}

ParseError::ParseError(SourcePosition pos, std::vector<std::string> expected, const std::string& found)
    : PositionedError("ParseError", pos, "expected " + join(expected) + " but found " + found),
      expected_(std::move(expected)) {}

ParseError::ParseError(SourcePosition pos, const std::string& message)
    : PositionedError("ParseError", pos, message) {}

UnknownIdentifier::UnknownIdentifier(SourcePosition pos, const std::string& identifier)
    : PositionedError("UnknownIdentifier", pos, "unknown identifier '" + identifier + "'"),
      identifier_(identifier) {}

TypeMismatch::TypeMismatch(SourcePosition pos, const std::string& expected, const std::string& found)
    : PositionedError("TypeMismatch", pos, "type mismatch: expected " + expected + ", found " + found) {}

AmbiguousOutput::AmbiguousOutput(SourcePosition pos, const std::string& component)
    : PositionedError("AmbiguousOutput", pos,
                      "component '" + component + "' has several output ports; name one explicitly") {}

DuplicateRegion::DuplicateRegion(const std::string& region)
    : Error("DuplicateRegion", "region '" + region + "' is already registered") {}

MissingValue::MissingValue(const std::string& component, const std::string& port)
    : Error("MissingValue", "no value for " + component + "." + port + " in this frame") {}

DimensionMismatch::DimensionMismatch(const std::string& message) : Error("DimensionMismatch", message) {}

InvalidArgument::InvalidArgument(const std::string& message) : Error("InvalidArgument", message) {}

FrustumViolation::FrustumViolation(const std::string& message) : Error("FrustumViolation", message) {}

UnknownFunction::UnknownFunction(const std::string& function)
    : Error("UnknownFunction", "unknown safety function '" + function + "'") {}

UnknownRule::UnknownRule(const std::string& rule) : Error("UnknownRule", "unknown rule '" + rule + "'") {}

ConfigError::ConfigError(const std::string& message) : Error("ConfigError", message) {}

IoError::IoError(const std::string& message) : Error("IoError", message) {}

}  // namespace saferules
