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
#include <stdexcept>
#include <string>
#include <vector>

namespace saferules {

/// 1-based line/column plus a 0-based byte offset into the rule source.
struct SourcePosition {
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t offset = 0;

  friend bool operator==(const SourcePosition&, const SourcePosition&) = default;
};

std::string to_string(const SourcePosition& pos);

/// Base of every error raised by the library. `name()` is the stable error
/// identifier reported in ERROR verdicts and CLI diagnostics.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& message);
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// An error that can be attributed to a location in rule source.
class PositionedError : public Error {
 public:
  PositionedError(std::string name, SourcePosition pos, const std::string& message);
  const SourcePosition& position() const noexcept { return pos_; }

 private:
  SourcePosition pos_;
};

class LexError : public PositionedError {
 public:
  LexError(SourcePosition pos, char32_t offending);
};

class ParseError : public PositionedError {
 public:
  ParseError(SourcePosition pos, std::vector<std::string> expected, const std::string& found);
  ParseError(SourcePosition pos, const std::string& message);
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::vector<std::string> expected_;
};

class UnknownIdentifier : public PositionedError {
 public:
  UnknownIdentifier(SourcePosition pos, const std::string& identifier);
  const std::string& identifier() const noexcept { return identifier_; }

 private:
  std::string identifier_;
};

class TypeMismatch : public PositionedError {
 public:
  TypeMismatch(SourcePosition pos, const std::string& expected, const std::string& found);
};

class AmbiguousOutput : public PositionedError {
 public:
  AmbiguousOutput(SourcePosition pos, const std::string& component);
};

/// Structural problems in a pipeline graph (cycles, type-mismatched
/// connectors, dangling or doubly-driven inputs, ...).
class GraphError : public Error {
 public:
  using Error::Error;
};

class DuplicateRegion : public Error {
 public:
  explicit DuplicateRegion(const std::string& region);
};

class MissingValue : public Error {
 public:
  MissingValue(const std::string& component, const std::string& port);
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& message);
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& message);
};

class FrustumViolation : public Error {
 public:
  explicit FrustumViolation(const std::string& message);
};

class UnknownFunction : public Error {
 public:
  explicit UnknownFunction(const std::string& function);
};

class UnknownRule : public Error {
 public:
  explicit UnknownRule(const std::string& rule);
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message);
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message);
};

}  // namespace saferules
