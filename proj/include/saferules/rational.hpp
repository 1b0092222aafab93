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

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace saferules {

/// Exact numeric value used by rule literals and rule evaluation.
using Rational = boost::rational<std::int64_t>;

/// "7", "1/256", "-3/2".
std::string format_rational(const Rational& value);

/// Shortest decimal spelling ("0.1", "1000") when the value has a
/// terminating decimal expansion, otherwise the "n/d" form.
std::string format_decimal(const Rational& value);

/// Parses "n", "n/d", or a decimal literal "123.456". Throws InvalidArgument.
Rational parse_rational(std::string_view text);

}  // namespace saferules
