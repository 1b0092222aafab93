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

#include <iosfwd>
#include <string>
#include <vector>

namespace saferules::cli {

/// Exit statuses of the `saferules` tool.
inline constexpr int kExitContinue = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitProtectiveStop = 2;

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Never throws; every failure maps to kExitUsage.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace saferules::cli
