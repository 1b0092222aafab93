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

#include <filesystem>
#include <iosfwd>

#include "saferules/image.hpp"

namespace saferules::pgm {

/// Binary portable graymap (P5). maxval is 2^bit_depth - 1; depths above 8
/// use two bytes per sample, most significant byte first.
void write(std::ostream& os, const MonoImage& img);
MonoImage read(std::istream& is);

void write_file(const std::filesystem::path& path, const MonoImage& img);
MonoImage read_file(const std::filesystem::path& path);

/// A raw mosaic is stored as a P5 file plus a sidecar `<file>.meta` holding a
/// single line `bayer_pattern=<RGGB|BGGR|GRBG|GBRG> bit_depth=<N>`. Without
/// a sidecar the pattern defaults to RGGB and the depth is taken from maxval.
void write_raw_file(const std::filesystem::path& path, const RawImage& raw);
RawImage read_raw_file(const std::filesystem::path& path);

std::filesystem::path sidecar_path(const std::filesystem::path& image_path);

}  // namespace saferules::pgm
