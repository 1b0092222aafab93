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

#include "saferules/pgm.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "saferules/error.hpp"

namespace saferules::pgm {

namespace {

int depth_for_maxval(long maxval) {
  int depth = 1;
  while (depth < 16 && (1L << depth) - 1 < maxval) ++depth;
  return depth;
}

// Reads the next whitespace-delimited header integer, skipping '#' comments.
long read_header_value(std::istream& is) {
  for (;;) {
    const int c = is.peek();
    if (c == EOF) throw IoError("truncated PGM header");
    if (c == '#') {
      std::string ignored;
      std::getline(is, ignored);
    } else if (std::isspace(c)) {
      is.get();
    } else {
      break;
    }
  }
  long value = 0;
  if (!(is >> value) || value <= 0) throw IoError("malformed PGM header");
  return value;
}

}  // namespace

void write(std::ostream& os, const MonoImage& img) {
  img.validate();
  const auto maxval = max_level(img.bit_depth);
  os << "P5\n" << img.width << " " << img.height << "\n" << maxval << "\n";
  if (maxval < 256) {
    for (auto s : img.samples) os.put(static_cast<char>(s));
  } else {
    for (auto s : img.samples) {
      os.put(static_cast<char>(s >> 8));
      os.put(static_cast<char>(s & 0xff));
    }
  }
  if (!os) throw IoError("failed to write PGM data");
}

MonoImage read(std::istream& is) {
  char magic[2] = {};
  if (!is.read(magic, 2) || magic[0] != 'P' || magic[1] != '5') throw IoError("not a binary PGM (P5) file");
  const long width = read_header_value(is);
  const long height = read_header_value(is);
  const long maxval = read_header_value(is);
  if (maxval > 65535) throw IoError("PGM maxval exceeds 65535");
  if (!std::isspace(is.get())) throw IoError("malformed PGM header");

  MonoImage img(static_cast<int>(width), static_cast<int>(height), depth_for_maxval(maxval));
  if (maxval < 256) {
    for (auto& s : img.samples) {
      const int c = is.get();
      if (c == EOF) throw IoError("truncated PGM data");
      s = static_cast<std::uint16_t>(c);
    }
  } else {
    for (auto& s : img.samples) {
      const int hi = is.get();
      const int lo = is.get();
      if (lo == EOF || hi == EOF) throw IoError("truncated PGM data");
      s = static_cast<std::uint16_t>((hi << 8) | lo);
    }
  }
  for (auto s : img.samples) {
    if (s > maxval) throw IoError("PGM sample exceeds maxval");
  }
  return img;
}

void write_file(const std::filesystem::path& path, const MonoImage& img) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  write(os, img);
}

MonoImage read_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());
  return read(is);
}

std::filesystem::path sidecar_path(const std::filesystem::path& image_path) {
  auto p = image_path;
  p += ".meta";
  return p;
}

void write_raw_file(const std::filesystem::path& path, const RawImage& raw) {
  raw.validate();
  MonoImage carrier(raw.width, raw.height, raw.bit_depth);
  carrier.samples = raw.samples;
  write_file(path, carrier);
  std::ofstream meta(sidecar_path(path));
  if (!meta) throw IoError("cannot write " + sidecar_path(path).string());
  meta << "bayer_pattern=" << to_string(raw.pattern) << " bit_depth=" << raw.bit_depth << "\n";
}

RawImage read_raw_file(const std::filesystem::path& path) {
  const MonoImage carrier = read_file(path);
  RawImage raw;
  raw.width = carrier.width;
  raw.height = carrier.height;
  raw.bit_depth = carrier.bit_depth;
  raw.samples = carrier.samples;

  if (std::ifstream meta(sidecar_path(path)); meta) {
    std::string line;
    std::getline(meta, line);
    std::istringstream fields(line);
    std::string field;
    while (fields >> field) {
      const auto eq = field.find('=');
      if (eq == std::string::npos) throw IoError("malformed sidecar field '" + field + "'");
      const auto key = field.substr(0, eq);
      const auto value = field.substr(eq + 1);
      if (key == "bayer_pattern") {
        raw.pattern = parse_bayer_pattern(value);
      } else if (key == "bit_depth") {
        raw.bit_depth = std::stoi(value);
      } else {
        throw IoError("unknown sidecar key '" + key + "'");
      }
    }
  }
  raw.validate();
  return raw;
}

}  // namespace saferules::pgm
