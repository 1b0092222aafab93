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

#include "saferules/faults.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "saferules/error.hpp"

namespace saferules {

namespace {

std::uint64_t mix(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double lattice(std::int64_t i, std::int64_t j, std::uint64_t seed) {
  const std::uint64_t h = mix(seed ^ mix(static_cast<std::uint64_t>(i) * 0x632be59bd9b4e019ULL ^
                                         mix(static_cast<std::uint64_t>(j))));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// Smooth value noise in [0, 1) on a lattice of `cell` meters, two octaves.
double texture(double a, double b, double cell, std::uint64_t seed) {
  auto octave = [&](double scale, std::uint64_t s) {
    const double x = a / scale;
    const double y = b / scale;
    const double fx = std::floor(x);
    const double fy = std::floor(y);
    const auto i = static_cast<std::int64_t>(fx);
    const auto j = static_cast<std::int64_t>(fy);
    auto smooth = [](double t) { return t * t * (3.0 - 2.0 * t); };
    const double tx = smooth(x - fx);
    const double ty = smooth(y - fy);
    const double top = lattice(i, j, s) * (1 - tx) + lattice(i + 1, j, s) * tx;
    const double bottom = lattice(i, j + 1, s) * (1 - tx) + lattice(i + 1, j + 1, s) * tx;
    return top * (1 - ty) + bottom * ty;
  };
  return 0.65 * octave(cell, seed) + 0.35 * octave(cell * 0.5, seed ^ 0x5bd1e995ULL);
}

class NoiseSource {
 public:
  NoiseSource(std::uint64_t seed, int amplitude) : rng_(seed), amplitude_(amplitude) {}
  int next() {
    if (amplitude_ == 0) return 0;
    return static_cast<int>(rng_() % static_cast<std::uint64_t>(2 * amplitude_ + 1)) - amplitude_;
  }

 private:
  std::mt19937_64 rng_;
  int amplitude_;
};

std::uint16_t clamp_level(double value, int bit_depth) {
  const double top = max_level(bit_depth);
  return static_cast<std::uint16_t>(std::clamp(std::floor(value + 0.5), 0.0, top));
}

// Albedo in [0, 1] seen along the ray from (origin_x, 0, 0) through pixel (u, v).
double shade(const SceneConfig& cfg, double origin_x, int u, int v) {
  const auto& k = cfg.calib;
  const double dx = (u - k.cx) / k.focal_length;
  const double dy = (v - k.cy) / k.focal_length;
  const auto& lm = cfg.landmark;

  if (lm.present) {
    const double a = origin_x + dx * lm.center.z - lm.center.x;
    const double b = dy * lm.center.z - lm.center.y;
    const double half = lm.side / 2;
    if (std::abs(a) <= half && std::abs(b) <= half) {
      const double t = texture(a, b, 0.01, cfg.seed ^ 0x1a2b3c4dULL);
      const double arm = lm.cross_arm_width / 2;
      const bool on_cross = std::abs(a) <= arm || std::abs(b) <= arm;
      return on_cross ? 0.03 + 0.03 * t : 0.86 + 0.10 * t;
    }
  }
  if (dy > 0) {
    const double z = cfg.camera_height / dy;
    if (z < cfg.backdrop_depth) {
      return 0.20 + 0.50 * texture(origin_x + dx * z, z, 0.03, cfg.seed ^ 0x77aa11ULL);
    }
  }
  const double z = cfg.backdrop_depth;
  return 0.25 + 0.45 * texture(origin_x + dx * z, dy * z, 0.05, cfg.seed ^ 0x3c3cULL);
}

RawImage render_view(const SceneConfig& cfg, double origin_x, std::uint64_t noise_seed) {
  RawImage img(cfg.width, cfg.height, cfg.bit_depth, cfg.pattern);
  NoiseSource noise(noise_seed, cfg.noise_amplitude);
  const double top = max_level(cfg.bit_depth);
  for (int v = 0; v < cfg.height; ++v) {
    for (int u = 0; u < cfg.width; ++u) {
      img.at(u, v) = clamp_level(shade(cfg, origin_x, u, v) * top + noise.next(), cfg.bit_depth);
    }
  }
  return img;
}

}  // namespace

void SceneConfig::validate() const {
  if (width <= 0 || height <= 0 || width % 2 || height % 2) {
    throw InvalidArgument("scene size must be positive and even");
  }
  if (bit_depth < 8 || bit_depth > 16) throw InvalidArgument("scene bit depth must be in [8, 16]");
  calib.validate();
  if (!(camera_height > 0) || !(backdrop_depth > 0)) throw InvalidArgument("scene distances must be positive");
  if (noise_amplitude < 0) throw InvalidArgument("noise amplitude must be non-negative");
  if (landmark.present) {
    if (!(landmark.side > 0)) throw InvalidArgument("landmark side must be positive");
    if (!(landmark.center.z > 0)) throw InvalidArgument("landmark must be in front of the cameras");
    if (landmark.cross_arm_width < 0 || landmark.cross_arm_width >= landmark.side) {
      throw InvalidArgument("cross arm width must be in [0, side)");
    }
  }
}

std::pair<double, double> landmark_pixel(const SceneConfig& cfg) {
  const auto& k = cfg.calib;
  const auto& c = cfg.landmark.center;
  return {k.cy + k.focal_length * c.y / c.z, k.cx + k.focal_length * c.x / c.z};
}

StereoPair render_scene(const SceneConfig& cfg, std::uint64_t frame_index) {
  cfg.validate();
  if (cfg.landmark.present) {
    const auto& k = cfg.calib;
    const auto& lm = cfg.landmark;
    const double half = lm.side / 2;
    for (double origin : {0.0, k.baseline}) {
      for (double sx : {-half, half}) {
        for (double sy : {-half, half}) {
          const double u = k.cx + k.focal_length * (lm.center.x + sx - origin) / lm.center.z;
          const double v = k.cy + k.focal_length * (lm.center.y + sy) / lm.center.z;
          if (u < 0 || u > cfg.width - 1 || v < 0 || v > cfg.height - 1) {
            throw FrustumViolation("landmark corner projects outside the " +
                                   std::string(origin == 0.0 ? "left" : "right") + " image");
          }
        }
      }
    }
  }
  const std::uint64_t base = mix(cfg.seed ^ mix(frame_index));
  return {render_view(cfg, 0.0, base), render_view(cfg, cfg.calib.baseline, mix(base))};
}

std::string_view to_string(FaultKind kind) {
  switch (kind) {
    case FaultKind::Cover: return "cover";
    case FaultKind::Overexpose: return "overexpose";
    case FaultKind::PartialCover: return "partial_cover";
  }
  return "?";
}

void FaultSpec::validate() const {
  if (kind == FaultKind::PartialCover && !(fraction > 0.0 && fraction <= 1.0)) {
    throw InvalidArgument("partial cover fraction must be in (0, 1]");
  }
  if (kind == FaultKind::Overexpose) {
    if (!(gain > 0.0) || !std::isfinite(gain)) throw InvalidArgument("overexposure gain must be positive");
    if (!(offset >= 0.0 && offset <= 1.0)) throw InvalidArgument("overexposure offset must be in [0, 1]");
  }
}

int covered_columns(double fraction, int width) {
  // Tolerance keeps 0.3 * 320 at 96 despite binary rounding of 0.3.
  const double exact = fraction * width;
  return std::clamp(static_cast<int>(std::ceil(exact - 1e-9 * std::max(1.0, exact))), 0, width);
}

RawImage inject(const RawImage& img, const FaultSpec& fault) {
  img.validate();
  fault.validate();
  RawImage out = img;
  const auto top = max_level(img.bit_depth);
  auto cover = [&](int columns) {
    NoiseSource noise(fault.seed, 1);
    const int level = std::min<int>(kCoverLevel, static_cast<int>(top));
    for (int y = 0; y < out.height; ++y) {
      for (int x = 0; x < columns; ++x) {
        out.at(x, y) = static_cast<std::uint16_t>(std::clamp(level + noise.next(), 0, static_cast<int>(top)));
      }
    }
  };
  switch (fault.kind) {
    case FaultKind::Cover:
      cover(out.width);
      break;
    case FaultKind::PartialCover:
      cover(covered_columns(fault.fraction, out.width));
      break;
    case FaultKind::Overexpose:
      for (auto& s : out.samples) s = clamp_level(fault.gain * s + fault.offset * top, img.bit_depth);
      break;
  }
  return out;
}

StereoPair apply_faults(StereoPair pair, const std::vector<FaultSpec>& faults) {
  for (const auto& f : faults) {
    RawImage& target = f.target == CameraSide::Left ? pair.left : pair.right;
    target = inject(target, f);
  }
  return pair;
}

FaultSpec parse_fault(std::string_view text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(':', start);
    parts.emplace_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  if (parts.size() < 2 || parts.size() > 3) {
    throw InvalidArgument("fault must look like KIND:TARGET[:PARAM], got '" + std::string(text) + "'");
  }
  FaultSpec f;
  if (parts[0] == "cover") {
    f.kind = FaultKind::Cover;
  } else if (parts[0] == "overexpose") {
    f.kind = FaultKind::Overexpose;
  } else if (parts[0] == "partial_cover") {
    f.kind = FaultKind::PartialCover;
  } else {
    throw InvalidArgument("unknown fault kind '" + parts[0] + "'");
  }
  if (parts[1] == "left") {
    f.target = CameraSide::Left;
  } else if (parts[1] == "right") {
    f.target = CameraSide::Right;
  } else {
    throw InvalidArgument("fault target must be left or right, got '" + parts[1] + "'");
  }
  if (parts.size() == 3) {
    double param = 0;
    try {
      std::size_t used = 0;
      param = std::stod(parts[2], &used);
      if (used != parts[2].size()) throw std::invalid_argument("trailing");
    } catch (const std::logic_error&) {
      throw InvalidArgument("bad fault parameter '" + parts[2] + "'");
    }
    if (f.kind == FaultKind::Overexpose) {
      f.gain = param;
    } else if (f.kind == FaultKind::PartialCover) {
      f.fraction = param;
    } else {
      throw InvalidArgument("cover takes no parameter");
    }
  }
  f.validate();
  return f;
}

}  // namespace saferules
