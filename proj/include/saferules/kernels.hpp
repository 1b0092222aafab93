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

#include "saferules/image.hpp"

namespace saferules::kernels {

/// Cell-mean luminance: every pixel of a 2x2 Bayer cell takes the mean of
/// the cell's four samples, rounded half-up. Dimensions and bit depth are kept.
MonoImage debayer_to_mono(const RawImage& raw);

Histogram histogram(const MonoImage& img);
/// Histogram of the raw mosaic samples.
Histogram histogram(const RawImage& raw);

/// Removes one-coefficient radial distortion about the principal point.
///
/// Output pixel (u, v) samples the source bilinearly at
///   c + (p - c) * (1 + k1 * r^2),  r^2 = |p - c|^2 / f^2,
/// rounded half-up. Samples falling outside the source become 0. k1 == 0
/// returns an exact copy.
MonoImage rectify(const MonoImage& img, const CalibrationInfo& calib);

/// Winner-take-all SAD block matching of left pixel (u, v) against right
/// pixel (u - d, v), d in [0, max_disparity]. Candidates whose right window
/// leaves the image are skipped, ties go to the smallest d, and the border
/// band of block/2 pixels is INVALID. Throws DimensionMismatch or
/// InvalidArgument (block even or < 3, negative max_disparity).
DisparityImage disparity(const MonoImage& left, const MonoImage& right, int block, int max_disparity);

/// Pinhole reprojection: z = f*B/d, x = (u-cx)*z/f, y = (v-cy)*z/f for every
/// valid pixel with d > 0, in row-major order.
PointCloud reproject(const DisparityImage& disp, const CalibrationInfo& calib);

/// Points inside the region (inclusive bounds), order preserved.
PointCloud in_area(const PointCloud& cloud, const Region& region);

}  // namespace saferules::kernels
