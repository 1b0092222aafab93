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

#include <optional>
#include <string>

namespace saferules::rules {

enum class TypeKind { RawImage, MonoImage, DisparityImage, Histogram, Series, PointCloud, Region, Scalar, Boolean };

/// Physical meaning of a scalar. `None` is a bare literal; `Pixel` is the
/// `p` suffix, which stands for either a pixel count or an intensity level.
enum class Dimension { None, Count, Level, Ratio, Pixel };

struct SemanticType {
  TypeKind kind = TypeKind::Scalar;
  Dimension dim = Dimension::None;

  static SemanticType scalar(Dimension d) { return {TypeKind::Scalar, d}; }
  static SemanticType of(TypeKind k) { return {k, k == TypeKind::Series ? Dimension::Count : Dimension::None}; }

  friend bool operator==(const SemanticType&, const SemanticType&) = default;
};

std::string to_string(Dimension dim);
std::string to_string(const SemanticType& type);

/// Common dimension of two comparable or addable scalars, if any.
std::optional<Dimension> unify(Dimension a, Dimension b);

}  // namespace saferules::rules
