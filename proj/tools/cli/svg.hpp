// Copyright 2026 The Substinet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
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

#include "substinet/landscape.hpp"

namespace substinet::cli {

struct Marker {
  Point point;
  std::string label;
};

/// Self-contained SVG heatmap of a landscape. Diverging maps run blue
/// (negative) through white to red (positive) on a symmetric scale.
void write_heatmap_svg(std::ostream& out, const ContextLandscape& map, bool diverging,
                       const std::vector<Marker>& markers);

}  // namespace substinet::cli
