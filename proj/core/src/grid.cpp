/*
 * Copyright 2026 The asplund-morph Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "asplund/grid.hpp"

#include <algorithm>
#include <string>

namespace asplund {

Grid::Grid(int width, int height, double fill)
    : width_(width), height_(height) {
  if (width < 0 || height < 0) {
    throw ShapeError("grid dimensions must be non-negative");
  }
  values_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

Grid::Grid(int width, int height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
  if (width < 0 || height < 0) {
    throw ShapeError("grid dimensions must be non-negative");
  }
  if (values_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw ShapeError("grid of " + std::to_string(width) + "x" + std::to_string(height) +
                     " given " + std::to_string(values_.size()) + " values");
  }
}

std::size_t MaskedField::valid_count() const noexcept {
  return static_cast<std::size_t>(std::count(valid.begin(), valid.end(), std::uint8_t{1}));
}

ValidRegion valid_region_for(std::span<const Offset> offsets, int width, int height) {
  if (offsets.empty()) {
    return {};
  }
  int min_dx = offsets.front().dx;
  int max_dx = min_dx;
  int min_dy = offsets.front().dy;
  int max_dy = min_dy;
  for (const Offset& h : offsets) {
    min_dx = std::min(min_dx, h.dx);
    max_dx = std::max(max_dx, h.dx);
    min_dy = std::min(min_dy, h.dy);
    max_dy = std::max(max_dy, h.dy);
  }
  // x + dx in [0, width) for all dx  <=>  x in [-min_dx, width - max_dx).
  ValidRegion r;
  r.x_begin = std::max(0, -min_dx);
  r.x_end = std::min(width, width - max_dx);
  r.y_begin = std::max(0, -min_dy);
  r.y_end = std::min(height, height - max_dy);
  return r;
}

}  // namespace asplund
