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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "asplund/errors.hpp"

namespace asplund {

/// Integer 2-D displacement; dx runs along columns, dy along rows.
struct Offset {
  int dx = 0;
  int dy = 0;

  friend constexpr bool operator==(const Offset&, const Offset&) = default;
  friend constexpr auto operator<=>(const Offset&, const Offset&) = default;
  constexpr Offset operator-() const { return {-dx, -dy}; }
};

/// Pixel coordinates inside a grid.
struct Pixel {
  int x = 0;
  int y = 0;

  friend constexpr bool operator==(const Pixel&, const Pixel&) = default;
};

/// Dense row-major grid of reals with no range restriction.
class Grid {
 public:
  Grid() = default;
  Grid(int width, int height, double fill = 0.0);
  Grid(int width, int height, std::vector<double> values);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  double& at(int x, int y) { return values_[index(x, y)]; }
  double at(int x, int y) const { return values_[index(x, y)]; }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> row(int y) const {
    return std::span<const double>(values_).subspan(index(0, y), static_cast<std::size_t>(width_));
  }

  bool contains(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }
  bool same_shape(const Grid& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> values_;
};

/// A grid paired with a per-pixel validity mask. Values at invalid pixels are
/// unspecified; every consumer must consult the mask.
struct MaskedField {
  Grid values;
  std::vector<std::uint8_t> valid;

  MaskedField() = default;
  MaskedField(int width, int height) : values(width, height), valid(values.size(), 0) {}

  int width() const noexcept { return values.width(); }
  int height() const noexcept { return values.height(); }
  bool is_valid(int x, int y) const {
    return valid[static_cast<std::size_t>(y) * static_cast<std::size_t>(width()) + static_cast<std::size_t>(x)] != 0;
  }
  std::size_t valid_count() const noexcept;
};

/// Rectangle of anchor positions whose whole window stays inside the image.
/// Empty when x_end <= x_begin or y_end <= y_begin.
struct ValidRegion {
  int x_begin = 0;
  int x_end = 0;
  int y_begin = 0;
  int y_end = 0;

  bool empty() const noexcept { return x_end <= x_begin || y_end <= y_begin; }
  bool contains(int x, int y) const noexcept {
    return x >= x_begin && x < x_end && y >= y_begin && y < y_end;
  }
};

/// Anchors x such that x + h is inside a width x height image for all h.
ValidRegion valid_region_for(std::span<const Offset> offsets, int width, int height);

}  // namespace asplund
