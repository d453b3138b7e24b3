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

// Logarithmic Image Processing (LIP) grey-tone model.
//
// Grey tones live in [0, M[ with 0 meaning white (no obstacle) and values
// approaching M meaning black. The closed bound M is admitted in storage so
// the constant image f_M can represent the lattice's greatest element.

#include <vector>

#include "asplund/grid.hpp"

namespace asplund {

class GreyScale {
 public:
  static constexpr double kDefaultM = 256.0;

  constexpr GreyScale() = default;
  explicit GreyScale(double m);

  constexpr double M() const noexcept { return m_; }

  friend constexpr bool operator==(const GreyScale&, const GreyScale&) = default;

 private:
  double m_ = kDefaultM;
};

/// Grey-tone image: a grid whose values satisfy 0 <= v <= M and are finite.
class Image {
 public:
  /// Throws DomainError when a value is outside [0, M] or not finite, and
  /// ShapeError for non-positive dimensions.
  Image(Grid grid, GreyScale scale = {});
  Image(int width, int height, double fill, GreyScale scale = {});
  Image(int width, int height, std::vector<double> values, GreyScale scale = {});

  /// Constant image with every pixel at value.
  static Image constant(int width, int height, double value, GreyScale scale = {});

  int width() const noexcept { return grid_.width(); }
  int height() const noexcept { return grid_.height(); }
  std::size_t size() const noexcept { return grid_.size(); }
  const GreyScale& scale() const noexcept { return scale_; }
  double M() const noexcept { return scale_.M(); }

  double at(int x, int y) const { return grid_.at(x, y); }
  double operator[](std::size_t i) const { return grid_[i]; }
  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return grid_.values(); }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  Grid grid_;
  GreyScale scale_;
};

/// Superposition of two obstacles: f + g - f*g/M. Inputs must lie in [0, M[.
Image lip_add(const Image& f, const Image& g);

/// LIP homothety lambda (x) f = M - M (1 - f/M)^lambda for lambda >= 0.
/// lambda = 0 yields the constant-0 image, even where f = M.
Image lip_scalar_mul(double lambda, const Image& f);

/// Scalar forms of the two laws above.
double lip_add(double f, double g, double M);
double lip_scalar_mul(double lambda, double f, double M);

/// ln(1 - v/M): maps [0, M] onto [-inf, 0], strictly decreasing.
double tilde(double v, double M);
Grid tilde(const Image& f);

/// M (1 - exp(u)) for u <= 0.
double tilde_inverse(double u, double M);
Image tilde_inverse(const Grid& u, GreyScale scale);

/// (M - 1) - v: swaps the file convention (255 = white) and the LIP one (0 = white).
Image invert_convention(const Image& f);

/// Raises every value below floor to floor. floor must lie in [0, M].
Image clamp_floor(const Image& f, double floor);

/// Pointwise maximum and minimum of two images of the same shape and scale.
Image pointwise_max(const Image& f, const Image& g);
Image pointwise_min(const Image& f, const Image& g);

}  // namespace asplund
