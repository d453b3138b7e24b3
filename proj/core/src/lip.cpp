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

#include "asplund/lip.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace asplund {

namespace {

std::string describe(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void require_same(const Image& f, const Image& g, const char* op) {
  if (f.width() != g.width() || f.height() != g.height()) {
    throw ShapeError(std::string(op) + ": image dimensions differ");
  }
  if (f.scale() != g.scale()) {
    throw ShapeError(std::string(op) + ": grey scales differ");
  }
}

void require_half_open(const Image& f, const char* op) {
  for (double v : f.values()) {
    if (v >= f.M()) {
      throw DomainError(std::string(op) + ": value " + describe(v) + " is not below M");
    }
  }
}

}  // namespace

GreyScale::GreyScale(double m) : m_(m) {
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw DomainError("grey scale bound M must be positive and finite, got " + describe(m));
  }
}

Image::Image(Grid grid, GreyScale scale) : grid_(std::move(grid)), scale_(scale) {
  if (grid_.width() <= 0 || grid_.height() <= 0) {
    throw ShapeError("image dimensions must be positive");
  }
  for (double v : grid_.values()) {
    if (!std::isfinite(v) || v < 0.0 || v > scale_.M()) {
      throw DomainError("grey tone " + describe(v) + " outside [0, " + describe(scale_.M()) + "]");
    }
  }
}

Image::Image(int width, int height, double fill, GreyScale scale)
    : Image(Grid(width, height, fill), scale) {}

Image::Image(int width, int height, std::vector<double> values, GreyScale scale)
    : Image(Grid(width, height, std::move(values)), scale) {}

Image Image::constant(int width, int height, double value, GreyScale scale) {
  return Image(width, height, value, scale);
}

double lip_add(double f, double g, double M) { return f + g - f * g / M; }

double lip_scalar_mul(double lambda, double f, double M) {
  if (lambda < 0.0 || std::isnan(lambda)) {
    throw DomainError("LIP scalar must be non-negative, got " + describe(lambda));
  }
  if (lambda == 0.0) {
    return 0.0;
  }
  // M (1 - (1 - f/M)^lambda), written through log1p/expm1 to keep precision
  // for light grey tones.
  return -M * std::expm1(lambda * std::log1p(-f / M));
}

Image lip_add(const Image& f, const Image& g) {
  require_same(f, g, "lip_add");
  require_half_open(f, "lip_add");
  require_half_open(g, "lip_add");
  Grid out(f.width(), f.height());
  const double M = f.M();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = lip_add(f[i], g[i], M);
  }
  return Image(std::move(out), f.scale());
}

Image lip_scalar_mul(double lambda, const Image& f) {
  Grid out(f.width(), f.height());
  const double M = f.M();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::clamp(lip_scalar_mul(lambda, f[i], M), 0.0, M);
  }
  return Image(std::move(out), f.scale());
}

double tilde(double v, double M) {
  if (!(v >= 0.0 && v <= M)) {
    throw DomainError("tilde: value " + describe(v) + " outside [0, M]");
  }
  return std::log1p(-v / M);
}

Grid tilde(const Image& f) {
  Grid out(f.width(), f.height());
  const double M = f.M();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::log1p(-f[i] / M);
  }
  return out;
}

double tilde_inverse(double u, double M) {
  if (!(u <= 0.0)) {
    throw DomainError("tilde_inverse: value " + describe(u) + " is positive");
  }
  return -M * std::expm1(u);
}

Image tilde_inverse(const Grid& u, GreyScale scale) {
  Grid out(u.width(), u.height());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::min(tilde_inverse(u[i], scale.M()), scale.M());
  }
  return Image(std::move(out), scale);
}

Image invert_convention(const Image& f) {
  const double top = f.M() - 1.0;
  Grid out(f.width(), f.height());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (f[i] > top) {
      throw DomainError("invert_convention: value " + describe(f[i]) + " exceeds M - 1");
    }
    out[i] = top - f[i];
  }
  return Image(std::move(out), f.scale());
}

Image clamp_floor(const Image& f, double floor) {
  if (!(floor >= 0.0 && floor <= f.M())) {
    throw ParameterError("clamp floor " + describe(floor) + " outside [0, M]");
  }
  Grid out = f.grid();
  for (double& v : out.values()) {
    v = std::max(v, floor);
  }
  return Image(std::move(out), f.scale());
}

Image pointwise_max(const Image& f, const Image& g) {
  require_same(f, g, "pointwise_max");
  Grid out(f.width(), f.height());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::max(f[i], g[i]);
  }
  return Image(std::move(out), f.scale());
}

Image pointwise_min(const Image& f, const Image& g) {
  require_same(f, g, "pointwise_min");
  Grid out(f.width(), f.height());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::min(f[i], g[i]);
  }
  return Image(std::move(out), f.scale());
}

}  // namespace asplund
