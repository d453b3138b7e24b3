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

// Asplund's distances under the LIP homothety.
//
// For an image f and a probe B, the least upper bound at x is the smallest
// alpha with f(x + h) <= alpha (x) B(h) for every h, and the greatest lower
// bound the largest beta with beta (x) B(h) <= f(x + h). Through the tilde
// transform both reduce to extrema of the ratio field
//
//     r(x, h) = tilde(f)(x + h) / tilde(B)(h),
//
// so the upper-bound map is a dilation and the lower-bound map an erosion of
// f, and the distance map is ln(upper / lower).
//
// Extended-real conventions shared by every path:
//   * a sample at f = M gives r = +inf;
//   * ln(a / b) with a == b (including 0/0 and inf/inf) is 0;
//   * ln(a / 0) and ln(inf / b) are +inf.

#include <cstddef>
#include <span>

#include "asplund/grid.hpp"
#include "asplund/lip.hpp"
#include "asplund/morphology.hpp"

namespace asplund {

enum class BoundKind { kUpper, kLower };

/// Per-pixel lambda_B f (kUpper) or mu_B f (kLower) over the valid region.
struct BoundMap {
  MaskedField field;
  BoundKind kind = BoundKind::kUpper;
};

/// Per-pixel Asplund distances in [0, +inf] over the valid region.
struct DistanceMap {
  MaskedField field;
  double tolerance = 0.0;

  int width() const noexcept { return field.width(); }
  int height() const noexcept { return field.height(); }
  bool is_valid(int x, int y) const { return field.is_valid(x, y); }
  double at(int x, int y) const { return field.values.at(x, y); }
};

struct MapOptions {
  /// Mark output pixels invalid when their window touches a zero grey tone,
  /// instead of letting the lower bound collapse to 0.
  bool strict_positivity = false;
  /// Rows are split across this many threads; output is bit-identical for
  /// any value. 0 means hardware concurrency.
  unsigned threads = 1;
};

struct Bounds {
  double lambda = 0.0;
  double mu = 0.0;
};

/// ln(upper / lower) with the extended-real conventions above.
double log_ratio(double upper, double lower);

/// k = floor(p * n), the count discarded at each extreme by a tolerance p.
/// Throws ParameterError unless 0 <= p < 0.5 and 2k < n.
std::size_t discarded_per_side(double p, std::size_t n);

/// Bounds and distance between two equal-size images. g must lie strictly
/// inside ]0, M[. Throws ShapeError on size mismatch and ParameterError on
/// empty input.
Bounds asplund_bounds(std::span<const double> f, std::span<const double> g, GreyScale scale = {});
double asplund_distance(std::span<const double> f, std::span<const double> g, GreyScale scale = {});
double asplund_distance(const Image& f, const Image& g);

BoundMap lambda_map(const Image& f, const StructuringFunction& b, const MapOptions& options = {});
BoundMap mu_map(const Image& f, const StructuringFunction& b, const MapOptions& options = {});

/// Exact map for an arbitrary probe, from the ratio field.
DistanceMap distance_map_general(const Image& f, const StructuringFunction& b,
                                 const MapOptions& options = {});

/// Exact map for the flat probe b0 over d, from one dilation and one erosion
/// of f. b0 cancels out; it is validated but does not affect the result.
DistanceMap distance_map_flat(const Image& f, double b0, const FlatDomain& d,
                              const MapOptions& options = {});

/// Map with tolerance p: per pixel the n ratios are ordered and the upper
/// and lower bounds are the (n - k)-th and (k + 1)-th order statistics, with
/// k = floor(p * n). Flat probes are routed to distance_map_tolerance_flat.
DistanceMap distance_map_tolerance(const Image& f, const StructuringFunction& b, double p,
                                   const MapOptions& options = {});

/// Sort-based tolerance map, for any probe.
DistanceMap distance_map_tolerance_sorted(const Image& f, const StructuringFunction& b, double p,
                                          const MapOptions& options = {});

/// Rank-filter tolerance map for the flat probe b0 over d. Agrees exactly
/// with distance_map_tolerance_sorted on StructuringFunction::flat(d, b0).
DistanceMap distance_map_tolerance_flat(const Image& f, double b0, const FlatDomain& d, double p,
                                        const MapOptions& options = {});

/// Definition-level bounds at one anchor by bisection on
/// f(x + h) <= alpha (x) B(h), evaluated with the LIP homothety directly.
/// Brackets start at [2^-20, 2^20] and grow geometrically. Throws
/// OracleFailure when the window holds a value at M or a bound cannot be
/// bracketed, and ParameterError when the window is not inside f or tol <= 0.
Bounds oracle_bounds(const Image& f, const StructuringFunction& b, Pixel anchor, double tol = 1e-9);

}  // namespace asplund
