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

#include "asplund/distance_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "parallel.hpp"

namespace asplund {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_scale(const Image& f, const GreyScale& probe_scale) {
  if (f.scale() != probe_scale) {
    throw ShapeError("image and probe use different grey scales");
  }
}

void require_flat_level(double b0, const GreyScale& scale) {
  if (!(b0 > 0.0 && b0 < scale.M())) {
    std::ostringstream os;
    os << "flat probe level " << b0 << " outside ]0, M[";
    throw DomainError(os.str());
  }
}

// Output skeleton over the valid region of d, with strict positivity applied.
MaskedField make_output(const Image& f, const FlatDomain& d, const MapOptions& options) {
  MaskedField out(f.width(), f.height());
  const ValidRegion r = valid_region_for(d.offsets(), f.width(), f.height());
  if (r.empty()) {
    return out;
  }
  MaskedField window_min;
  if (options.strict_positivity) {
    window_min = erode_flat(f.grid(), d);
  }
  for (int y = r.y_begin; y < r.y_end; ++y) {
    for (int x = r.x_begin; x < r.x_end; ++x) {
      const bool touches_zero = options.strict_positivity && window_min.values.at(x, y) <= 0.0;
      out.valid[static_cast<std::size_t>(y) * f.width() + x] = touches_zero ? 0 : 1;
    }
  }
  return out;
}

// Evaluates reduce(ratios) at every valid pixel, where ratios[i] is
// tilde(f)(x + h_i) / tilde(B)(h_i).
template <class Reduce>
MaskedField scan_ratios(const Image& f, const StructuringFunction& b, const MapOptions& options,
                        Reduce reduce) {
  require_scale(f, b.scale());
  MaskedField out = make_output(f, b.domain(), options);
  const ValidRegion r = valid_region_for(b.offsets(), f.width(), f.height());
  const Grid t = tilde(f);
  const auto offsets = b.offsets();
  std::vector<double> tilde_b(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    tilde_b[i] = tilde(b.values()[i], b.scale().M());
  }
  detail::for_each_row(r.y_begin, r.y_end, options.threads, [&](int y) {
    std::vector<double> ratios(offsets.size());
    const std::size_t row_base = static_cast<std::size_t>(y) * f.width();
    for (int x = r.x_begin; x < r.x_end; ++x) {
      if (out.valid[row_base + x] == 0) {
        continue;
      }
      for (std::size_t i = 0; i < offsets.size(); ++i) {
        ratios[i] = t.at(x + offsets[i].dx, y + offsets[i].dy) / tilde_b[i];
      }
      out.values.at(x, y) = reduce(std::span<double>(ratios));
    }
  });
  return out;
}

double span_max(std::span<double> v) { return *std::max_element(v.begin(), v.end()); }
double span_min(std::span<double> v) { return *std::min_element(v.begin(), v.end()); }

// Upper and lower tolerance bounds: (n - k)-th and (k + 1)-th order statistics.
Bounds order_statistic_bounds(std::span<double> ratios, std::size_t k) {
  const std::size_t n = ratios.size();
  const auto upper = ratios.begin() + static_cast<std::ptrdiff_t>(n - k - 1);
  std::nth_element(ratios.begin(), upper, ratios.end());
  const auto lower = ratios.begin() + static_cast<std::ptrdiff_t>(k);
  std::nth_element(ratios.begin(), lower, upper);
  return {*upper, *lower};
}

}  // namespace

double log_ratio(double upper, double lower) {
  if (upper == lower) {
    return 0.0;
  }
  if (lower == 0.0 || upper == kInf) {
    return kInf;
  }
  return std::log(upper / lower);
}

std::size_t discarded_per_side(double p, std::size_t n) {
  if (!(p >= 0.0 && p < 0.5)) {
    std::ostringstream os;
    os << "tolerance " << p << " outside [0, 0.5)";
    throw ParameterError(os.str());
  }
  const auto k = static_cast<std::size_t>(std::floor(p * static_cast<double>(n)));
  if (2 * k >= n) {
    throw ParameterError("tolerance " + std::to_string(p) + " discards every point of a " +
                         std::to_string(n) + "-point probe");
  }
  return k;
}

Bounds asplund_bounds(std::span<const double> f, std::span<const double> g, GreyScale scale) {
  if (f.size() != g.size()) {
    throw ShapeError("asplund_distance: operands differ in size");
  }
  if (f.empty()) {
    throw ParameterError("asplund_distance: empty domain");
  }
  const double M = scale.M();
  Bounds b{-kInf, kInf};
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!(g[i] > 0.0 && g[i] < M)) {
      throw DomainError("asplund_distance: reference value " + std::to_string(g[i]) + " outside ]0, M[");
    }
    const double ratio = tilde(f[i], M) / tilde(g[i], M);
    b.lambda = std::max(b.lambda, ratio);
    b.mu = std::min(b.mu, ratio);
  }
  return b;
}

double asplund_distance(std::span<const double> f, std::span<const double> g, GreyScale scale) {
  const Bounds b = asplund_bounds(f, g, scale);
  return log_ratio(b.lambda, b.mu);
}

double asplund_distance(const Image& f, const Image& g) {
  if (f.width() != g.width() || f.height() != g.height()) {
    throw ShapeError("asplund_distance: image dimensions differ");
  }
  if (f.scale() != g.scale()) {
    throw ShapeError("asplund_distance: grey scales differ");
  }
  return asplund_distance(f.values(), g.values(), f.scale());
}

BoundMap lambda_map(const Image& f, const StructuringFunction& b, const MapOptions& options) {
  return {scan_ratios(f, b, options, span_max), BoundKind::kUpper};
}

BoundMap mu_map(const Image& f, const StructuringFunction& b, const MapOptions& options) {
  return {scan_ratios(f, b, options, span_min), BoundKind::kLower};
}

DistanceMap distance_map_general(const Image& f, const StructuringFunction& b, const MapOptions& options) {
  auto reduce = [](std::span<double> ratios) {
    auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
    return log_ratio(*hi, *lo);
  };
  return {scan_ratios(f, b, options, reduce), 0.0};
}

DistanceMap distance_map_flat(const Image& f, double b0, const FlatDomain& d, const MapOptions& options) {
  require_flat_level(b0, f.scale());
  MaskedField out = make_output(f, d, options);
  // Both extrema sample f(x + h): the dilation runs over the reflected domain.
  const MaskedField upper = dilate_flat(f.grid(), reflect(d));
  const MaskedField lower = erode_flat(f.grid(), d);
  const double M = f.M();
  const ValidRegion r = valid_region_for(d.offsets(), f.width(), f.height());
  detail::for_each_row(r.y_begin, r.y_end, options.threads, [&](int y) {
    for (int x = r.x_begin; x < r.x_end; ++x) {
      if (!out.is_valid(x, y)) {
        continue;
      }
      // tilde values are <= 0; their ratio equals lambda / mu for any b0.
      out.values.at(x, y) = log_ratio(-std::log1p(-upper.values.at(x, y) / M),
                                      -std::log1p(-lower.values.at(x, y) / M));
    }
  });
  return {std::move(out), 0.0};
}

DistanceMap distance_map_tolerance(const Image& f, const StructuringFunction& b, double p,
                                   const MapOptions& options) {
  if (b.is_flat()) {
    require_scale(f, b.scale());
    return distance_map_tolerance_flat(f, b.values().front(), b.domain(), p, options);
  }
  return distance_map_tolerance_sorted(f, b, p, options);
}

DistanceMap distance_map_tolerance_sorted(const Image& f, const StructuringFunction& b, double p,
                                          const MapOptions& options) {
  const std::size_t k = discarded_per_side(p, b.size());
  auto reduce = [k](std::span<double> ratios) {
    const Bounds bounds = order_statistic_bounds(ratios, k);
    return log_ratio(bounds.lambda, bounds.mu);
  };
  return {scan_ratios(f, b, options, reduce), p};
}

DistanceMap distance_map_tolerance_flat(const Image& f, double b0, const FlatDomain& d, double p,
                                        const MapOptions& options) {
  require_flat_level(b0, f.scale());
  const std::size_t n = d.size();
  const std::size_t k = discarded_per_side(p, n);
  MaskedField out = make_output(f, d, options);
  // tilde(.) / tilde(b0) is nondecreasing in the grey tone, so order
  // statistics of f map onto order statistics of the ratios.
  const MaskedField upper = rank_filter(f.grid(), d, static_cast<int>(n - k));
  const MaskedField lower = rank_filter(f.grid(), d, static_cast<int>(k + 1));
  const double M = f.M();
  const double tilde_b0 = tilde(b0, M);
  const ValidRegion r = valid_region_for(d.offsets(), f.width(), f.height());
  detail::for_each_row(r.y_begin, r.y_end, options.threads, [&](int y) {
    for (int x = r.x_begin; x < r.x_end; ++x) {
      if (!out.is_valid(x, y)) {
        continue;
      }
      const double lambda = std::log1p(-upper.values.at(x, y) / M) / tilde_b0;
      const double mu = std::log1p(-lower.values.at(x, y) / M) / tilde_b0;
      out.values.at(x, y) = log_ratio(lambda, mu);
    }
  });
  return {std::move(out), p};
}

}  // namespace asplund
