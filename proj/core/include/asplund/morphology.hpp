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

// Translation-invariant grey-level morphology on real-valued grids.
//
// Border policy: an output pixel exists only when every sample its window
// needs lies inside the image; the validity mask of each MaskedField records
// this. Erosions and rank filters sample f(x + h), dilations sample f(x - h).

#include <span>
#include <vector>

#include "asplund/grid.hpp"
#include "asplund/lip.hpp"

namespace asplund {

/// Nonempty set of distinct integer displacements. Order is preserved as given.
class FlatDomain {
 public:
  explicit FlatDomain(std::vector<Offset> offsets);

  /// Full w x h rectangle of offsets starting at (x0, y0), row-major.
  static FlatDomain rectangle(int x0, int y0, int w, int h);
  /// Horizontal run {(first, 0), ..., (first + n - 1, 0)}.
  static FlatDomain row(int first, int n);

  std::span<const Offset> offsets() const noexcept { return offsets_; }
  std::size_t size() const noexcept { return offsets_.size(); }
  bool contains(Offset h) const;
  /// True when the offsets exactly fill their bounding box.
  bool is_rectangle() const noexcept { return rectangle_; }

  friend bool operator==(const FlatDomain&, const FlatDomain&) = default;

 private:
  std::vector<Offset> offsets_;
  bool rectangle_ = false;
};

/// Probe B: one grey tone per offset, each strictly inside ]0, M[.
class StructuringFunction {
 public:
  StructuringFunction(FlatDomain domain, std::vector<double> values, GreyScale scale = {});

  /// Constant probe b0 over domain.
  static StructuringFunction flat(FlatDomain domain, double b0, GreyScale scale = {});

  const FlatDomain& domain() const noexcept { return domain_; }
  std::span<const Offset> offsets() const noexcept { return domain_.offsets(); }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  const GreyScale& scale() const noexcept { return scale_; }
  bool is_flat() const noexcept;

  friend bool operator==(const StructuringFunction&, const StructuringFunction&) = default;

 private:
  FlatDomain domain_;
  std::vector<double> values_;
  GreyScale scale_;
};

/// { -h : h in d }, same order.
FlatDomain reflect(const FlatDomain& d);

/// sup { f(x - h) : h in d }. Rectangular domains take a separable
/// van Herk / Gil-Werman path; results are identical to the reference kernel.
MaskedField dilate_flat(const Grid& f, const FlatDomain& d);
/// inf { f(x + h) : h in d }.
MaskedField erode_flat(const Grid& f, const FlatDomain& d);

/// sup { f(x - h) + B(h) }. Values may leave [0, M].
MaskedField dilate_fn(const Grid& f, const StructuringFunction& b);
/// inf { f(x + h) - B(h) }.
MaskedField erode_fn(const Grid& f, const StructuringFunction& b);

/// rank-th smallest (1-based) of { f(x + h) : h in d }. rank 1 is erode_flat;
/// rank |d| is the window maximum, i.e. dilate_flat(f, reflect(d)).
/// Throws ParameterError unless 1 <= rank <= |d|.
MaskedField rank_filter(const Grid& f, const FlatDomain& d, int rank);

inline MaskedField dilate_flat(const Image& f, const FlatDomain& d) { return dilate_flat(f.grid(), d); }
inline MaskedField erode_flat(const Image& f, const FlatDomain& d) { return erode_flat(f.grid(), d); }
inline MaskedField dilate_fn(const Image& f, const StructuringFunction& b) { return dilate_fn(f.grid(), b); }
inline MaskedField erode_fn(const Image& f, const StructuringFunction& b) { return erode_fn(f.grid(), b); }
inline MaskedField rank_filter(const Image& f, const FlatDomain& d, int rank) {
  return rank_filter(f.grid(), d, rank);
}

/// Straightforward O(|d|)-per-pixel kernels. The optimized entry points above
/// must agree with these bit for bit.
namespace reference {
MaskedField dilate_flat(const Grid& f, const FlatDomain& d);
MaskedField erode_flat(const Grid& f, const FlatDomain& d);
MaskedField rank_filter(const Grid& f, const FlatDomain& d, int rank);
}  // namespace reference

}  // namespace asplund
