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

#include "asplund/morphology.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <string>

namespace asplund {

namespace {

bool fills_bounding_box(const std::vector<Offset>& offsets) {
  auto [min_x, max_x] = std::minmax_element(offsets.begin(), offsets.end(),
                                            [](Offset a, Offset b) { return a.dx < b.dx; });
  auto [min_y, max_y] = std::minmax_element(offsets.begin(), offsets.end(),
                                            [](Offset a, Offset b) { return a.dy < b.dy; });
  const long long w = static_cast<long long>(max_x->dx) - min_x->dx + 1;
  const long long h = static_cast<long long>(max_y->dy) - min_y->dy + 1;
  // Offsets are distinct, so filling the box is a matter of counting.
  return w * h == static_cast<long long>(offsets.size());
}

struct Box {
  int x0, y0, w, h;
};

Box bounding_box(std::span<const Offset> offsets) {
  int x0 = offsets.front().dx, x1 = x0, y0 = offsets.front().dy, y1 = y0;
  for (const Offset& o : offsets) {
    x0 = std::min(x0, o.dx);
    x1 = std::max(x1, o.dx);
    y0 = std::min(y0, o.dy);
    y1 = std::max(y1, o.dy);
  }
  return {x0, y0, x1 - x0 + 1, y1 - y0 + 1};
}

void mark_valid(MaskedField& out, const ValidRegion& r) {
  for (int y = r.y_begin; y < r.y_end; ++y) {
    for (int x = r.x_begin; x < r.x_end; ++x) {
      out.valid[static_cast<std::size_t>(y) * out.width() + x] = 1;
    }
  }
}

// Window extreme over samples f(x + h), h in offsets.
template <class Pick>
MaskedField naive_extreme(const Grid& f, std::span<const Offset> offsets, Pick pick) {
  MaskedField out(f.width(), f.height());
  const ValidRegion r = valid_region_for(offsets, f.width(), f.height());
  if (r.empty()) {
    return out;
  }
  mark_valid(out, r);
  for (int y = r.y_begin; y < r.y_end; ++y) {
    for (int x = r.x_begin; x < r.x_end; ++x) {
      double acc = f.at(x + offsets.front().dx, y + offsets.front().dy);
      for (const Offset& h : offsets.subspan(1)) {
        acc = pick(acc, f.at(x + h.dx, y + h.dy));
      }
      out.values.at(x, y) = acc;
    }
  }
  return out;
}

// out[s] = pick(in[s], ..., in[s + w - 1]) for s in [0, n - w], using
// van Herk / Gil-Werman prefix and suffix scans over blocks of length w.
template <class Pick>
void sliding_extreme(std::span<const double> in, int w, std::span<double> out,
                     std::vector<double>& prefix, std::vector<double>& suffix, Pick pick) {
  const int n = static_cast<int>(in.size());
  prefix.resize(in.size());
  suffix.resize(in.size());
  for (int start = 0; start < n; start += w) {
    const int stop = std::min(start + w, n);
    prefix[start] = in[start];
    for (int i = start + 1; i < stop; ++i) {
      prefix[i] = pick(prefix[i - 1], in[i]);
    }
    suffix[stop - 1] = in[stop - 1];
    for (int i = stop - 2; i >= start; --i) {
      suffix[i] = pick(suffix[i + 1], in[i]);
    }
  }
  for (int s = 0; s + w <= n; ++s) {
    out[s] = w == 1 ? in[s] : pick(suffix[s], prefix[s + w - 1]);
  }
}

template <class Pick>
MaskedField separable_extreme(const Grid& f, std::span<const Offset> offsets, Pick pick) {
  MaskedField out(f.width(), f.height());
  const ValidRegion r = valid_region_for(offsets, f.width(), f.height());
  if (r.empty()) {
    return out;
  }
  mark_valid(out, r);
  const Box box = bounding_box(offsets);
  const int nx = r.x_end - r.x_begin;
  std::vector<double> prefix, suffix;

  // Horizontal pass over every source row, then vertical over the results.
  Grid horizontal(nx, f.height());
  std::vector<double> row_out(static_cast<std::size_t>(f.width()));
  for (int y = 0; y < f.height(); ++y) {
    std::span<const double> row = f.row(y).subspan(static_cast<std::size_t>(r.x_begin + box.x0),
                                                   static_cast<std::size_t>(nx + box.w - 1));
    sliding_extreme(row, box.w, std::span<double>(row_out).first(row.size()), prefix, suffix, pick);
    for (int i = 0; i < nx; ++i) {
      horizontal.at(i, y) = row_out[i];
    }
  }
  const int ny = r.y_end - r.y_begin;
  std::vector<double> column(static_cast<std::size_t>(ny + box.h - 1));
  std::vector<double> col_out(column.size());
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < static_cast<int>(column.size()); ++j) {
      column[j] = horizontal.at(i, r.y_begin + box.y0 + j);
    }
    sliding_extreme(std::span<const double>(column), box.h, std::span<double>(col_out), prefix, suffix,
                    pick);
    for (int j = 0; j < ny; ++j) {
      out.values.at(r.x_begin + i, r.y_begin + j) = col_out[j];
    }
  }
  return out;
}

constexpr auto kMax = [](double a, double b) { return std::max(a, b); };
constexpr auto kMin = [](double a, double b) { return std::min(a, b); };

std::vector<Offset> negated(std::span<const Offset> offsets) {
  std::vector<Offset> out;
  out.reserve(offsets.size());
  for (const Offset& h : offsets) {
    out.push_back(-h);
  }
  return out;
}

void check_rank(const FlatDomain& d, int rank) {
  if (rank < 1 || static_cast<std::size_t>(rank) > d.size()) {
    throw ParameterError("rank " + std::to_string(rank) + " outside [1, " + std::to_string(d.size()) +
                         "]");
  }
}

}  // namespace

FlatDomain::FlatDomain(std::vector<Offset> offsets) : offsets_(std::move(offsets)) {
  if (offsets_.empty()) {
    throw ParameterError("flat domain must be nonempty");
  }
  std::vector<Offset> sorted = offsets_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ParameterError("flat domain contains duplicate offsets");
  }
  rectangle_ = fills_bounding_box(offsets_);
}

FlatDomain FlatDomain::rectangle(int x0, int y0, int w, int h) {
  if (w <= 0 || h <= 0) {
    throw ParameterError("rectangle must have positive extent");
  }
  std::vector<Offset> offsets;
  offsets.reserve(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
  for (int dy = 0; dy < h; ++dy) {
    for (int dx = 0; dx < w; ++dx) {
      offsets.push_back({x0 + dx, y0 + dy});
    }
  }
  return FlatDomain(std::move(offsets));
}

FlatDomain FlatDomain::row(int first, int n) { return rectangle(first, 0, n, 1); }

bool FlatDomain::contains(Offset h) const {
  return std::find(offsets_.begin(), offsets_.end(), h) != offsets_.end();
}

StructuringFunction::StructuringFunction(FlatDomain domain, std::vector<double> values, GreyScale scale)
    : domain_(std::move(domain)), values_(std::move(values)), scale_(scale) {
  if (values_.size() != domain_.size()) {
    throw ShapeError("structuring function needs one value per offset");
  }
  for (double v : values_) {
    if (!(v > 0.0 && v < scale_.M())) {
      throw DomainError("probe value " + std::to_string(v) + " outside ]0, M[");
    }
  }
}

StructuringFunction StructuringFunction::flat(FlatDomain domain, double b0, GreyScale scale) {
  std::vector<double> values(domain.size(), b0);
  return StructuringFunction(std::move(domain), std::move(values), scale);
}

bool StructuringFunction::is_flat() const noexcept {
  return std::adjacent_find(values_.begin(), values_.end(), std::not_equal_to<>()) == values_.end();
}

FlatDomain reflect(const FlatDomain& d) { return FlatDomain(negated(d.offsets())); }

MaskedField dilate_flat(const Grid& f, const FlatDomain& d) {
  const std::vector<Offset> window = negated(d.offsets());
  if (d.is_rectangle() && d.size() > 1) {
    return separable_extreme(f, window, kMax);
  }
  return naive_extreme(f, window, kMax);
}

MaskedField erode_flat(const Grid& f, const FlatDomain& d) {
  if (d.is_rectangle() && d.size() > 1) {
    return separable_extreme(f, d.offsets(), kMin);
  }
  return naive_extreme(f, d.offsets(), kMin);
}

MaskedField dilate_fn(const Grid& f, const StructuringFunction& b) {
  MaskedField out(f.width(), f.height());
  const std::vector<Offset> window = negated(b.offsets());
  const ValidRegion r = valid_region_for(window, f.width(), f.height());
  if (r.empty()) {
    return out;
  }
  mark_valid(out, r);
  const auto values = b.values();
  for (int y = r.y_begin; y < r.y_end; ++y) {
    for (int x = r.x_begin; x < r.x_end; ++x) {
      double acc = -HUGE_VAL;
      for (std::size_t i = 0; i < window.size(); ++i) {
        acc = std::max(acc, f.at(x + window[i].dx, y + window[i].dy) + values[i]);
      }
      out.values.at(x, y) = acc;
    }
  }
  return out;
}

MaskedField erode_fn(const Grid& f, const StructuringFunction& b) {
  MaskedField out(f.width(), f.height());
  const auto offsets = b.offsets();
  const ValidRegion r = valid_region_for(offsets, f.width(), f.height());
  if (r.empty()) {
    return out;
  }
  mark_valid(out, r);
  const auto values = b.values();
  for (int y = r.y_begin; y < r.y_end; ++y) {
    for (int x = r.x_begin; x < r.x_end; ++x) {
      double acc = HUGE_VAL;
      for (std::size_t i = 0; i < offsets.size(); ++i) {
        acc = std::min(acc, f.at(x + offsets[i].dx, y + offsets[i].dy) - values[i]);
      }
      out.values.at(x, y) = acc;
    }
  }
  return out;
}

MaskedField rank_filter(const Grid& f, const FlatDomain& d, int rank) {
  check_rank(d, rank);
  if (rank == 1) {
    return erode_flat(f, d);
  }
  if (static_cast<std::size_t>(rank) == d.size()) {
    return dilate_flat(f, reflect(d));
  }
  return reference::rank_filter(f, d, rank);
}

namespace reference {

MaskedField dilate_flat(const Grid& f, const FlatDomain& d) {
  return naive_extreme(f, negated(d.offsets()), kMax);
}

MaskedField erode_flat(const Grid& f, const FlatDomain& d) { return naive_extreme(f, d.offsets(), kMin); }

MaskedField rank_filter(const Grid& f, const FlatDomain& d, int rank) {
  check_rank(d, rank);
  MaskedField out(f.width(), f.height());
  const auto offsets = d.offsets();
  const ValidRegion r = valid_region_for(offsets, f.width(), f.height());
  if (r.empty()) {
    return out;
  }
  mark_valid(out, r);
  std::vector<double> window(offsets.size());
  const auto nth = window.begin() + (rank - 1);
  for (int y = r.y_begin; y < r.y_end; ++y) {
    for (int x = r.x_begin; x < r.x_end; ++x) {
      for (std::size_t i = 0; i < offsets.size(); ++i) {
        window[i] = f.at(x + offsets[i].dx, y + offsets[i].dy);
      }
      std::nth_element(window.begin(), nth, window.end());
      out.values.at(x, y) = *nth;
    }
  }
  return out;
}

}  // namespace reference

}  // namespace asplund
