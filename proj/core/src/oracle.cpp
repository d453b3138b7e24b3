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

#include <cmath>
#include <string>
#include <vector>

#include "asplund/distance_map.hpp"

namespace asplund {

namespace {

constexpr double kStartLow = 0x1p-20;
constexpr double kStartHigh = 0x1p20;
constexpr double kGrowthLimitLow = 0x1p-200;
constexpr double kGrowthLimitHigh = 0x1p200;
constexpr int kMaxIterations = 400;

// alpha (x) b straight from the homothety law, without the tilde transform.
double homothety(double alpha, double b, double M) { return M - M * std::pow(1.0 - b / M, alpha); }

struct Window {
  std::vector<double> f;
  std::vector<double> b;
  double M;

  // Every sample lies below the probe scaled by alpha.
  bool dominated_by(double alpha) const {
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (!(f[i] <= homothety(alpha, b[i], M))) {
        return false;
      }
    }
    return true;
  }

  // The probe scaled by beta lies below every sample.
  bool dominates(double beta) const {
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (!(homothety(beta, b[i], M) <= f[i])) {
        return false;
      }
    }
    return true;
  }
};

// Smallest alpha with pred(alpha), pred monotone false -> true.
template <class Pred>
double infimum(Pred pred, double tol) {
  double lo = kStartLow;
  double hi = kStartHigh;
  while (!pred(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > kGrowthLimitHigh) {
      throw OracleFailure("oracle: upper bound not reached below 2^200");
    }
  }
  while (pred(lo)) {
    hi = lo;
    lo *= 0.5;
    if (lo < kGrowthLimitLow) {
      return 0.0;
    }
  }
  for (int i = 0; i < kMaxIterations && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) {
      break;
    }
    (pred(mid) ? hi : lo) = mid;
  }
  return hi;
}

// Largest beta with pred(beta), pred monotone true -> false.
template <class Pred>
double supremum(Pred pred, double tol) {
  double lo = kStartLow;
  double hi = kStartHigh;
  while (pred(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > kGrowthLimitHigh) {
      throw OracleFailure("oracle: lower bound not bracketed below 2^200");
    }
  }
  while (!pred(lo)) {
    hi = lo;
    lo *= 0.5;
    if (lo < kGrowthLimitLow) {
      return 0.0;
    }
  }
  for (int i = 0; i < kMaxIterations && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) {
      break;
    }
    (pred(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

Bounds oracle_bounds(const Image& f, const StructuringFunction& b, Pixel anchor, double tol) {
  if (!(tol > 0.0)) {
    throw ParameterError("oracle tolerance must be positive");
  }
  Window w{{}, {b.values().begin(), b.values().end()}, f.M()};
  for (const Offset& h : b.offsets()) {
    const int x = anchor.x + h.dx;
    const int y = anchor.y + h.dy;
    if (!f.grid().contains(x, y)) {
      throw ParameterError("oracle: window at (" + std::to_string(anchor.x) + ", " +
                           std::to_string(anchor.y) + ") leaves the image");
    }
    if (f.at(x, y) >= f.M()) {
      throw OracleFailure("oracle: window holds a value at M");
    }
    w.f.push_back(f.at(x, y));
  }
  Bounds out;
  out.lambda = infimum([&](double a) { return w.dominated_by(a); }, tol);
  out.mu = supremum([&](double a) { return w.dominates(a); }, tol);
  return out;
}

}  // namespace asplund
