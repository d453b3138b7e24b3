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

#include <random>
#include <vector>

#include "asplund/lip.hpp"
#include "asplund/morphology.hpp"

namespace asplund::bench {

inline Image random_image(int side, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(1, 255);
  std::vector<double> v(static_cast<std::size_t>(side) * side);
  for (double& x : v) x = dist(rng);
  return Image(side, side, std::move(v));
}

inline StructuringFunction random_square_probe(int side, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(8.0, 248.0);
  const FlatDomain d = FlatDomain::rectangle(-side / 2, -side / 2, side, side);
  std::vector<double> v(d.size());
  for (double& x : v) x = dist(rng);
  return StructuringFunction(d, std::move(v));
}

}  // namespace asplund::bench
