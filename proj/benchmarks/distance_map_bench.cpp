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

#include <benchmark/benchmark.h>

#include "asplund/distance_map.hpp"
#include "bench_support.hpp"

namespace asplund {
namespace {

void BM_GeneralMap(benchmark::State& state) {
  const Image f = bench::random_image(512, 4);
  const StructuringFunction b = bench::random_square_probe(static_cast<int>(state.range(0)), 5);
  const MapOptions options{false, static_cast<unsigned>(state.range(1))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(distance_map_general(f, b, options));
  }
}
BENCHMARK(BM_GeneralMap)->Args({5, 1})->Args({21, 1})->Args({21, 4})->Unit(benchmark::kMillisecond);

void BM_FlatMap(benchmark::State& state) {
  const Image f = bench::random_image(512, 6);
  const int s = static_cast<int>(state.range(0));
  const FlatDomain d = FlatDomain::rectangle(-s / 2, -s / 2, s, s);
  for (auto _ : state) {
    benchmark::DoNotOptimize(distance_map_flat(f, 128.0, d));
  }
}
BENCHMARK(BM_FlatMap)->Arg(5)->Arg(21)->Unit(benchmark::kMillisecond);

void BM_ToleranceMap(benchmark::State& state) {
  const Image f = bench::random_image(256, 7);
  const StructuringFunction b = bench::random_square_probe(static_cast<int>(state.range(0)), 8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(distance_map_tolerance(f, b, 0.3));
  }
}
BENCHMARK(BM_ToleranceMap)->Arg(5)->Arg(13)->Unit(benchmark::kMillisecond);

void BM_FlatToleranceMap(benchmark::State& state) {
  const Image f = bench::random_image(256, 9);
  const int s = static_cast<int>(state.range(0));
  const FlatDomain d = FlatDomain::rectangle(-s / 2, -s / 2, s, s);
  for (auto _ : state) {
    benchmark::DoNotOptimize(distance_map_tolerance_flat(f, 128.0, d, 0.3));
  }
}
BENCHMARK(BM_FlatToleranceMap)->Arg(5)->Arg(13)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace asplund
