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

#include "asplund/matcher.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <string>

namespace asplund {

namespace {

std::string where(Pixel p) { return "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")"; }

}  // namespace

StructuringFunction extract_probe(const Image& f, const FlatDomain& mask, Pixel anchor,
                                  const ExtractOptions& options) {
  std::vector<double> values;
  values.reserve(mask.size());
  for (const Offset& h : mask.offsets()) {
    const Pixel p{anchor.x + h.dx, anchor.y + h.dy};
    if (!f.grid().contains(p.x, p.y)) {
      throw ExtractionError("probe mask pixel " + where(p) + " lies outside the image");
    }
    double v = f.at(p.x, p.y);
    if (v >= f.M()) {
      throw ExtractionError("probe mask pixel " + where(p) + " is at the grey-scale bound M");
    }
    if (options.strict_positivity) {
      if (v <= 0.0) {
        throw ExtractionError("probe mask pixel " + where(p) + " is zero in strict mode");
      }
    } else {
      v = std::max(v, options.clamp_floor);
      if (!(v > 0.0 && v < f.M())) {
        throw ExtractionError("probe mask pixel " + where(p) + " stays outside ]0, M[ after clamping");
      }
    }
    values.push_back(v);
  }
  return StructuringFunction(mask, std::move(values), f.scale());
}

std::vector<Detection> detect(const DistanceMap& map, double threshold, Connectivity connectivity) {
  if (!(threshold > 0.0)) {
    throw ParameterError("detection threshold must be positive");
  }
  const int w = map.width();
  const int h = map.height();
  auto index = [w](int x, int y) { return static_cast<std::size_t>(y) * w + x; };
  std::vector<std::uint8_t> below(static_cast<std::size_t>(w) * h, 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      below[index(x, y)] = map.is_valid(x, y) && map.at(x, y) < threshold ? 1 : 0;
    }
  }

  std::vector<Detection> out;
  std::vector<Pixel> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (below[index(x, y)] == 0) {
        continue;
      }
      Detection d{{x, y}, map.at(x, y), 0};
      below[index(x, y)] = 0;
      stack.push_back({x, y});
      while (!stack.empty()) {
        const Pixel p = stack.back();
        stack.pop_back();
        ++d.extent;
        const double v = map.at(p.x, p.y);
        if (v < d.score || (v == d.score && std::pair(p.y, p.x) < std::pair(d.position.y, d.position.x))) {
          d.score = v;
          d.position = p;
        }
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if ((dx == 0 && dy == 0) || (connectivity == Connectivity::kFour && dx != 0 && dy != 0)) {
              continue;
            }
            const int nx = p.x + dx;
            const int ny = p.y + dy;
            if (nx < 0 || ny < 0 || nx >= w || ny >= h || below[index(nx, ny)] == 0) {
              continue;
            }
            below[index(nx, ny)] = 0;
            stack.push_back({nx, ny});
          }
        }
      }
      out.push_back(d);
    }
  }
  std::sort(out.begin(), out.end(), [](const Detection& a, const Detection& b) {
    if (a.score != b.score) {
      return a.score < b.score;
    }
    return std::pair(a.position.y, a.position.x) < std::pair(b.position.y, b.position.x);
  });
  return out;
}

Scene synthesize_scene(const SceneSpec& spec) {
  Grid canvas = spec.background.empty() ? Grid(spec.width, spec.height, spec.background_level) : spec.background;
  if (!spec.background.empty() && (canvas.width() != spec.width || canvas.height() != spec.height)) {
    throw GenerationError("background size does not match the canvas");
  }
  std::vector<std::uint8_t> occupied(canvas.size(), 0);
  Scene scene{Image(canvas, spec.scale), {}};
  for (const Placement& placement : spec.placements) {
    if (placement.pattern.scale() != spec.scale) {
      throw GenerationError("pattern grey scale differs from the scene's");
    }
    const auto offsets = placement.pattern.offsets();
    const auto values = placement.pattern.values();
    for (std::size_t i = 0; i < offsets.size(); ++i) {
      const int x = placement.anchor.x + offsets[i].dx;
      const int y = placement.anchor.y + offsets[i].dy;
      if (!canvas.contains(x, y)) {
        throw GenerationError("pattern at " + where(placement.anchor) + " leaves the canvas");
      }
      auto& slot = occupied[static_cast<std::size_t>(y) * canvas.width() + x];
      if (slot != 0) {
        throw GenerationError("pattern at " + where(placement.anchor) + " overlaps another pattern");
      }
      slot = 1;
      canvas.at(x, y) = lip_scalar_mul(placement.k, values[i], spec.scale.M());
    }
    scene.ground_truth.push_back(placement.anchor);
  }
  scene.image = Image(std::move(canvas), spec.scale);
  if (spec.noise_amplitude > 0.0) {
    scene.image = add_uniform_noise(scene.image, spec.noise_amplitude, spec.seed);
  }
  return scene;
}

Image add_uniform_noise(const Image& f, double amplitude, std::uint64_t seed) {
  if (!(amplitude >= 0.0)) {
    throw ParameterError("noise amplitude must be non-negative");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> noise(-amplitude, amplitude);
  Grid out = f.grid();
  const double top = f.M() - 1.0;
  for (double& v : out.values()) {
    v = std::clamp(v + noise(rng), 0.0, top);
  }
  return Image(std::move(out), f.scale());
}

StructuringFunction make_tile_probe(std::uint64_t seed, GreyScale scale) {
  constexpr int kSide = 13;
  constexpr int kWall = 4;
  std::mt19937_64 rng(seed);
  // Levels whose tilde magnitudes double from one to the next.
  std::vector<double> levels;
  for (int i = 0; i < 5; ++i) {
    levels.push_back(std::round(tilde_inverse(-0.12 * std::ldexp(1.0, i), scale.M())));
  }
  std::uniform_int_distribution<std::size_t> pick(0, levels.size() - 1);
  std::vector<Offset> offsets;
  std::vector<double> values;
  for (int dy = 0; dy < kSide; ++dy) {
    for (int dx = 0; dx < kSide; ++dx) {
      // Opening on the right side of the ring makes the domain non-convex.
      const bool hole = dx >= kWall && dy >= kWall && dy < kSide - kWall;
      if (hole) {
        continue;
      }
      offsets.push_back({dx, dy});
      values.push_back(levels[pick(rng)]);
    }
  }
  return StructuringFunction(FlatDomain(std::move(offsets)), std::move(values), scale);
}

DemoScene make_demo_scene(std::uint64_t seed, int size, GreyScale scale) {
  if (size < 64) {
    throw ParameterError("demo scene needs size >= 64");
  }
  StructuringFunction probe = make_tile_probe(seed, scale);
  std::mt19937_64 rng(seed ^ 0x9E3779B97F4A7C15ull);
  std::uniform_real_distribution<double> tone(20.0, 235.0);
  SceneSpec spec;
  spec.width = size;
  spec.height = size;
  spec.scale = scale;
  spec.background = Grid(size, size);
  for (double& v : spec.background.values()) {
    v = std::round(tone(rng));
  }
  const int q1 = size / 4 - 6;
  const int q3 = 3 * size / 4 - 6;
  const double scales[] = {1.0, 1.6, 0.7, 2.2};
  const Pixel anchors[] = {{q1, q1 + 3}, {q3 - 5, q1}, {q1 + 7, q3}, {q3, q3 - 4}};
  for (int i = 0; i < 4; ++i) {
    spec.placements.push_back({anchors[i], scales[i], probe});
  }
  return {synthesize_scene(spec), std::move(probe)};
}

DistanceMap distance_map(const Image& f, const StructuringFunction& probe, double p,
                         const MapOptions& options) {
  if (p == 0.0) {
    return distance_map_general(f, probe, options);
  }
  return distance_map_tolerance(f, probe, p, options);
}

PipelineResult run_pipeline(const Image& f, const StructuringFunction& probe, const PipelineOptions& options) {
  Image darkened = lip_scalar_mul(options.k, f);
  DistanceMap map = distance_map(darkened, probe, options.tolerance, options.map);
  std::vector<Detection> detections = detect(map, options.threshold, options.connectivity);
  return {std::move(darkened), std::move(map), std::move(detections)};
}

bool detected_near(const std::vector<Detection>& detections, Pixel p, int radius) {
  return std::any_of(detections.begin(), detections.end(), [&](const Detection& d) {
    return std::abs(d.position.x - p.x) <= radius && std::abs(d.position.y - p.y) <= radius;
  });
}

}  // namespace asplund
