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

// Illumination-invariant pattern matching: probe extraction, synthetic
// scenes with known ground truth, and detection of thresholded minima in a
// distance map.

#include <cstdint>
#include <vector>

#include "asplund/distance_map.hpp"
#include "asplund/lip.hpp"
#include "asplund/morphology.hpp"

namespace asplund {

/// Defaults of the darkened-scene matching protocol.
inline constexpr double kDefaultDarkening = 0.3;
inline constexpr double kDefaultTolerance = 0.3;
inline constexpr double kDefaultThreshold = 0.7;

struct Detection {
  Pixel position;
  double score = 0.0;
  std::size_t extent = 0;

  friend bool operator==(const Detection&, const Detection&) = default;
};

enum class Connectivity { kFour = 4, kEight = 8 };

struct ExtractOptions {
  /// Masked values below this floor are raised to it. Ignored in strict mode.
  double clamp_floor = 1.0;
  /// Reject masked pixels at 0 instead of clamping them.
  bool strict_positivity = false;
};

/// Probe with the mask's offsets, relative to anchor, and the image values
/// at anchor + h. Throws ExtractionError when a masked pixel leaves the
/// image, sits at M, or (strict mode) sits at 0.
StructuringFunction extract_probe(const Image& f, const FlatDomain& mask, Pixel anchor,
                                  const ExtractOptions& options = {});

/// One detection per connected component of { valid, value < threshold },
/// located at the component's argmin (row-major first on ties), sorted by
/// ascending score and then row-major position. Throws ParameterError
/// unless threshold > 0.
std::vector<Detection> detect(const DistanceMap& map, double threshold,
                              Connectivity connectivity = Connectivity::kEight);

struct Placement {
  Pixel anchor;
  double k = 1.0;
  StructuringFunction pattern;
};

struct SceneSpec {
  int width = 0;
  int height = 0;
  /// Background grey tones; a constant is used when empty.
  Grid background;
  double background_level = 0.0;
  GreyScale scale;
  std::vector<Placement> placements;
  /// Uniform noise in [-amplitude, amplitude] added after planting, then
  /// clamped to [0, M - 1]. 0 disables it.
  double noise_amplitude = 0.0;
  std::uint64_t seed = 0;
};

struct Scene {
  Image image;
  std::vector<Pixel> ground_truth;
};

/// Plants k (x) pattern at every placement anchor. Throws GenerationError
/// when a pattern leaves the canvas or two patterns overlap.
Scene synthesize_scene(const SceneSpec& spec);

/// Adds seeded uniform noise in [-amplitude, amplitude], clamped to [0, M - 1].
Image add_uniform_noise(const Image& f, double amplitude, std::uint64_t seed);

/// Non-convex (C-shaped) 13 x 13 tile; each pixel takes one of five grey
/// levels whose tilde magnitudes are 0.12 * 2^i.
StructuringFunction make_tile_probe(std::uint64_t seed, GreyScale scale = {});

struct DemoScene {
  Scene scene;
  StructuringFunction probe;
};

/// size x size textured background with four copies of make_tile_probe(seed)
/// planted at LIP scales {1, 1.6, 0.7, 2.2}. No noise; size >= 64.
DemoScene make_demo_scene(std::uint64_t seed, int size = 256, GreyScale scale = {});

struct PipelineOptions {
  /// LIP darkening applied to the searched image.
  double k = kDefaultDarkening;
  /// 0 selects the exact map.
  double tolerance = kDefaultTolerance;
  double threshold = kDefaultThreshold;
  Connectivity connectivity = Connectivity::kEight;
  MapOptions map;
};

struct PipelineResult {
  Image darkened;
  DistanceMap map;
  std::vector<Detection> detections;
};

/// Distance map with optional tolerance: the exact map when p == 0, the
/// tolerance map otherwise.
DistanceMap distance_map(const Image& f, const StructuringFunction& probe, double p,
                         const MapOptions& options = {});

/// Darken f by k, map it against the probe, detect below the threshold.
PipelineResult run_pipeline(const Image& f, const StructuringFunction& probe,
                            const PipelineOptions& options = {});

/// True when some detection lies within Chebyshev distance `radius` of p.
bool detected_near(const std::vector<Detection>& detections, Pixel p, int radius = 1);

}  // namespace asplund
