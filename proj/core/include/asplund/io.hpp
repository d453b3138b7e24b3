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

// File formats: PGM (P2/P5) images, PFM float maps with a PGM validity
// sidecar, textual probe files, and "x y score" detection lists.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "asplund/distance_map.hpp"
#include "asplund/lip.hpp"
#include "asplund/matcher.hpp"
#include "asplund/morphology.hpp"

namespace asplund::io {

enum class PgmEncoding { kAscii, kBinary };

struct PgmOptions {
  GreyScale scale;
  /// Apply invert_convention after reading / before writing.
  bool invert = false;
};

/// Decodes a P2 or P5 graymap with maxval <= 255. Grey tones are the raw
/// sample values. Throws ParseError with the offending byte offset.
Image decode_pgm(std::string_view bytes, const PgmOptions& options = {});
Image read_pgm(const std::filesystem::path& path, const PgmOptions& options = {});

/// Encodes with maxval 255; values are rounded to the nearest integer and
/// clamped to [0, 255].
std::string encode_pgm(const Image& f, PgmEncoding encoding = PgmEncoding::kBinary,
                       const PgmOptions& options = {});
void write_pgm(const Image& f, const std::filesystem::path& path,
               PgmEncoding encoding = PgmEncoding::kBinary, const PgmOptions& options = {});

/// Little-endian greyscale PFM ("Pf", scale -1.0), rows stored bottom to top.
std::string encode_pfm(const Grid& g);
Grid decode_pfm(std::string_view bytes);

/// Float grid with +inf at invalid pixels.
Grid map_to_float_grid(const MaskedField& field);

/// 8-bit visualization: valid finite values min-max normalized to [0, 255],
/// valid +inf at 255, invalid pixels at 0. `empty` is set when no valid
/// pixel exists, in which case the image is all 0.
struct Visualization {
  std::string pgm;
  bool empty = false;
};
Visualization encode_visualization(const MaskedField& field);

/// Sidecar mask path for a map file: "<stem>.mask.pgm" next to it.
std::filesystem::path mask_path_for(const std::filesystem::path& map_path);

struct MapWriteReport {
  std::filesystem::path pfm;
  std::filesystem::path mask;
  std::optional<std::filesystem::path> visualization;
  bool visualization_empty = false;
};

/// Writes the PFM grid and its validity mask, and the visualization when
/// a path is given.
MapWriteReport write_map(const DistanceMap& map, const std::filesystem::path& pfm_path,
                         const std::optional<std::filesystem::path>& visualization_path = std::nullopt,
                         const std::optional<std::filesystem::path>& mask_path = std::nullopt);

/// Reads a map back. Without a mask file, pixels are valid where finite.
DistanceMap read_map(const std::filesystem::path& pfm_path,
                     const std::optional<std::filesystem::path>& mask_path = std::nullopt);

/// A probe together with the image position it was extracted at.
struct ProbeFile {
  StructuringFunction probe;
  Pixel anchor;
};

std::string encode_probe(const ProbeFile& probe);
ProbeFile decode_probe(std::string_view text);
void write_probe(const ProbeFile& probe, const std::filesystem::path& path);
ProbeFile read_probe(const std::filesystem::path& path);

/// One "x y score" line per detection, score printed round-trip exact.
std::string format_detections(const std::vector<Detection>& detections);
std::vector<Detection> parse_detections(std::string_view text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace asplund::io
