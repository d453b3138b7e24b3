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

#include "asplund/io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

namespace asplund::io {

namespace {

// Whitespace/comment-aware tokenizer over the textual parts of Netpbm files.
class Tokenizer {
 public:
  explicit Tokenizer(std::string_view bytes) : bytes_(bytes) {}

  std::size_t offset() const noexcept { return pos_; }

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') {
          ++pos_;
        }
      } else if (std::isspace(static_cast<unsigned char>(c)) != 0) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view token() {
    skip_space_and_comments();
    const std::size_t start = pos_;
    while (pos_ < bytes_.size() && std::isspace(static_cast<unsigned char>(bytes_[pos_])) == 0 &&
           bytes_[pos_] != '#') {
      ++pos_;
    }
    return bytes_.substr(start, pos_ - start);
  }

  long long integer(const char* what) {
    skip_space_and_comments();
    const std::size_t start = pos_;
    const std::string_view tok = token();
    long long value = 0;
    const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (tok.empty()) {
      throw ParseError(std::string("unexpected end of data while reading ") + what, start);
    }
    if (ec != std::errc() || end != tok.data() + tok.size()) {
      throw ParseError(std::string("malformed ") + what + " '" + std::string(tok) + "'", start);
    }
    return value;
  }

  // Binary rasters start after exactly one whitespace byte.
  void single_whitespace() {
    if (pos_ >= bytes_.size() || std::isspace(static_cast<unsigned char>(bytes_[pos_])) == 0) {
      throw ParseError("expected a single whitespace byte before the raster", pos_);
    }
    ++pos_;
  }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

std::string round_trip(double v) {
  char buf[64];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(n));
}

void put_float_le(std::string& out, float v) {
  auto bits = std::bit_cast<std::uint32_t>(v);
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<char>((bits >> (8 * i)) & 0xFFu));
  }
}

float get_float(std::string_view bytes, std::size_t at, bool little_endian) {
  std::uint32_t bits = 0;
  for (int i = 0; i < 4; ++i) {
    const auto byte = static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[at + i]));
    bits |= little_endian ? byte << (8 * i) : byte << (8 * (3 - i));
  }
  return std::bit_cast<float>(bits);
}

std::string encode_mask(const MaskedField& field) {
  Grid g(field.width(), field.height());
  for (std::size_t i = 0; i < g.size(); ++i) {
    g[i] = field.valid[i] != 0 ? 255.0 : 0.0;
  }
  return encode_pgm(Image(std::move(g)), PgmEncoding::kBinary);
}

}  // namespace

Image decode_pgm(std::string_view bytes, const PgmOptions& options) {
  Tokenizer tok(bytes);
  const std::string_view magic = tok.token();
  if (magic != "P2" && magic != "P5") {
    throw ParseError("not a PGM file (magic '" + std::string(magic) + "')", 0);
  }
  const std::size_t width_at = tok.offset();
  const long long width = tok.integer("width");
  const long long height = tok.integer("height");
  if (width <= 0 || height <= 0 || width > (1 << 20) || height > (1 << 20)) {
    throw ParseError("unsupported PGM dimensions", width_at);
  }
  const std::size_t maxval_at = tok.offset();
  const long long maxval = tok.integer("maxval");
  if (maxval > 255) {
    throw ParseError("PGM maxval " + std::to_string(maxval) + " is not supported (maximum is 255)",
                     maxval_at);
  }
  if (maxval < 1) {
    throw ParseError("PGM maxval must be at least 1", maxval_at);
  }
  const auto count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<double> values(count);
  if (magic == "P5") {
    tok.single_whitespace();
    const std::size_t start = tok.offset();
    if (bytes.size() - start < count) {
      throw ParseError("truncated PGM raster: expected " + std::to_string(count) + " bytes, found " +
                           std::to_string(bytes.size() - start),
                       bytes.size());
    }
    for (std::size_t i = 0; i < count; ++i) {
      const auto v = static_cast<unsigned char>(bytes[start + i]);
      if (v > maxval) {
        throw ParseError("sample exceeds maxval", start + i);
      }
      values[i] = v;
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      tok.skip_space_and_comments();
      const std::size_t at = tok.offset();
      const long long v = tok.integer("sample");
      if (v < 0 || v > maxval) {
        throw ParseError("sample " + std::to_string(v) + " outside [0, maxval]", at);
      }
      values[i] = static_cast<double>(v);
    }
  }
  Image image(static_cast<int>(width), static_cast<int>(height), std::move(values), options.scale);
  return options.invert ? invert_convention(image) : image;
}

Image read_pgm(const std::filesystem::path& path, const PgmOptions& options) {
  return decode_pgm(read_file(path), options);
}

std::string encode_pgm(const Image& f, PgmEncoding encoding, const PgmOptions& options) {
  const Image& src = f;
  const Image inverted = options.invert ? invert_convention(f) : f;
  const Image& image = options.invert ? inverted : src;
  std::string out = std::string(encoding == PgmEncoding::kBinary ? "P5" : "P2") + "\n" +
                    std::to_string(image.width()) + " " + std::to_string(image.height()) + "\n255\n";
  auto sample = [](double v) { return static_cast<int>(std::clamp(std::lround(v), 0L, 255L)); };
  if (encoding == PgmEncoding::kBinary) {
    out.reserve(out.size() + image.size());
    for (double v : image.values()) {
      out.push_back(static_cast<char>(static_cast<unsigned char>(sample(v))));
    }
  } else {
    for (int y = 0; y < image.height(); ++y) {
      for (int x = 0; x < image.width(); ++x) {
        out += std::to_string(sample(image.at(x, y)));
        out += x + 1 == image.width() ? '\n' : ' ';
      }
    }
  }
  return out;
}

void write_pgm(const Image& f, const std::filesystem::path& path, PgmEncoding encoding,
               const PgmOptions& options) {
  write_file(path, encode_pgm(f, encoding, options));
}

std::string encode_pfm(const Grid& g) {
  std::string out = "Pf\n" + std::to_string(g.width()) + " " + std::to_string(g.height()) + "\n-1.0\n";
  out.reserve(out.size() + 4 * g.size());
  for (int y = g.height() - 1; y >= 0; --y) {
    for (int x = 0; x < g.width(); ++x) {
      put_float_le(out, static_cast<float>(g.at(x, y)));
    }
  }
  return out;
}

Grid decode_pfm(std::string_view bytes) {
  Tokenizer tok(bytes);
  const std::string_view magic = tok.token();
  if (magic != "Pf") {
    throw ParseError("not a greyscale PFM file (magic '" + std::string(magic) + "')", 0);
  }
  const std::size_t dims_at = tok.offset();
  const long long width = tok.integer("width");
  const long long height = tok.integer("height");
  if (width <= 0 || height <= 0 || width > (1 << 20) || height > (1 << 20)) {
    throw ParseError("unsupported PFM dimensions", dims_at);
  }
  tok.skip_space_and_comments();
  const std::size_t scale_at = tok.offset();
  const std::string scale_text(tok.token());
  double scale = 0.0;
  try {
    std::size_t used = 0;
    scale = std::stod(scale_text, &used);
    if (used != scale_text.size()) {
      throw std::invalid_argument("trailing");
    }
  } catch (const std::exception&) {
    throw ParseError("malformed PFM scale '" + scale_text + "'", scale_at);
  }
  if (scale == 0.0) {
    throw ParseError("PFM scale must be nonzero", scale_at);
  }
  tok.single_whitespace();
  const std::size_t start = tok.offset();
  const auto count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (bytes.size() - start < 4 * count) {
    throw ParseError("truncated PFM raster: expected " + std::to_string(4 * count) + " bytes", bytes.size());
  }
  Grid g(static_cast<int>(width), static_cast<int>(height));
  std::size_t at = start;
  for (int y = g.height() - 1; y >= 0; --y) {
    for (int x = 0; x < g.width(); ++x, at += 4) {
      g.at(x, y) = get_float(bytes, at, scale < 0.0);
    }
  }
  return g;
}

Grid map_to_float_grid(const MaskedField& field) {
  Grid g(field.width(), field.height());
  for (std::size_t i = 0; i < g.size(); ++i) {
    g[i] = field.valid[i] != 0 ? field.values[i] : std::numeric_limits<double>::infinity();
  }
  return g;
}

Visualization encode_visualization(const MaskedField& field) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  bool any_valid = false;
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    if (field.valid[i] == 0) {
      continue;
    }
    any_valid = true;
    if (std::isfinite(field.values[i])) {
      lo = std::min(lo, field.values[i]);
      hi = std::max(hi, field.values[i]);
    }
  }
  Grid g(field.width(), field.height(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (field.valid[i] == 0) {
      continue;
    }
    const double v = field.values[i];
    if (!std::isfinite(v)) {
      g[i] = 255.0;
    } else if (hi > lo) {
      g[i] = std::round(255.0 * (v - lo) / (hi - lo));
    }
  }
  return {encode_pgm(Image(std::move(g)), PgmEncoding::kBinary), !any_valid};
}

std::filesystem::path mask_path_for(const std::filesystem::path& map_path) {
  std::filesystem::path p = map_path;
  p.replace_extension(".mask.pgm");
  return p;
}

MapWriteReport write_map(const DistanceMap& map, const std::filesystem::path& pfm_path,
                         const std::optional<std::filesystem::path>& visualization_path,
                         const std::optional<std::filesystem::path>& mask_path) {
  MapWriteReport report;
  report.pfm = pfm_path;
  report.mask = mask_path.value_or(mask_path_for(pfm_path));
  write_file(report.pfm, encode_pfm(map_to_float_grid(map.field)));
  write_file(report.mask, encode_mask(map.field));
  if (visualization_path) {
    Visualization vis = encode_visualization(map.field);
    write_file(*visualization_path, vis.pgm);
    report.visualization = visualization_path;
    report.visualization_empty = vis.empty;
  }
  return report;
}

DistanceMap read_map(const std::filesystem::path& pfm_path, const std::optional<std::filesystem::path>& mask_path) {
  DistanceMap map;
  Grid values = decode_pfm(read_file(pfm_path));
  map.field.valid.assign(values.size(), 0);
  if (mask_path) {
    const Image mask = read_pgm(*mask_path);
    if (mask.width() != values.width() || mask.height() != values.height()) {
      throw ShapeError("mask and map dimensions differ");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
      map.field.valid[i] = mask[i] > 0.0 ? 1 : 0;
    }
  } else {
    for (std::size_t i = 0; i < values.size(); ++i) {
      map.field.valid[i] = std::isfinite(values[i]) ? 1 : 0;
    }
  }
  map.field.values = std::move(values);
  return map;
}

std::string encode_probe(const ProbeFile& probe) {
  std::string out = "asplund-probe 1\n";
  out += "M " + round_trip(probe.probe.scale().M()) + "\n";
  out += "anchor " + std::to_string(probe.anchor.x) + " " + std::to_string(probe.anchor.y) + "\n";
  out += "points " + std::to_string(probe.probe.size()) + "\n";
  const auto offsets = probe.probe.offsets();
  const auto values = probe.probe.values();
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    out += std::to_string(offsets[i].dx) + " " + std::to_string(offsets[i].dy) + " " + round_trip(values[i]) + "\n";
  }
  return out;
}

ProbeFile decode_probe(std::string_view text) {
  Tokenizer tok(text);
  auto expect = [&](std::string_view keyword) {
    tok.skip_space_and_comments();
    const std::size_t at = tok.offset();
    const std::string_view got = tok.token();
    if (got != keyword) {
      throw ParseError("expected '" + std::string(keyword) + "', found '" + std::string(got) + "'", at);
    }
  };
  auto real = [&](const char* what) {
    tok.skip_space_and_comments();
    const std::size_t at = tok.offset();
    const std::string s(tok.token());
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used == s.size()) {
        return v;
      }
    } catch (const std::exception&) {
    }
    throw ParseError(std::string("malformed ") + what + " '" + s + "'", at);
  };

  expect("asplund-probe");
  const std::size_t version_at = tok.offset();
  if (tok.integer("version") != 1) {
    throw ParseError("unsupported probe file version", version_at);
  }
  expect("M");
  const double m = real("grey-scale bound");
  expect("anchor");
  Pixel anchor;
  anchor.x = static_cast<int>(tok.integer("anchor x"));
  anchor.y = static_cast<int>(tok.integer("anchor y"));
  expect("points");
  const std::size_t count_at = tok.offset();
  const long long n = tok.integer("point count");
  if (n <= 0 || n > (1 << 24)) {
    throw ParseError("probe point count must be positive", count_at);
  }
  std::vector<Offset> offsets;
  std::vector<double> values;
  for (long long i = 0; i < n; ++i) {
    Offset h;
    h.dx = static_cast<int>(tok.integer("offset dx"));
    h.dy = static_cast<int>(tok.integer("offset dy"));
    offsets.push_back(h);
    values.push_back(real("probe value"));
  }
  tok.skip_space_and_comments();
  if (tok.offset() != text.size()) {
    throw ParseError("trailing content after probe points", tok.offset());
  }
  GreyScale scale(m);
  return {StructuringFunction(FlatDomain(std::move(offsets)), std::move(values), scale), anchor};
}

void write_probe(const ProbeFile& probe, const std::filesystem::path& path) {
  write_file(path, encode_probe(probe));
}

ProbeFile read_probe(const std::filesystem::path& path) { return decode_probe(read_file(path)); }

std::string format_detections(const std::vector<Detection>& detections) {
  std::string out;
  for (const Detection& d : detections) {
    out += std::to_string(d.position.x) + " " + std::to_string(d.position.y) + " " + round_trip(d.score) + "\n";
  }
  return out;
}

std::vector<Detection> parse_detections(std::string_view text) {
  std::vector<Detection> out;
  std::size_t line_start = 0;
  while (line_start < text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) {
      line_end = text.size();
    }
    const std::string line(text.substr(line_start, line_end - line_start));
    if (line.find_first_not_of(" \t\r") != std::string::npos && line[line.find_first_not_of(" \t\r")] != '#') {
      std::istringstream is(line);
      Detection d;
      std::string extra;
      if (!(is >> d.position.x >> d.position.y >> d.score) || (is >> extra)) {
        throw ParseError("expected 'x y score', got '" + line + "'", line_start);
      }
      out.push_back(d);
    }
    line_start = line_end + 1;
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path.string() + "' for reading");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) {
    throw IoError("failed reading '" + path.string() + "'");
  }
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw IoError("failed writing '" + path.string() + "'");
  }
}

}  // namespace asplund::io
