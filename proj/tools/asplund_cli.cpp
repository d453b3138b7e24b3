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

// asplund: command-line front end for LIP Asplund distance maps.
//
// Exit codes: 0 success, 1 contract violation, 2 I/O or parse failure.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "asplund/distance_map.hpp"
#include "asplund/io.hpp"
#include "asplund/lip.hpp"
#include "asplund/matcher.hpp"
#include "asplund/morphology.hpp"

namespace fs = std::filesystem;
using namespace asplund;
using io::ProbeFile;

namespace {

constexpr int kExitContract = 1;
constexpr int kExitIo = 2;

struct GlobalOptions {
  double M = GreyScale::kDefaultM;
  bool invert = false;
  double clamp_floor = 1.0;
  bool strict_positivity = false;
  unsigned threads = 1;

  io::PgmOptions pgm() const { return {GreyScale(M), invert}; }
  MapOptions map() const { return {strict_positivity, threads}; }
  ExtractOptions extract() const { return {clamp_floor, strict_positivity}; }

  // Reads an image for distance computations: clamped unless strict.
  Image ingest(const fs::path& path) const {
    Image f = io::read_pgm(path, pgm());
    return strict_positivity ? f : clamp_floor_image(f);
  }

 private:
  Image clamp_floor_image(const Image& f) const { return asplund::clamp_floor(f, clamp_floor); }
};

Pixel parse_pair(const std::vector<int>& v, const char* what) {
  if (v.size() != 2) {
    throw ParameterError(std::string(what) + " expects x,y");
  }
  return {v[0], v[1]};
}

ProbeFile load_probe(const fs::path& path, const GlobalOptions& g) {
  ProbeFile probe = io::read_probe(path);
  if (probe.probe.scale() != GreyScale(g.M)) {
    throw ShapeError("probe file uses M = " + std::to_string(probe.probe.scale().M()) + " but --M is " +
                     std::to_string(g.M));
  }
  return probe;
}

ProbeFile probe_from_rect(const Image& f, const std::vector<int>& rect, const GlobalOptions& g) {
  if (rect.size() != 4) {
    throw ParameterError("--rect expects x,y,w,h");
  }
  const Pixel anchor{rect[0], rect[1]};
  const FlatDomain mask = FlatDomain::rectangle(0, 0, rect[2], rect[3]);
  return {extract_probe(f, mask, anchor, g.extract()), anchor};
}

ProbeFile probe_from_mask(const Image& f, const fs::path& mask_path, const std::vector<int>& anchor_arg,
                          const GlobalOptions& g) {
  const Image mask = io::read_pgm(mask_path);
  if (mask.width() != f.width() || mask.height() != f.height()) {
    throw ShapeError("mask and image dimensions differ");
  }
  std::vector<Pixel> pixels;
  int x0 = mask.width(), y0 = mask.height();
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (mask.at(x, y) > 0.0) {
        pixels.push_back({x, y});
        x0 = std::min(x0, x);
        y0 = std::min(y0, y);
      }
    }
  }
  if (pixels.empty()) {
    throw ParameterError("mask selects no pixel");
  }
  const Pixel anchor = anchor_arg.empty() ? Pixel{x0, y0} : parse_pair(anchor_arg, "--anchor");
  std::vector<Offset> offsets;
  offsets.reserve(pixels.size());
  for (const Pixel& p : pixels) {
    offsets.push_back({p.x - anchor.x, p.y - anchor.y});
  }
  return {extract_probe(f, FlatDomain(std::move(offsets)), anchor, g.extract()), anchor};
}

void emit(const std::optional<fs::path>& out, const std::string& text) {
  if (out) {
    io::write_file(*out, text);
  } else {
    std::cout << text;
  }
}

Connectivity to_connectivity(int c) {
  if (c == 4) return Connectivity::kFour;
  if (c == 8) return Connectivity::kEight;
  throw ParameterError("--connectivity must be 4 or 8");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LIP Asplund distance maps and illumination-invariant pattern matching"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--M", g.M, "Grey-scale bound M")->capture_default_str();
  app.add_flag("--invert", g.invert, "Invert the grey scale on read and write (file white -> LIP 0)");
  app.add_option("--clamp-floor", g.clamp_floor, "Raise grey tones below this floor on ingest")
      ->capture_default_str();
  app.add_flag("--strict-positivity", g.strict_positivity,
               "Do not clamp; windows touching a zero grey tone become invalid");
  app.add_option("--threads", g.threads, "Threads for map evaluation (0 = all cores)")->capture_default_str();

  // lipmul
  auto* lipmul = app.add_subcommand("lipmul", "LIP scalar multiplication of an image");
  fs::path lipmul_in, lipmul_out;
  double lipmul_k = 1.0;
  bool lipmul_ascii = false;
  lipmul->add_option("--in", lipmul_in, "Input PGM")->required();
  lipmul->add_option("--out", lipmul_out, "Output PGM")->required();
  lipmul->add_option("--k", lipmul_k, "Non-negative scalar")->required();
  lipmul->add_flag("--ascii", lipmul_ascii, "Write P2 instead of P5");

  // probe-extract
  auto* extract = app.add_subcommand("probe-extract", "Extract a probe from an image");
  fs::path extract_in, extract_out, extract_mask;
  std::vector<int> extract_rect, extract_anchor;
  extract->add_option("--in", extract_in, "Input PGM")->required();
  extract->add_option("--out", extract_out, "Output probe file")->required();
  auto* rect_opt = extract->add_option("--rect", extract_rect, "Rectangle x,y,w,h")->delimiter(',');
  auto* mask_opt = extract->add_option("--mask", extract_mask, "Mask PGM; nonzero pixels are kept");
  extract->add_option("--anchor", extract_anchor, "Anchor x,y for --mask (default: top-left)")->delimiter(',');
  rect_opt->excludes(mask_opt);

  // map
  auto* map_cmd = app.add_subcommand("map", "Compute a map of Asplund distances");
  fs::path map_in, map_probe, map_out;
  std::optional<fs::path> map_vis, map_mask_out;
  std::optional<double> map_flat;
  double map_tolerance = 0.0;
  map_cmd->add_option("--in", map_in, "Input PGM")->required();
  map_cmd->add_option("--probe", map_probe, "Probe file")->required();
  map_cmd->add_option("--out", map_out, "Output PFM")->required();
  map_cmd->add_option("--flat", map_flat, "Use the probe's domain with this constant level");
  map_cmd->add_option("--tolerance", map_tolerance, "Fraction p in [0, 0.5)")->capture_default_str();
  map_cmd->add_option("--vis", map_vis, "Optional 8-bit visualization PGM");
  map_cmd->add_option("--mask-out", map_mask_out, "Validity mask PGM (default: <out>.mask.pgm)");

  // detect
  auto* detect_cmd = app.add_subcommand("detect", "Detect thresholded minima of a distance map");
  fs::path detect_map;
  std::optional<fs::path> detect_mask, detect_out;
  double detect_threshold = kDefaultThreshold;
  int detect_connectivity = 8;
  detect_cmd->add_option("--map", detect_map, "Input PFM")->required();
  detect_cmd->add_option("--mask", detect_mask, "Validity mask PGM (default: sidecar when present)");
  detect_cmd->add_option("--threshold", detect_threshold, "Detection threshold")->capture_default_str();
  detect_cmd->add_option("--connectivity", detect_connectivity, "4 or 8")->capture_default_str();
  detect_cmd->add_option("--out", detect_out, "Detections file (default: stdout)");

  // pipeline
  auto* pipeline = app.add_subcommand("pipeline", "Darken, map with tolerance, detect");
  fs::path pipe_in;
  std::optional<fs::path> pipe_probe, pipe_out, pipe_map_out, pipe_darkened_out;
  std::vector<int> pipe_rect;
  PipelineOptions pipe;
  int pipe_connectivity = 8;
  pipeline->add_option("--in", pipe_in, "Input PGM")->required();
  auto* pipe_probe_opt = pipeline->add_option("--probe", pipe_probe, "Probe file");
  auto* pipe_rect_opt =
      pipeline->add_option("--rect", pipe_rect, "Extract the probe from the input at x,y,w,h")->delimiter(',');
  pipe_probe_opt->excludes(pipe_rect_opt);
  pipeline->add_option("--k", pipe.k, "LIP darkening factor")->capture_default_str();
  pipeline->add_option("--tolerance", pipe.tolerance, "Fraction p in [0, 0.5)")->capture_default_str();
  pipeline->add_option("--threshold", pipe.threshold, "Detection threshold")->capture_default_str();
  pipeline->add_option("--connectivity", pipe_connectivity, "4 or 8")->capture_default_str();
  pipeline->add_option("--out", pipe_out, "Detections file (default: stdout)");
  pipeline->add_option("--map-out", pipe_map_out, "Also write the distance map PFM");
  pipeline->add_option("--darkened-out", pipe_darkened_out, "Also write the darkened image PGM");

  // synth
  auto* synth = app.add_subcommand("synth", "Write the synthetic demo scene, its probe and ground truth");
  fs::path synth_image, synth_probe, synth_truth;
  std::uint64_t synth_seed = 2026;
  int synth_size = 256;
  double synth_noise = 0.0;
  synth->add_option("--out-image", synth_image, "Scene PGM")->required();
  synth->add_option("--out-probe", synth_probe, "Probe file")->required();
  synth->add_option("--out-truth", synth_truth, "Ground truth 'x y score' lines")->required();
  synth->add_option("--seed", synth_seed, "Random seed")->capture_default_str();
  synth->add_option("--size", synth_size, "Scene side length")->capture_default_str();
  synth->add_option("--noise", synth_noise, "Uniform noise amplitude")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitContract;
  }

  try {
    if (*lipmul) {
      const Image f = io::read_pgm(lipmul_in, g.pgm());
      io::write_pgm(lip_scalar_mul(lipmul_k, f), lipmul_out,
                    lipmul_ascii ? io::PgmEncoding::kAscii : io::PgmEncoding::kBinary, g.pgm());
    } else if (*extract) {
      const Image f = io::read_pgm(extract_in, g.pgm());
      if (extract_rect.empty() && extract_mask.empty()) {
        throw ParameterError("probe-extract needs --rect or --mask");
      }
      const ProbeFile probe = extract_rect.empty() ? probe_from_mask(f, extract_mask, extract_anchor, g)
                                                   : probe_from_rect(f, extract_rect, g);
      io::write_probe(probe, extract_out);
    } else if (*map_cmd) {
      const Image f = g.ingest(map_in);
      const ProbeFile probe = load_probe(map_probe, g);
      DistanceMap map;
      if (map_flat) {
        const FlatDomain& d = probe.probe.domain();
        map = map_tolerance == 0.0 ? distance_map_flat(f, *map_flat, d, g.map())
                                   : distance_map_tolerance_flat(f, *map_flat, d, map_tolerance, g.map());
      } else {
        map = distance_map(f, probe.probe, map_tolerance, g.map());
      }
      const io::MapWriteReport report = io::write_map(map, map_out, map_vis, map_mask_out);
      if (map.field.valid_count() == 0) {
        std::cerr << "warning: the probe does not fit inside the image; no valid pixel\n";
      }
      if (report.visualization_empty) {
        std::cerr << "warning: visualization is empty (no valid pixel)\n";
      }
    } else if (*detect_cmd) {
      std::optional<fs::path> mask = detect_mask;
      if (!mask && fs::exists(io::mask_path_for(detect_map))) {
        mask = io::mask_path_for(detect_map);
      }
      const DistanceMap map = io::read_map(detect_map, mask);
      emit(detect_out, io::format_detections(detect(map, detect_threshold, to_connectivity(detect_connectivity))));
    } else if (*pipeline) {
      const Image f = g.ingest(pipe_in);
      if (!pipe_probe && pipe_rect.empty()) {
        throw ParameterError("pipeline needs --probe or --rect");
      }
      const ProbeFile probe = pipe_probe ? load_probe(*pipe_probe, g) : probe_from_rect(f, pipe_rect, g);
      pipe.connectivity = to_connectivity(pipe_connectivity);
      pipe.map = g.map();
      const PipelineResult result = run_pipeline(f, probe.probe, pipe);
      if (pipe_map_out) {
        io::write_map(result.map, *pipe_map_out);
      }
      if (pipe_darkened_out) {
        io::write_pgm(result.darkened, *pipe_darkened_out, io::PgmEncoding::kBinary, g.pgm());
      }
      emit(pipe_out, io::format_detections(result.detections));
    } else if (*synth) {
      DemoScene demo = make_demo_scene(synth_seed, synth_size, GreyScale(g.M));
      Image scene = demo.scene.image;
      if (synth_noise > 0.0) {
        scene = add_uniform_noise(scene, synth_noise, synth_seed + 1);
      }
      io::write_pgm(scene, synth_image, io::PgmEncoding::kBinary, g.pgm());
      io::write_probe({demo.probe, demo.scene.ground_truth.front()}, synth_probe);
      std::vector<Detection> truth;
      for (const Pixel& p : demo.scene.ground_truth) {
        truth.push_back({p, 0.0, 0});
      }
      io::write_file(synth_truth, io::format_detections(truth));
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitContract;
  }
  return 0;
}
