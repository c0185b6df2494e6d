// Copyright 2026 The shapeclass Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SHAPECLASS_SYNTH_HPP_
#define SHAPECLASS_SYNTH_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "shapeclass/raster.hpp"

namespace shapeclass {

/// The five shape classes, in fixed nominal order.
enum class ShapeClass : int {
  kDisk = 0,
  kRectangle = 1,
  kEllipse = 2,
  kRing = 3,
  kCross = 4,
};

inline constexpr int kShapeClassCount = 5;

const char* shape_class_name(ShapeClass cls);

struct GenParams {
  int image_size = 64;
  double scale_min = 0.3;  // shape diameter as a fraction of image size
  double scale_max = 0.8;
  double rotation_min_deg = 0.0;
  double rotation_max_deg = 180.0;
  double jitter = 0.5;  // boundary noise amplitude in pixels
  int background = 255;
  int foreground = 40;
  std::uint64_t seed = 0;
};

/// Renders one dark-on-light shape, deterministic in (cls, params, index).
/// The analytic boundary radius is perturbed by a smooth low-harmonic noise
/// function of amplitude `jitter` drawn from the ("synth", index) stream;
/// shapes keep a >= 2 pixel margin to the border.
GrayImage generate_image(ShapeClass cls, const GenParams& params, std::uint64_t index);

struct ManifestEntry {
  std::string filename;
  std::string shape_class;
};

struct SynthDataset {
  std::vector<GrayImage> images;  // parallel to manifest
  std::vector<ManifestEntry> manifest;
};

/// 5 * n_per_class images, balanced by construction, class-major order.
SynthDataset generate_dataset(int n_per_class, const GenParams& params);

/// "filename,class" CSV with header.
std::string manifest_csv(const std::vector<ManifestEntry>& manifest);
std::vector<ManifestEntry> parse_manifest_csv(const std::string& text);

}  // namespace shapeclass

#endif  // SHAPECLASS_SYNTH_HPP_
