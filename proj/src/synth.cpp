// Copyright 2026 The shapeclass Authors.
// SPDX-License-Identifier: Apache-2.0

#include "shapeclass/synth.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "shapeclass/error.hpp"
#include "shapeclass/prng.hpp"

namespace shapeclass {

namespace {

constexpr int kNoiseHarmonics = 4;

// Smooth periodic boundary perturbation, |value| <= amplitude.
struct BoundaryNoise {
  double amplitude = 0.0;
  double amps[kNoiseHarmonics] = {};
  double phases[kNoiseHarmonics] = {};
  double norm = 0.0;

  static BoundaryNoise draw(Prng& rng, double amplitude) {
    BoundaryNoise n;
    n.amplitude = amplitude;
    for (int h = 0; h < kNoiseHarmonics; ++h) {
      n.amps[h] = rng.next_double();
      n.phases[h] = rng.next_in(0.0, 2.0 * std::numbers::pi);
      n.norm += n.amps[h];
    }
    return n;
  }

  double at(double theta) const {
    if (amplitude == 0.0 || norm == 0.0) return 0.0;
    double v = 0.0;
    for (int h = 0; h < kNoiseHarmonics; ++h) {
      v += amps[h] * std::cos((h + 1) * theta + phases[h]);
    }
    return amplitude * v / norm;
  }
};

double rect_radius(double half_a, double half_b, double theta) {
  const double c = std::abs(std::cos(theta));
  const double s = std::abs(std::sin(theta));
  return std::min(half_a / std::max(c, 1e-12), half_b / std::max(s, 1e-12));
}

double ellipse_radius(double a, double b, double theta) {
  const double c = b * std::cos(theta);
  const double s = a * std::sin(theta);
  return a * b / std::sqrt(c * c + s * s);
}

}  // namespace

const char* shape_class_name(ShapeClass cls) {
  switch (cls) {
    case ShapeClass::kDisk: return "disk";
    case ShapeClass::kRectangle: return "rectangle";
    case ShapeClass::kEllipse: return "ellipse";
    case ShapeClass::kRing: return "ring";
    case ShapeClass::kCross: return "cross";
  }
  throw Error("invalid shape class");
}

GrayImage generate_image(ShapeClass cls, const GenParams& params, std::uint64_t index) {
  const int size = params.image_size;
  if (size < 16) throw Error("image size must be at least 16");
  if (params.background < 0 || params.background > 255 || params.foreground < 0 ||
      params.foreground > 255) {
    throw Error("intensities must be in [0, 255]");
  }

  Prng rng = Prng::stream(params.seed, "synth", index);

  constexpr double kCenterWobble = 2.0;
  const double half = (size - 1) / 2.0;
  const double max_radius = half - 2.0 - params.jitter - kCenterWobble;
  if (max_radius < 1.5) throw Error("image too small for the requested jitter");

  const double scale = rng.next_in(params.scale_min, params.scale_max);
  double radius = std::min(scale * size / 2.0, max_radius);
  const double rot = rng.next_in(params.rotation_min_deg, params.rotation_max_deg) *
                     std::numbers::pi / 180.0;
  const double cx = half + rng.next_in(-kCenterWobble, kCenterWobble);
  const double cy = half + rng.next_in(-kCenterWobble, kCenterWobble);

  // class-specific shape parameters; aspect ranges keep rectangle and
  // ellipse populations distinguishable but overlapping in elongation
  double half_a = 0.0, half_b = 0.0;     // rectangle / cross arms
  double ell_a = 0.0, ell_b = 0.0;       // ellipse semi-axes
  double inner_radius = 0.0;             // ring
  switch (cls) {
    case ShapeClass::kDisk:
      break;
    case ShapeClass::kRectangle: {
      const double aspect = rng.next_in(2.2, 3.4);
      half_a = radius * aspect / std::sqrt(aspect * aspect + 1.0);
      half_b = half_a / aspect;
      break;
    }
    case ShapeClass::kEllipse: {
      const double aspect = rng.next_in(1.7, 2.6);
      ell_a = radius;
      ell_b = radius / aspect;
      break;
    }
    case ShapeClass::kRing:
      inner_radius = radius * rng.next_in(0.35, 0.55);
      break;
    case ShapeClass::kCross: {
      const double arm_ratio = rng.next_in(3.0, 4.5);
      half_a = radius * arm_ratio / std::sqrt(arm_ratio * arm_ratio + 1.0);
      half_b = half_a / arm_ratio;
      break;
    }
  }

  const BoundaryNoise noise = BoundaryNoise::draw(rng, params.jitter);
  BoundaryNoise inner_noise;
  if (cls == ShapeClass::kRing) {
    inner_noise = BoundaryNoise::draw(rng, params.jitter);
  }

  GrayImage img;
  img.width = size;
  img.height = size;
  img.data.assign(static_cast<std::size_t>(size) * size,
                  static_cast<std::uint8_t>(params.background));

  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double dx = x - cx;
      const double dy = y - cy;
      const double dist = std::sqrt(dx * dx + dy * dy);
      const double theta = std::atan2(dy, dx);
      const double rel = theta - rot;

      double boundary;
      switch (cls) {
        case ShapeClass::kDisk:
        case ShapeClass::kRing:
          boundary = radius;
          break;
        case ShapeClass::kRectangle:
          boundary = rect_radius(half_a, half_b, rel);
          break;
        case ShapeClass::kEllipse:
          boundary = ellipse_radius(ell_a, ell_b, rel);
          break;
        case ShapeClass::kCross:
          boundary = std::max(rect_radius(half_a, half_b, rel),
                              rect_radius(half_b, half_a, rel));
          break;
        default:
          boundary = radius;
      }

      bool inside = dist <= boundary + noise.at(theta);
      if (inside && cls == ShapeClass::kRing) {
        inside = dist >= inner_radius + inner_noise.at(theta);
      }
      if (inside) img.at(x, y) = static_cast<std::uint8_t>(params.foreground);
    }
  }
  return img;
}

SynthDataset generate_dataset(int n_per_class, const GenParams& params) {
  if (n_per_class < 1) throw Error("n_per_class must be at least 1");
  SynthDataset out;
  out.images.reserve(static_cast<std::size_t>(n_per_class) * kShapeClassCount);
  out.manifest.reserve(out.images.capacity());
  for (int c = 0; c < kShapeClassCount; ++c) {
    const auto cls = static_cast<ShapeClass>(c);
    for (int i = 0; i < n_per_class; ++i) {
      const std::uint64_t index =
          static_cast<std::uint64_t>(c) * static_cast<std::uint64_t>(n_per_class) +
          static_cast<std::uint64_t>(i);
      out.images.push_back(generate_image(cls, params, index));
      char name[64];
      std::snprintf(name, sizeof(name), "%s_%04d.pgm", shape_class_name(cls), i);
      out.manifest.push_back({name, shape_class_name(cls)});
    }
  }
  return out;
}

std::string manifest_csv(const std::vector<ManifestEntry>& manifest) {
  std::string out = "filename,class\n";
  for (const ManifestEntry& e : manifest) {
    out += e.filename;
    out += ",";
    out += e.shape_class;
    out += "\n";
  }
  return out;
}

std::vector<ManifestEntry> parse_manifest_csv(const std::string& text) {
  std::vector<ManifestEntry> entries;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1) continue;  // header
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) {
      throw DataParseError("manifest row needs 'filename,class'", line_no);
    }
    entries.push_back({line.substr(0, comma), line.substr(comma + 1)});
  }
  return entries;
}

}  // namespace shapeclass
