// Copyright 2026 The shapeclass Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SHAPECLASS_SHAPEFEAT_HPP_
#define SHAPECLASS_SHAPEFEAT_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "shapeclass/labeling.hpp"

namespace shapeclass {

/// Pixel count, centroid, and normalized second central moments of a region.
/// Each pixel is treated as a unit square, hence the +1/12 on uxx/uyy.
struct CentralMoments {
  std::size_t n = 0;
  double cx = 0.0, cy = 0.0;
  double uxx = 0.0, uyy = 0.0, uxy = 0.0;
};

/// Equivalent-ellipse quantities derived from the second moments.
struct EllipseFeatures {
  double major_axis_length = 0.0;
  double minor_axis_length = 0.0;
  double eccentricity = 0.0;   // in [0, 1)
  double orientation_deg = 0.0;  // in (-90, 90], y-up convention
};

/// The 11 shape descriptors of one region, in fixed order.
struct FeatureVector {
  double area = 0.0;
  double major_axis_length = 0.0;
  double minor_axis_length = 0.0;
  double eccentricity = 0.0;
  double orientation = 0.0;
  double convex_area = 0.0;
  double filled_area = 0.0;
  double euler_number = 0.0;
  double equiv_diameter = 0.0;
  double solidity = 0.0;
  double extent = 0.0;

  static constexpr std::size_t kCount = 11;
  static const std::array<const char*, kCount>& names();
  std::array<double, kCount> values() const;
};

CentralMoments central_moments(const Region& region);

/// Axis lengths scale as 2*sqrt(2)*sqrt(eigenvalue); the orientation angle
/// negates uxy to convert image row-down coordinates to the y-up convention.
/// Symmetric regions (uxy == 0, uxx == uyy) get orientation 0.
EllipseFeatures ellipse_features(const CentralMoments& m);

struct ConvexFeatures {
  std::uint64_t convex_area = 0;  // lattice points inside or on the hull
  double solidity = 0.0;          // area / convex_area
};

/// Convex hull (monotone chain) of the pixel centers; convex_area counts
/// integer lattice points inside or on the hull with exact integer tests.
/// Collinear regions degenerate to a segment of gcd(dx,dy)+1 points.
ConvexFeatures convex_features(const Region& region);

struct TopologyFeatures {
  std::uint64_t filled_area = 0;
  int euler_number = 1;  // 1 - hole_count
  int hole_count = 0;
};

/// Flood-fills background from a one-pixel ring around the bbox using the
/// dual connectivity (8-connected foreground -> 4-connected background and
/// vice versa); unreached background pixels are holes.
TopologyFeatures topology_features(const Region& region, int fg_connectivity = 8);

struct ScalarFeatures {
  std::uint64_t area = 0;
  double equiv_diameter = 0.0;  // sqrt(4 * area / pi)
  double extent = 0.0;          // area / (bbox width * bbox height)
};

ScalarFeatures scalar_features(const Region& region);

/// Full pipeline for one mask: label, take the largest component, and
/// assemble all 11 features. Throws EmptyMask when nothing is foreground.
FeatureVector extract_features(const BinaryMask& mask, int connectivity = 8);

/// Features of an already-isolated region.
FeatureVector region_features(const Region& region, int fg_connectivity = 8);

}  // namespace shapeclass

#endif  // SHAPECLASS_SHAPEFEAT_HPP_
