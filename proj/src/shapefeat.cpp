// Copyright 2026 The shapeclass Authors.
// SPDX-License-Identifier: Apache-2.0

#include "shapeclass/shapefeat.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "shapeclass/error.hpp"

namespace shapeclass {

namespace {

using i64 = std::int64_t;
using i128 = __int128;

i64 cross(const Pixel& o, const Pixel& a, const Pixel& b) {
  return static_cast<i64>(a.x - o.x) * (b.y - o.y) -
         static_cast<i64>(a.y - o.y) * (b.x - o.x);
}

// Monotone chain. Returns extreme points only (collinear points dropped),
// counterclockwise in (x, y) number space. Size 1 or 2 for degenerate input.
std::vector<Pixel> convex_hull(std::vector<Pixel> pts) {
  std::sort(pts.begin(), pts.end(), [](const Pixel& a, const Pixel& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t n = pts.size();
  if (n <= 2) return pts;

  std::vector<Pixel> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

// Exact rational x-coordinate, den > 0.
struct Frac {
  i64 num = 0;
  i64 den = 1;

  static Frac of(i64 n, i64 d) {
    if (d < 0) return {-n, -d};
    return {n, d};
  }
  bool operator<(const Frac& o) const {
    return static_cast<i128>(num) * o.den < static_cast<i128>(o.num) * den;
  }
};

i64 floor_frac(const Frac& f) {
  if (f.num >= 0) return f.num / f.den;
  return -((-f.num + f.den - 1) / f.den);
}

i64 ceil_frac(const Frac& f) {
  if (f.num >= 0) return (f.num + f.den - 1) / f.den;
  return -((-f.num) / f.den);
}

// Lattice points inside or on a counterclockwise convex polygon, counted
// row by row from the exact rational span of each scanline.
std::uint64_t lattice_points_in_hull(const std::vector<Pixel>& hull) {
  i64 min_y = hull[0].y, max_y = hull[0].y;
  for (const Pixel& p : hull) {
    min_y = std::min<i64>(min_y, p.y);
    max_y = std::max<i64>(max_y, p.y);
  }
  std::uint64_t count = 0;
  for (i64 y = min_y; y <= max_y; ++y) {
    bool any = false;
    Frac lo, hi;
    auto consider = [&](const Frac& f) {
      if (!any) {
        lo = hi = f;
        any = true;
      } else if (f < lo) {
        lo = f;
      } else if (hi < f) {
        hi = f;
      }
    };
    for (std::size_t i = 0; i < hull.size(); ++i) {
      const Pixel& a = hull[i];
      const Pixel& b = hull[(i + 1) % hull.size()];
      if (a.y == b.y) {
        if (a.y == y) {
          consider(Frac::of(a.x, 1));
          consider(Frac::of(b.x, 1));
        }
        continue;
      }
      if (y < std::min(a.y, b.y) || y > std::max(a.y, b.y)) continue;
      const i64 dy = b.y - a.y;
      const i64 dx = b.x - a.x;
      consider(Frac::of(static_cast<i64>(a.x) * dy + dx * (y - a.y), dy));
    }
    if (!any) continue;
    const i64 first = ceil_frac(lo);
    const i64 last = floor_frac(hi);
    if (last >= first) count += static_cast<std::uint64_t>(last - first + 1);
  }
  return count;
}

std::uint64_t lattice_points_on_segment(const Pixel& a, const Pixel& b) {
  const i64 dx = std::abs(static_cast<i64>(a.x) - b.x);
  const i64 dy = std::abs(static_cast<i64>(a.y) - b.y);
  return static_cast<std::uint64_t>(std::gcd(dx, dy)) + 1;
}

}  // namespace

const std::array<const char*, FeatureVector::kCount>& FeatureVector::names() {
  static const std::array<const char*, kCount> kNames = {
      "area",          "major_axis_length", "minor_axis_length", "eccentricity",
      "orientation",   "convex_area",       "filled_area",       "euler_number",
      "equiv_diameter", "solidity",         "extent"};
  return kNames;
}

std::array<double, FeatureVector::kCount> FeatureVector::values() const {
  return {area,         major_axis_length, minor_axis_length, eccentricity,
          orientation,  convex_area,       filled_area,       euler_number,
          equiv_diameter, solidity,        extent};
}

CentralMoments central_moments(const Region& region) {
  if (region.pixels.empty()) throw EmptyMask();
  const std::size_t n = region.pixels.size();
  // bbox-local coordinates make the moments bit-identical under integer
  // translation of the region
  i64 sx = 0, sy = 0;
  for (const Pixel& p : region.pixels) {
    sx += p.x - region.min_x;
    sy += p.y - region.min_y;
  }
  const double lcx = static_cast<double>(sx) / static_cast<double>(n);
  const double lcy = static_cast<double>(sy) / static_cast<double>(n);
  double sxx = 0, syy = 0, sxy = 0;
  for (const Pixel& p : region.pixels) {
    const double dx = (p.x - region.min_x) - lcx;
    const double dy = (p.y - region.min_y) - lcy;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  CentralMoments m;
  m.n = n;
  m.cx = region.min_x + lcx;
  m.cy = region.min_y + lcy;
  // pixel-as-unit-square correction on the axis-aligned moments
  m.uxx = sxx / static_cast<double>(n) + 1.0 / 12.0;
  m.uyy = syy / static_cast<double>(n) + 1.0 / 12.0;
  m.uxy = sxy / static_cast<double>(n);
  return m;
}

EllipseFeatures ellipse_features(const CentralMoments& m) {
  EllipseFeatures f;
  const double common = m.uxx + m.uyy;
  const double c = std::sqrt((m.uxx - m.uyy) * (m.uxx - m.uyy) + 4.0 * m.uxy * m.uxy);
  f.major_axis_length = 2.0 * std::sqrt(2.0) * std::sqrt(common + c);
  f.minor_axis_length = 2.0 * std::sqrt(2.0) * std::sqrt(std::max(common - c, 0.0));
  const double ratio = f.minor_axis_length / f.major_axis_length;
  f.eccentricity = std::sqrt(std::max(1.0 - ratio * ratio, 0.0));
  if (m.uxy == 0.0 && m.uxx == m.uyy) {
    f.orientation_deg = 0.0;  // circularly symmetric: fixed at 0
  } else {
    // negated uxy converts row-down image coordinates to the y-up angle
    double deg = 0.5 * std::atan2(-2.0 * m.uxy, m.uxx - m.uyy) * 180.0 / std::numbers::pi;
    if (deg <= -90.0) deg += 180.0;
    f.orientation_deg = deg;
  }
  return f;
}

ConvexFeatures convex_features(const Region& region) {
  if (region.pixels.empty()) throw EmptyMask();
  const std::vector<Pixel> hull = convex_hull(region.pixels);
  ConvexFeatures f;
  if (hull.size() == 1) {
    f.convex_area = 1;
  } else if (hull.size() == 2) {
    f.convex_area = lattice_points_on_segment(hull[0], hull[1]);
  } else {
    f.convex_area = lattice_points_in_hull(hull);
  }
  f.solidity = static_cast<double>(region.pixels.size()) / static_cast<double>(f.convex_area);
  return f;
}

TopologyFeatures topology_features(const Region& region, int fg_connectivity) {
  if (region.pixels.empty()) throw EmptyMask();
  if (fg_connectivity != 4 && fg_connectivity != 8) {
    throw Error("connectivity must be 4 or 8");
  }
  // bbox grid padded by a one-pixel background ring
  const int w = region.bbox_width() + 2;
  const int h = region.bbox_height() + 2;
  std::vector<std::uint8_t> fg(static_cast<std::size_t>(w) * h, 0);
  for (const Pixel& p : region.pixels) {
    fg[static_cast<std::size_t>(p.y - region.min_y + 1) * w + (p.x - region.min_x + 1)] = 1;
  }

  // background connectivity is the dual of the foreground's
  const bool bg_diagonal = (fg_connectivity == 4);
  std::vector<std::uint8_t> visited(fg.size(), 0);
  std::vector<int> stack;
  auto flood = [&](int start) {
    std::uint64_t size = 0;
    stack.push_back(start);
    visited[static_cast<std::size_t>(start)] = 1;
    while (!stack.empty()) {
      const int cur = stack.back();
      stack.pop_back();
      ++size;
      const int cx = cur % w;
      const int cy = cur / w;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          if (!bg_diagonal && dx != 0 && dy != 0) continue;
          const int nx = cx + dx;
          const int ny = cy + dy;
          if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
          const int ni = ny * w + nx;
          if (visited[static_cast<std::size_t>(ni)] || fg[static_cast<std::size_t>(ni)]) continue;
          visited[static_cast<std::size_t>(ni)] = 1;
          stack.push_back(ni);
        }
      }
    }
    return size;
  };

  flood(0);  // the padded ring is all connected background

  TopologyFeatures t;
  std::uint64_t hole_pixels = 0;
  for (int i = 0; i < w * h; ++i) {
    if (fg[static_cast<std::size_t>(i)] || visited[static_cast<std::size_t>(i)]) continue;
    ++t.hole_count;  // unreached background = a hole component
    hole_pixels += flood(i);
  }
  t.filled_area = region.pixels.size() + hole_pixels;
  t.euler_number = 1 - t.hole_count;
  return t;
}

ScalarFeatures scalar_features(const Region& region) {
  if (region.pixels.empty()) throw EmptyMask();
  ScalarFeatures s;
  s.area = region.pixels.size();
  s.equiv_diameter = std::sqrt(4.0 * static_cast<double>(s.area) / std::numbers::pi);
  s.extent = static_cast<double>(s.area) /
             (static_cast<double>(region.bbox_width()) * region.bbox_height());
  return s;
}

FeatureVector region_features(const Region& region, int fg_connectivity) {
  const CentralMoments m = central_moments(region);
  const EllipseFeatures e = ellipse_features(m);
  const ConvexFeatures c = convex_features(region);
  const TopologyFeatures t = topology_features(region, fg_connectivity);
  const ScalarFeatures s = scalar_features(region);

  FeatureVector fv;
  fv.area = static_cast<double>(s.area);
  fv.major_axis_length = e.major_axis_length;
  fv.minor_axis_length = e.minor_axis_length;
  fv.eccentricity = e.eccentricity;
  fv.orientation = e.orientation_deg;
  fv.convex_area = static_cast<double>(c.convex_area);
  fv.filled_area = static_cast<double>(t.filled_area);
  fv.euler_number = static_cast<double>(t.euler_number);
  fv.equiv_diameter = s.equiv_diameter;
  fv.solidity = c.solidity;
  fv.extent = s.extent;
  return fv;
}

FeatureVector extract_features(const BinaryMask& mask, int connectivity) {
  const LabelMap map = label_components(mask, connectivity);
  const Region region = largest_component(map);
  return region_features(region, connectivity);
}

}  // namespace shapeclass
