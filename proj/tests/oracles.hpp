// Copyright 2026 The shapeclass Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Test-only reference implementations, kept independent of the production
// code paths they check: a direct-summation Otsu scan, a BFS flood-fill
// labeler, a gift-wrapping hull with an exhaustive lattice-point count,
// a bit-quad Euler number, and a moment oracle.

#ifndef SHAPECLASS_TESTS_ORACLES_HPP_
#define SHAPECLASS_TESTS_ORACLES_HPP_

#include <cstdint>
#include <queue>
#include <vector>

#include "shapeclass/labeling.hpp"
#include "shapeclass/raster.hpp"

namespace oracles {

using shapeclass::BinaryMask;
using shapeclass::Histogram256;
using shapeclass::LabelMap;
using shapeclass::Pixel;
using shapeclass::Region;

// Otsu by brute force: for every threshold recompute both class sums from
// scratch and compare sigma_B^2 as exact fractions by cross-multiplication.
// Valid while sigma numerators fit in 128 bits (test-scale histograms).
inline int otsu_exhaustive(const Histogram256& hist) {
  using u128 = unsigned __int128;
  using i128 = __int128;

  int best_t = -1;
  u128 best_num = 0;
  u128 best_den = 1;
  for (int t = 0; t < 256; ++t) {
    std::uint64_t w0 = 0, w1 = 0, s0 = 0, s1 = 0;
    for (int v = 0; v <= t; ++v) {
      w0 += hist.counts[v];
      s0 += static_cast<std::uint64_t>(v) * hist.counts[v];
    }
    for (int v = t + 1; v < 256; ++v) {
      w1 += hist.counts[v];
      s1 += static_cast<std::uint64_t>(v) * hist.counts[v];
    }
    if (w0 == 0 || w1 == 0) continue;
    // sigma = w0*w1*(s0/w0 - s1/w1)^2 / total^2 = (s0*w1 - s1*w0)^2 / (w0*w1*total^2)
    const i128 diff = static_cast<i128>(s0) * w1 - static_cast<i128>(s1) * w0;
    const u128 mag = diff < 0 ? static_cast<u128>(-diff) : static_cast<u128>(diff);
    const u128 num = mag * mag;
    const u128 den = static_cast<u128>(w0) * w1;
    const bool better = best_t < 0 || num * best_den > best_num * den;
    if (better) {
      best_t = t;
      best_num = num;
      best_den = den;
    }
  }
  return best_t;
}

// First-encounter BFS labeling; the ground truth for label_components.
inline LabelMap bfs_label(const BinaryMask& mask, int connectivity) {
  LabelMap map;
  map.width = mask.width;
  map.height = mask.height;
  map.labels.assign(mask.bits.size(), 0);
  int next_label = 0;
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      if (!mask.at(x, y) || map.at(x, y) != 0) continue;
      const int label = ++next_label;
      std::queue<std::pair<int, int>> frontier;
      frontier.push({x, y});
      map.labels[static_cast<std::size_t>(y) * map.width + x] = label;
      while (!frontier.empty()) {
        const auto [cx, cy] = frontier.front();
        frontier.pop();
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            if (connectivity == 4 && dx != 0 && dy != 0) continue;
            const int nx = cx + dx;
            const int ny = cy + dy;
            if (nx < 0 || ny < 0 || nx >= mask.width || ny >= mask.height) continue;
            if (!mask.at(nx, ny) || map.at(nx, ny) != 0) continue;
            map.labels[static_cast<std::size_t>(ny) * map.width + nx] = label;
            frontier.push({nx, ny});
          }
        }
      }
    }
  }
  map.count = next_label;
  return map;
}

inline std::int64_t cross3(const Pixel& o, const Pixel& a, const Pixel& b) {
  return static_cast<std::int64_t>(a.x - o.x) * (b.y - o.y) -
         static_cast<std::int64_t>(a.y - o.y) * (b.x - o.x);
}

// Gift-wrapping hull (counterclockwise in plain (x, y) numbers), collinear
// interior points skipped by preferring the farthest candidate.
inline std::vector<Pixel> jarvis_hull(const std::vector<Pixel>& pts) {
  std::size_t start = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].y < pts[start].y || (pts[i].y == pts[start].y && pts[i].x < pts[start].x)) {
      start = i;
    }
  }
  std::vector<Pixel> hull;
  std::size_t cur = start;
  do {
    hull.push_back(pts[cur]);
    std::size_t next = (cur + 1) % pts.size();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i == cur) continue;
      const std::int64_t c = cross3(pts[cur], pts[next], pts[i]);
      const auto dist2 = [&](const Pixel& p) {
        const std::int64_t dx = p.x - pts[cur].x;
        const std::int64_t dy = p.y - pts[cur].y;
        return dx * dx + dy * dy;
      };
      if (c < 0 || (c == 0 && dist2(pts[i]) > dist2(pts[next]))) next = i;
    }
    cur = next;
    if (hull.size() > pts.size()) break;  // safety; cannot happen for valid input
  } while (cur != start);
  return hull;
}

// Exhaustive lattice-point-in-hull count over the bounding box, exact
// integer tests only.
inline std::uint64_t convex_area_exhaustive(const Region& region) {
  const std::vector<Pixel> hull = jarvis_hull(region.pixels);
  std::uint64_t count = 0;
  for (int y = region.min_y; y <= region.max_y; ++y) {
    for (int x = region.min_x; x <= region.max_x; ++x) {
      const Pixel q{x, y};
      if (hull.size() == 1) {
        if (q == hull[0]) ++count;
        continue;
      }
      if (hull.size() == 2) {
        const bool on_line = cross3(hull[0], hull[1], q) == 0;
        const std::int64_t dot =
            static_cast<std::int64_t>(q.x - hull[0].x) * (hull[1].x - hull[0].x) +
            static_cast<std::int64_t>(q.y - hull[0].y) * (hull[1].y - hull[0].y);
        const std::int64_t len2 =
            static_cast<std::int64_t>(hull[1].x - hull[0].x) * (hull[1].x - hull[0].x) +
            static_cast<std::int64_t>(hull[1].y - hull[0].y) * (hull[1].y - hull[0].y);
        if (on_line && dot >= 0 && dot <= len2) ++count;
        continue;
      }
      bool inside = true;
      for (std::size_t i = 0; i < hull.size() && inside; ++i) {
        const Pixel& a = hull[i];
        const Pixel& b = hull[(i + 1) % hull.size()];
        if (cross3(a, b, q) < 0) inside = false;
      }
      if (inside) ++count;
    }
  }
  return count;
}

// Bit-quad Euler number (Gray's counts) of a region rendered on a padded
// grid; independent of the flood-fill route.
inline int euler_bit_quads(const Region& region, int fg_connectivity) {
  const int w = region.max_x - region.min_x + 3;
  const int h = region.max_y - region.min_y + 3;
  std::vector<std::uint8_t> fg(static_cast<std::size_t>(w) * h, 0);
  for (const Pixel& p : region.pixels) {
    fg[static_cast<std::size_t>(p.y - region.min_y + 1) * w + (p.x - region.min_x + 1)] = 1;
  }
  auto at = [&](int x, int y) -> int {
    if (x < 0 || y < 0 || x >= w || y >= h) return 0;
    return fg[static_cast<std::size_t>(y) * w + x];
  };
  std::int64_t q1 = 0, q3 = 0, qd = 0;
  for (int y = -1; y < h; ++y) {
    for (int x = -1; x < w; ++x) {
      const int a = at(x, y), b = at(x + 1, y), c = at(x, y + 1), d = at(x + 1, y + 1);
      const int sum = a + b + c + d;
      if (sum == 1) ++q1;
      if (sum == 3) ++q3;
      if (sum == 2 && ((a && d && !b && !c) || (b && c && !a && !d))) ++qd;
    }
  }
  const std::int64_t four = q1 - q3 + 2 * qd;
  const std::int64_t eight = q1 - q3 - 2 * qd;
  return static_cast<int>((fg_connectivity == 4 ? four : eight) / 4);
}

// Moments by direct definition, no shared code with the implementation.
struct MomentOracle {
  double cx, cy, uxx, uyy, uxy;
};

inline MomentOracle moments_direct(const std::vector<Pixel>& pixels) {
  const double n = static_cast<double>(pixels.size());
  double sx = 0, sy = 0;
  for (const Pixel& p : pixels) {
    sx += p.x;
    sy += p.y;
  }
  MomentOracle m{sx / n, sy / n, 0, 0, 0};
  for (const Pixel& p : pixels) {
    m.uxx += (p.x - m.cx) * (p.x - m.cx);
    m.uyy += (p.y - m.cy) * (p.y - m.cy);
    m.uxy += (p.x - m.cx) * (p.y - m.cy);
  }
  m.uxx = m.uxx / n + 1.0 / 12.0;
  m.uyy = m.uyy / n + 1.0 / 12.0;
  m.uxy /= n;
  return m;
}

// Region from an explicit pixel list (tests build shapes directly).
inline Region make_region(std::vector<Pixel> pixels) {
  Region r;
  r.pixels = std::move(pixels);
  r.min_x = r.max_x = r.pixels.front().x;
  r.min_y = r.max_y = r.pixels.front().y;
  for (const Pixel& p : r.pixels) {
    r.min_x = std::min(r.min_x, p.x);
    r.min_y = std::min(r.min_y, p.y);
    r.max_x = std::max(r.max_x, p.x);
    r.max_y = std::max(r.max_y, p.y);
  }
  return r;
}

inline BinaryMask make_mask(int width, int height, const std::vector<int>& bits) {
  BinaryMask m;
  m.width = width;
  m.height = height;
  m.bits.assign(bits.begin(), bits.end());
  return m;
}

}  // namespace oracles

#endif  // SHAPECLASS_TESTS_ORACLES_HPP_
