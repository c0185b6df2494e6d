// Copyright 2026 The shapeclass Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SHAPECLASS_LABELING_HPP_
#define SHAPECLASS_LABELING_HPP_

#include <cstdint>
#include <vector>

#include "shapeclass/raster.hpp"

namespace shapeclass {

/// Maximal horizontal stretch of foreground pixels on one row.
struct Run {
  int row = 0;
  int col_start = 0;
  int col_end = 0;  // inclusive
  int label = 0;    // provisional component id, 0 = unassigned
};

/// Union-find over provisional labels. find() keeps the smallest
/// representative of a class so "smallest adjacent label wins" is stable.
class EquivalenceTable {
 public:
  int make_label();           // returns the next provisional label (1-based)
  int find(int label);        // path-compressing
  void merge(int a, int b);   // union by smaller representative

 private:
  std::vector<int> parent_;  // parent_[i] for label i+1
};

/// Resolved component labeling: 0 = background, 1..count compact ids
/// assigned in first-encounter row-major order.
struct LabelMap {
  int width = 0;
  int height = 0;
  std::vector<std::int32_t> labels;
  int count = 0;

  std::int32_t at(int x, int y) const { return labels[static_cast<std::size_t>(y) * width + x]; }
};

/// Pixel set of one connected component.
struct Pixel {
  int x = 0;  // column
  int y = 0;  // row
  friend bool operator==(const Pixel&, const Pixel&) = default;
};

struct Region {
  std::vector<Pixel> pixels;
  int min_x = 0, min_y = 0, max_x = 0, max_y = 0;  // tight bounding box

  int bbox_width() const { return max_x - min_x + 1; }
  int bbox_height() const { return max_y - min_y + 1; }
  std::size_t area() const { return pixels.size(); }
};

/// Row-major maximal runs covering exactly the foreground.
std::vector<Run> encode_runs(const BinaryMask& mask);

/// Run-based two-pass labeling: encode runs, scan assigning provisional
/// labels while recording equivalences, resolve with union-find, relabel
/// compactly. Two pixels share a label iff connected under `connectivity`.
LabelMap label_components(const BinaryMask& mask, int connectivity = 8);

/// Component with the most pixels; ties go to the lowest label id.
/// Throws EmptyMask when the map has no components.
Region largest_component(const LabelMap& map);

/// Extracts one labeled component as a Region. `label` must be in [1, count].
Region component_region(const LabelMap& map, int label);

/// Diagnostic rendering: label ids modulo 255 as intensities (background 0).
GrayImage label_map_debug_image(const LabelMap& map);

}  // namespace shapeclass

#endif  // SHAPECLASS_LABELING_HPP_
