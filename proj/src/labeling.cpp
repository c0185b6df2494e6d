// Copyright 2026 The shapeclass Authors.
// SPDX-License-Identifier: Apache-2.0

#include "shapeclass/labeling.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "shapeclass/error.hpp"

namespace shapeclass {

int EquivalenceTable::make_label() {
  const int label = static_cast<int>(parent_.size()) + 1;
  parent_.push_back(label);
  return label;
}

int EquivalenceTable::find(int label) {
  int root = label;
  while (parent_[root - 1] != root) root = parent_[root - 1];
  while (parent_[label - 1] != root) {
    const int next = parent_[label - 1];
    parent_[label - 1] = root;
    label = next;
  }
  return root;
}

void EquivalenceTable::merge(int a, int b) {
  const int ra = find(a);
  const int rb = find(b);
  if (ra == rb) return;
  // smaller representative wins
  if (ra < rb) {
    parent_[rb - 1] = ra;
  } else {
    parent_[ra - 1] = rb;
  }
}

std::vector<Run> encode_runs(const BinaryMask& mask) {
  std::vector<Run> runs;
  for (int y = 0; y < mask.height; ++y) {
    int x = 0;
    while (x < mask.width) {
      if (!mask.at(x, y)) {
        ++x;
        continue;
      }
      Run run;
      run.row = y;
      run.col_start = x;
      while (x + 1 < mask.width && mask.at(x + 1, y)) ++x;
      run.col_end = x;
      runs.push_back(run);
      ++x;
    }
  }
  return runs;
}

LabelMap label_components(const BinaryMask& mask, int connectivity) {
  if (connectivity != 4 && connectivity != 8) {
    throw Error("connectivity must be 4 or 8");
  }
  // step 1: run-length encode
  std::vector<Run> runs = encode_runs(mask);

  // per-row run ranges (runs are in row-major order)
  std::vector<std::size_t> row_begin(static_cast<std::size_t>(mask.height) + 1, 0);
  {
    std::size_t i = 0;
    for (int y = 0; y <= mask.height; ++y) {
      while (i < runs.size() && runs[i].row < y) ++i;
      row_begin[static_cast<std::size_t>(y)] = i;
    }
  }

  // step 2: scan runs, assign provisional labels, record equivalences.
  // A run touches a run on the previous row when the column intervals
  // overlap (4) or overlap extended by one column (8).
  const int reach = connectivity == 8 ? 1 : 0;
  EquivalenceTable eq;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    Run& run = runs[i];
    int assigned = 0;
    if (run.row > 0) {
      const std::size_t lo = row_begin[static_cast<std::size_t>(run.row) - 1];
      const std::size_t hi = row_begin[static_cast<std::size_t>(run.row)];
      for (std::size_t j = lo; j < hi; ++j) {
        const Run& above = runs[j];
        if (above.col_start > run.col_end + reach) break;
        if (above.col_end < run.col_start - reach) continue;
        const int rep = eq.find(above.label);
        if (assigned == 0) {
          assigned = rep;
        } else if (rep != assigned) {
          eq.merge(assigned, rep);
          assigned = std::min(assigned, rep);
        }
      }
    }
    run.label = assigned != 0 ? assigned : eq.make_label();
  }

  // steps 3+4: resolve classes, then relabel compactly in first-encounter
  // row-major order.
  LabelMap map;
  map.width = mask.width;
  map.height = mask.height;
  map.labels.assign(mask.bits.size(), 0);
  std::unordered_map<int, int> compact;
  for (Run& run : runs) {
    const int rep = eq.find(run.label);
    auto [it, inserted] = compact.try_emplace(rep, static_cast<int>(compact.size()) + 1);
    const int label = it->second;
    for (int x = run.col_start; x <= run.col_end; ++x) {
      map.labels[static_cast<std::size_t>(run.row) * map.width + x] = label;
    }
  }
  map.count = static_cast<int>(compact.size());
  return map;
}

Region component_region(const LabelMap& map, int label) {
  Region region;
  region.min_x = std::numeric_limits<int>::max();
  region.min_y = std::numeric_limits<int>::max();
  region.max_x = std::numeric_limits<int>::min();
  region.max_y = std::numeric_limits<int>::min();
  for (int y = 0; y < map.height; ++y) {
    for (int x = 0; x < map.width; ++x) {
      if (map.at(x, y) != label) continue;
      region.pixels.push_back({x, y});
      region.min_x = std::min(region.min_x, x);
      region.min_y = std::min(region.min_y, y);
      region.max_x = std::max(region.max_x, x);
      region.max_y = std::max(region.max_y, y);
    }
  }
  if (region.pixels.empty()) throw EmptyMask();
  return region;
}

Region largest_component(const LabelMap& map) {
  if (map.count == 0) throw EmptyMask();
  std::vector<std::uint64_t> sizes(static_cast<std::size_t>(map.count) + 1, 0);
  for (const std::int32_t l : map.labels) {
    if (l > 0) ++sizes[static_cast<std::size_t>(l)];
  }
  int best = 1;
  for (int l = 2; l <= map.count; ++l) {
    if (sizes[static_cast<std::size_t>(l)] > sizes[static_cast<std::size_t>(best)]) best = l;
  }
  return component_region(map, best);
}

GrayImage label_map_debug_image(const LabelMap& map) {
  GrayImage img;
  img.width = map.width;
  img.height = map.height;
  img.data.resize(map.labels.size());
  std::transform(map.labels.begin(), map.labels.end(), img.data.begin(),
                 [](std::int32_t l) {
                   return l == 0 ? std::uint8_t{0}
                                 : static_cast<std::uint8_t>(1 + (l - 1) % 255);
                 });
  return img;
}

}  // namespace shapeclass
