// Copyright 2026 The shapeclass Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SHAPECLASS_PIPELINE_HPP_
#define SHAPECLASS_PIPELINE_HPP_

#include <string>
#include <vector>

#include "shapeclass/dataio.hpp"
#include "shapeclass/raster.hpp"

namespace shapeclass {

/// Segments each image (Otsu + binarize), extracts the 11 shape features of
/// its largest component, and assembles the feature dataset: 11 numeric
/// attributes plus a nominal class in first-appearance order of `labels`.
/// `ids` become row metadata (the feature CSV id column).
Dataset features_from_images(const std::vector<GrayImage>& images,
                             const std::vector<std::string>& ids,
                             const std::vector<std::string>& labels,
                             int connectivity = 8,
                             Polarity polarity = Polarity::kMinorityForeground,
                             int n_jobs = 1);

/// Segment one image with the Otsu threshold of its histogram.
BinaryMask segment(const GrayImage& image,
                   Polarity polarity = Polarity::kMinorityForeground);

}  // namespace shapeclass

#endif  // SHAPECLASS_PIPELINE_HPP_
