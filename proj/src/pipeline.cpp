// Copyright 2026 The shapeclass Authors.
// SPDX-License-Identifier: Apache-2.0

#include "shapeclass/pipeline.hpp"

#include <algorithm>

#include "shapeclass/error.hpp"
#include "shapeclass/parallel.hpp"
#include "shapeclass/shapefeat.hpp"

namespace shapeclass {

BinaryMask segment(const GrayImage& image, Polarity polarity) {
  const int threshold = otsu_threshold(histogram(image));
  return binarize(image, threshold, polarity);
}

Dataset features_from_images(const std::vector<GrayImage>& images,
                             const std::vector<std::string>& ids,
                             const std::vector<std::string>& labels, int connectivity,
                             Polarity polarity, int n_jobs) {
  if (images.size() != ids.size() || images.size() != labels.size()) {
    throw Error("images, ids, and labels must have equal lengths");
  }

  Dataset ds;
  ds.relation_name = "shape_features";
  for (const char* name : FeatureVector::names()) {
    ds.attributes.push_back({name, AttributeSpec::Kind::kNumeric, {}});
  }
  AttributeSpec class_attr;
  class_attr.name = "class";
  class_attr.kind = AttributeSpec::Kind::kNominal;
  for (const std::string& label : labels) {  // first-appearance order
    if (std::find(class_attr.values.begin(), class_attr.values.end(), label) ==
        class_attr.values.end()) {
      class_attr.values.push_back(label);
    }
  }
  ds.attributes.push_back(std::move(class_attr));

  const AttributeSpec& cls = ds.attributes.back();
  ds.instances.resize(images.size());
  parallel_for(images.size(), n_jobs, [&](std::size_t i) {
    const BinaryMask mask = segment(images[i], polarity);
    const FeatureVector fv = extract_features(mask, connectivity);
    const auto values = fv.values();
    std::vector<double> row(values.begin(), values.end());
    const auto it = std::find(cls.values.begin(), cls.values.end(), labels[i]);
    row.push_back(static_cast<double>(it - cls.values.begin()));
    ds.instances[i] = std::move(row);
  });
  ds.ids = ids;
  return ds;
}

}  // namespace shapeclass
