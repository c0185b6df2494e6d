// Copyright 2026 The shapeclass Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SHAPECLASS_DATAIO_HPP_
#define SHAPECLASS_DATAIO_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace shapeclass {

struct AttributeSpec {
  enum class Kind { kNumeric, kNominal };

  std::string name;
  Kind kind = Kind::kNumeric;
  std::vector<std::string> values;  // nominal only; order-preserving, no duplicates

  bool is_nominal() const { return kind == Kind::kNominal; }
  friend bool operator==(const AttributeSpec&, const AttributeSpec&) = default;
};

/// Tabular instances with numeric attributes and a nominal class (last
/// attribute). Nominal cells store the 0-based index into the value list.
/// `ids` is optional per-row metadata (the feature CSV id column); when
/// present it has one entry per instance and is not an attribute.
struct Dataset {
  std::string relation_name;
  std::vector<AttributeSpec> attributes;
  std::vector<std::vector<double>> instances;
  std::vector<std::string> ids;

  std::size_t n_attributes() const { return attributes.size(); }
  std::size_t n_features() const { return attributes.empty() ? 0 : attributes.size() - 1; }
  std::size_t n_instances() const { return instances.size(); }
  const AttributeSpec& class_attribute() const { return attributes.back(); }
  std::size_t n_classes() const { return class_attribute().values.size(); }
  int class_of(std::size_t instance) const {
    return static_cast<int>(instances[instance].back());
  }

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// Stratified fold assignment: instance index -> fold id in [0, k).
struct FoldPlan {
  int k = 0;
  std::vector<int> assignment;
  std::uint64_t seed = 0;
};

/// ARFF subset: %-comments; @relation; @attribute <name> (numeric | real |
/// integer | {v1,...}); @data with comma-separated rows; single- or
/// double-quoted names/values; case-insensitive keywords. The last attribute
/// must be nominal. Missing values ('?') are rejected.
/// Throws DataParseError with the offending line number.
Dataset parse_arff(const std::string& text);
std::string write_arff(const Dataset& ds);

/// CSV with a header line and the class column last. All other columns are
/// numeric; a leading column named "id" is carried as row metadata. Class
/// values are collected in first-appearance order.
Dataset parse_csv(const std::string& text);
std::string write_csv(const Dataset& ds);

Dataset parse_data_file(const std::string& path);  // dispatches on .arff/.csv
void write_data_file(const Dataset& ds, const std::string& path);

/// Fixed header of feature CSV files produced by this pipeline.
extern const char* const kFeatureCsvHeader;

/// Per class: shuffle indices with the "folds" stream of `seed`, then deal
/// round-robin starting at fold (class_index mod k). Deterministic in
/// (dataset order, k, seed). Requires 2 <= k <= n_instances.
FoldPlan stratified_folds(const Dataset& ds, int k, std::uint64_t seed);

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double v);

}  // namespace shapeclass

#endif  // SHAPECLASS_DATAIO_HPP_
