// Copyright 2026 The shapeclass Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SHAPECLASS_EVAL_HPP_
#define SHAPECLASS_EVAL_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "shapeclass/dataio.hpp"
#include "shapeclass/learners.hpp"

namespace shapeclass {

struct ConfusionMatrix {
  std::vector<std::string> classes;
  std::vector<std::vector<std::uint64_t>> cells;  // [actual][predicted]

  std::uint64_t total() const;
  std::uint64_t trace() const;
};

struct EvalReport {
  std::string learner;
  double accuracy_percent = 0.0;
  ConfusionMatrix confusion;
  std::vector<double> per_fold_accuracy;
  int k = 0;
  std::uint64_t seed = 0;
};

/// Counts per (actual, predicted) pair; accuracy = 100 * matches / total.
/// Throws Error on length mismatch or empty inputs.
std::pair<double, ConfusionMatrix> accuracy_and_confusion(
    const std::vector<int>& actual, const std::vector<int>& predicted,
    const std::vector<std::string>& classes);

/// Stratified k-fold cross-validation with one pooled confusion matrix.
/// The fold plan comes from stratified_folds(ds, k, seed), so two learners
/// evaluated with the same (ds, k, seed) see identical partitions.
EvalReport cross_validate(const Dataset& ds, const LearnerSpec& spec, int k = 10,
                          std::uint64_t seed = 0, int n_jobs = 1);

/// Exact half-up rendering with two decimals, e.g. "98.45".
std::string format_percent2(std::uint64_t matches, std::uint64_t total);
std::string format_percent2(double percent);

/// One line per learner: "<name>\t<accuracy_percent>".
std::string report_line(const EvalReport& report);
/// Column-aligned rendering of one or more reports.
std::string report_table(const std::vector<EvalReport>& reports);
/// Machine-readable report (accuracy, confusion, per-fold accuracies).
std::string report_json(const EvalReport& report);

}  // namespace shapeclass

#endif  // SHAPECLASS_EVAL_HPP_
