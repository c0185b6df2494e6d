// Copyright 2026 The shapeclass Authors.
// SPDX-License-Identifier: Apache-2.0

#include "shapeclass/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "json.hpp"
#include "shapeclass/error.hpp"

namespace shapeclass {

std::uint64_t ConfusionMatrix::total() const {
  std::uint64_t sum = 0;
  for (const auto& row : cells) {
    for (const std::uint64_t c : row) sum += c;
  }
  return sum;
}

std::uint64_t ConfusionMatrix::trace() const {
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) sum += cells[i][i];
  return sum;
}

std::pair<double, ConfusionMatrix> accuracy_and_confusion(
    const std::vector<int>& actual, const std::vector<int>& predicted,
    const std::vector<std::string>& classes) {
  if (actual.size() != predicted.size()) {
    throw Error("label sequences differ in length: " + std::to_string(actual.size()) +
                " vs " + std::to_string(predicted.size()));
  }
  if (actual.empty()) throw Error("empty label sequences");

  ConfusionMatrix cm;
  cm.classes = classes;
  cm.cells.assign(classes.size(), std::vector<std::uint64_t>(classes.size(), 0));
  std::uint64_t matches = 0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    ++cm.cells[static_cast<std::size_t>(actual[i])][static_cast<std::size_t>(predicted[i])];
    if (actual[i] == predicted[i]) ++matches;
  }
  const double accuracy =
      100.0 * static_cast<double>(matches) / static_cast<double>(actual.size());
  return {accuracy, std::move(cm)};
}

EvalReport cross_validate(const Dataset& ds, const LearnerSpec& spec, int k,
                          std::uint64_t seed, int n_jobs) {
  const FoldPlan plan = stratified_folds(ds, k, seed);
  const std::size_t n = ds.n_instances();

  std::vector<int> actual(n), predicted(n);
  for (std::size_t i = 0; i < n; ++i) actual[i] = ds.class_of(i);

  EvalReport report;
  report.learner = spec.name;
  report.k = k;
  report.seed = seed;
  report.per_fold_accuracy.resize(static_cast<std::size_t>(k), 0.0);

  for (int fold = 0; fold < k; ++fold) {
    DatasetView train;
    train.data = &ds;
    std::vector<std::uint32_t> test;
    for (std::size_t i = 0; i < n; ++i) {
      if (plan.assignment[i] == fold) {
        test.push_back(static_cast<std::uint32_t>(i));
      } else {
        train.indices.push_back(static_cast<std::uint32_t>(i));
      }
    }
    const std::unique_ptr<Model> model = fit_learner(spec, train, seed, n_jobs);

    std::uint64_t fold_matches = 0;
    for (const std::uint32_t i : test) {
      const auto& row = ds.instances[i];
      const std::span<const double> features(row.data(), ds.n_features());
      predicted[i] = model->classify(features);
      if (predicted[i] == actual[i]) ++fold_matches;
    }
    report.per_fold_accuracy[static_cast<std::size_t>(fold)] =
        test.empty() ? 0.0
                     : 100.0 * static_cast<double>(fold_matches) /
                           static_cast<double>(test.size());
  }

  auto [accuracy, confusion] =
      accuracy_and_confusion(actual, predicted, ds.class_attribute().values);
  report.accuracy_percent = accuracy;
  report.confusion = std::move(confusion);
  return report;
}

std::string format_percent2(std::uint64_t matches, std::uint64_t total) {
  if (total == 0) throw Error("percentage of an empty set");
  // half-up at two decimals, exactly: floor((10000*m/t) + 1/2)
  const std::uint64_t scaled = (20000 * matches + total) / (2 * total);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%llu.%02llu",
                static_cast<unsigned long long>(scaled / 100),
                static_cast<unsigned long long>(scaled % 100));
  return buf;
}

std::string format_percent2(double percent) {
  const auto scaled = static_cast<long long>(std::floor(percent * 100.0 + 0.5));
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%lld.%02lld", scaled / 100, scaled % 100);
  return buf;
}

std::string report_line(const EvalReport& report) {
  return report.learner + "\t" +
         format_percent2(report.confusion.trace(), report.confusion.total());
}

std::string report_table(const std::vector<EvalReport>& reports) {
  std::size_t name_width = std::string("learner").size();
  for (const EvalReport& r : reports) name_width = std::max(name_width, r.learner.size());

  std::string out = "learner";
  out.append(name_width - 7, ' ');
  out += "  accuracy\n";
  for (const EvalReport& r : reports) {
    const std::string acc = format_percent2(r.confusion.trace(), r.confusion.total());
    out += r.learner;
    out.append(name_width - r.learner.size(), ' ');
    out.append(2 + 8 - acc.size(), ' ');  // right-align in an 8-wide column
    out += acc;
    out += "\n";
  }
  return out;
}

std::string report_json(const EvalReport& report) {
  nlohmann::ordered_json j{
      {"learner", report.learner},
      {"k", report.k},
      {"seed", report.seed},
      {"accuracy_percent", report.accuracy_percent},
      {"per_fold_accuracy", report.per_fold_accuracy},
      {"confusion", {{"classes", report.confusion.classes}, {"cells", report.confusion.cells}}},
  };
  return j.dump(1) + "\n";
}

}  // namespace shapeclass
