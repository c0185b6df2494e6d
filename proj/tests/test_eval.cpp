// Copyright 2026 The shapeclass Authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "shapeclass/error.hpp"
#include "shapeclass/eval.hpp"

using namespace shapeclass;

namespace {

Dataset balanced_dataset(std::size_t n_classes, std::size_t per_class, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  Dataset ds;
  ds.relation_name = "balanced";
  ds.attributes.push_back({"x", AttributeSpec::Kind::kNumeric, {}});
  ds.attributes.push_back({"y", AttributeSpec::Kind::kNumeric, {}});
  AttributeSpec cls{"class", AttributeSpec::Kind::kNominal, {}};
  for (std::size_t c = 0; c < n_classes; ++c) cls.values.push_back("c" + std::to_string(c));
  ds.attributes.push_back(std::move(cls));
  std::uniform_real_distribution<double> noise(-1.0, 1.0);
  for (std::size_t c = 0; c < n_classes; ++c) {
    for (std::size_t i = 0; i < per_class; ++i) {
      ds.instances.push_back({static_cast<double>(c) * 5.0 + noise(gen), noise(gen),
                              static_cast<double>(c)});
    }
  }
  return ds;
}

}  // namespace

TEST_CASE("accuracy_and_confusion counts cells") {
  const std::vector<std::string> classes{"a", "b"};
  const auto [acc, cm] = accuracy_and_confusion({0, 0, 1, 1}, {0, 1, 1, 1}, classes);
  CHECK(acc == doctest::Approx(75.0));
  CHECK(cm.cells[0][0] == 1);
  CHECK(cm.cells[0][1] == 1);
  CHECK(cm.cells[1][1] == 2);
  CHECK(cm.total() == 4);
  CHECK(cm.trace() == 3);
}

TEST_CASE("identical sequences give a diagonal matrix at 100%") {
  const std::vector<int> labels{0, 1, 2, 1, 0};
  const auto [acc, cm] = accuracy_and_confusion(labels, labels, {"a", "b", "c"});
  CHECK(acc == 100.0);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (i != j) CHECK(cm.cells[i][j] == 0);
    }
  }
}

TEST_CASE("accuracy_and_confusion rejects bad input") {
  CHECK_THROWS_AS(accuracy_and_confusion({0}, {0, 1}, {"a", "b"}), Error);
  CHECK_THROWS_AS(accuracy_and_confusion({}, {}, {"a"}), Error);
}

TEST_CASE("accuracy is invariant under consistent class relabeling") {
  std::mt19937_64 gen(1);
  std::vector<int> actual(60), predicted(60);
  for (auto& v : actual) v = static_cast<int>(gen() % 3);
  for (auto& v : predicted) v = static_cast<int>(gen() % 3);
  const auto [acc, cm] = accuracy_and_confusion(actual, predicted, {"a", "b", "c"});
  const int perm[3] = {2, 0, 1};
  std::vector<int> actual_p(60), predicted_p(60);
  for (std::size_t i = 0; i < 60; ++i) {
    actual_p[i] = perm[actual[i]];
    predicted_p[i] = perm[predicted[i]];
  }
  const auto [acc_p, cm_p] = accuracy_and_confusion(actual_p, predicted_p, {"a", "b", "c"});
  CHECK(acc == acc_p);
}

TEST_CASE("zeror scores exactly 20% on five balanced classes") {
  const Dataset ds = balanced_dataset(5, 20, 3);
  LearnerSpec spec;
  spec.name = "zeror";
  const EvalReport report = cross_validate(ds, spec, 10, 42);
  CHECK(report.accuracy_percent == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(format_percent2(report.confusion.trace(), report.confusion.total()) == "20.00");
}

TEST_CASE("cross_validate is deterministic") {
  const Dataset ds = balanced_dataset(3, 15, 4);
  LearnerSpec spec;
  spec.name = "forest";
  spec.trees = 5;
  const EvalReport a = cross_validate(ds, spec, 5, 7);
  const EvalReport b = cross_validate(ds, spec, 5, 7);
  CHECK(report_json(a) == report_json(b));
  CHECK(a.accuracy_percent == b.accuracy_percent);
  CHECK(a.per_fold_accuracy == b.per_fold_accuracy);
}

TEST_CASE("every instance is predicted exactly once across folds") {
  const Dataset ds = balanced_dataset(4, 13, 5);
  LearnerSpec spec;
  spec.name = "tree";
  const EvalReport report = cross_validate(ds, spec, 10, 11);
  CHECK(report.confusion.total() == ds.n_instances());
  CHECK(report.accuracy_percent ==
        doctest::Approx(100.0 * static_cast<double>(report.confusion.trace()) /
                        static_cast<double>(report.confusion.total()))
            .epsilon(1e-9));
  // separable classes: the pooled accuracy should be near-perfect
  CHECK(report.accuracy_percent > 90.0);
}

TEST_CASE("learners evaluated with one seed share the fold plan") {
  const Dataset ds = balanced_dataset(3, 12, 6);
  const FoldPlan a = stratified_folds(ds, 6, 99);
  const FoldPlan b = stratified_folds(ds, 6, 99);
  CHECK(a.assignment == b.assignment);
}

TEST_CASE("percent formatting is half-up with two decimals") {
  CHECK(format_percent2(1, 8) == "12.50");
  CHECK(format_percent2(199, 500) == "39.80");
  CHECK(format_percent2(1, 3) == "33.33");
  CHECK(format_percent2(2, 3) == "66.67");
  CHECK(format_percent2(100, 100) == "100.00");
  CHECK(format_percent2(0, 7) == "0.00");
  CHECK(format_percent2(1, 16) == "6.25");
  CHECK(format_percent2(1, 32) == "3.13");  // 3.125 rounds up
  CHECK(format_percent2(98.45) == "98.45");
  CHECK(format_percent2(20.0) == "20.00");
}

TEST_CASE("report_line renders name and accuracy separated by a tab") {
  const Dataset ds = balanced_dataset(5, 4, 8);
  LearnerSpec spec;
  spec.name = "zeror";
  const EvalReport report = cross_validate(ds, spec, 4, 1);
  CHECK(report_line(report) == "zeror\t20.00");
}

TEST_CASE("report_table aligns columns") {
  const Dataset ds = balanced_dataset(2, 10, 9);
  LearnerSpec zero;
  zero.name = "zeror";
  LearnerSpec bag;
  bag.name = "bagging";
  bag.trees = 3;
  const std::vector<EvalReport> reports{cross_validate(ds, zero, 5, 2),
                                        cross_validate(ds, bag, 5, 2)};
  const std::string table = report_table(reports);
  CHECK(table.find("learner") == 0);
  CHECK(table.find("zeror") != std::string::npos);
  CHECK(table.find("bagging") != std::string::npos);
  // every line ends with a 2-decimal percentage
  std::size_t pos = table.find('\n');
  while (pos + 1 < table.size()) {
    const std::size_t next = table.find('\n', pos + 1);
    const std::string line = table.substr(pos + 1, next - pos - 1);
    CHECK(line.find('.') == line.size() - 3);
    pos = next;
  }
}

TEST_CASE("report_json carries the confusion matrix") {
  const Dataset ds = balanced_dataset(2, 6, 10);
  LearnerSpec spec;
  spec.name = "zeror";
  const std::string json = report_json(cross_validate(ds, spec, 3, 5));
  CHECK(json.find("\"accuracy_percent\"") != std::string::npos);
  CHECK(json.find("\"cells\"") != std::string::npos);
  CHECK(json.find("\"per_fold_accuracy\"") != std::string::npos);
}
