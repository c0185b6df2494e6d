// Copyright 2026 The shapeclass Authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <random>
#include <set>

#include "shapeclass/dataio.hpp"
#include "shapeclass/error.hpp"

using namespace shapeclass;

namespace {

Dataset tiny_dataset() {
  Dataset ds;
  ds.relation_name = "tiny";
  ds.attributes.push_back({"area", AttributeSpec::Kind::kNumeric, {}});
  ds.attributes.push_back({"class", AttributeSpec::Kind::kNominal, {"a", "b"}});
  ds.instances = {{24.0, 0.0}, {7.5, 1.0}};
  return ds;
}

Dataset random_dataset(std::mt19937_64& gen, std::size_t n, std::size_t n_features,
                       std::size_t n_classes) {
  Dataset ds;
  ds.relation_name = "random";
  for (std::size_t f = 0; f < n_features; ++f) {
    ds.attributes.push_back({"f" + std::to_string(f), AttributeSpec::Kind::kNumeric, {}});
  }
  AttributeSpec cls{"class", AttributeSpec::Kind::kNominal, {}};
  for (std::size_t c = 0; c < n_classes; ++c) cls.values.push_back("c" + std::to_string(c));
  ds.attributes.push_back(std::move(cls));
  std::uniform_real_distribution<double> dist(-100.0, 100.0);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row;
    for (std::size_t f = 0; f < n_features; ++f) row.push_back(dist(gen));
    row.push_back(static_cast<double>(gen() % n_classes));
    ds.instances.push_back(std::move(row));
  }
  return ds;
}

}  // namespace

TEST_CASE("parse_arff reads the minimal example") {
  const Dataset ds = parse_arff("@relation r\n@attribute area numeric\n"
                                "@attribute class {a,b}\n@data\n24,a\n");
  CHECK(ds.relation_name == "r");
  REQUIRE(ds.n_instances() == 1);
  CHECK(ds.instances[0][0] == 24.0);
  CHECK(ds.instances[0][1] == 0.0);
  CHECK(ds.class_attribute().values == std::vector<std::string>{"a", "b"});
}

TEST_CASE("parse_arff accepts comments, quoting, and case-insensitive keywords") {
  const Dataset ds = parse_arff(
      "% header comment\n"
      "@RELATION 'two words'\n"
      "@Attribute 'my attr' REAL\n"
      "@attribute \"class\" { 'first value' , second }\n"
      "@DATA\n"
      "% row comment\n"
      "1.5, 'first value'\n"
      "2.5, second\n");
  CHECK(ds.relation_name == "two words");
  CHECK(ds.attributes[0].name == "my attr");
  REQUIRE(ds.n_instances() == 2);
  CHECK(ds.instances[0][1] == 0.0);
  CHECK(ds.instances[1][1] == 1.0);
}

TEST_CASE("parse_arff errors carry line numbers") {
  const std::string head =
      "@relation r\n@attribute x numeric\n@attribute class {a,b}\n@data\n";

  try {
    parse_arff(head + "24,?\n");
    FAIL("expected missing-value error");
  } catch (const DataParseError& e) {
    CHECK(e.line() == 5);
    CHECK(std::string(e.what()).find("?") != std::string::npos);
  }

  CHECK_THROWS_AS(parse_arff("@relation r\n@attribute x string\n"), DataParseError);
  CHECK_THROWS_AS(parse_arff(head + "1,2,a\n"), DataParseError);   // arity
  CHECK_THROWS_AS(parse_arff(head + "1,zzz\n"), DataParseError);   // not declared
  CHECK_THROWS_AS(parse_arff(head + "abc,a\n"), DataParseError);   // not numeric
  CHECK_THROWS_AS(parse_arff("@relation r\n@attribute x numeric\n"), DataParseError);

  try {
    parse_arff("@relation r\n@attribute x numeric\n@attribute y numeric\n@data\n");
    FAIL("expected nominal-class error");
  } catch (const DataParseError& e) {
    CHECK(e.line() == 4);
  }

  try {
    parse_arff("@attribute x string\n");
    FAIL("expected unknown-kind error");
  } catch (const DataParseError& e) {
    CHECK(std::string(e.what()).find("unknown attribute kind") != std::string::npos);
    CHECK(e.line() == 1);
  }
}

TEST_CASE("ARFF round-trip is the identity") {
  const Dataset ds = tiny_dataset();
  CHECK(parse_arff(write_arff(ds)) == ds);

  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Dataset r = random_dataset(gen, 50, 5, 3);
    CHECK(parse_arff(write_arff(r)) == r);
  }
}

TEST_CASE("nominal values with spaces are quoted on write") {
  Dataset ds;
  ds.relation_name = "q";
  ds.attributes.push_back({"x", AttributeSpec::Kind::kNumeric, {}});
  ds.attributes.push_back({"class", AttributeSpec::Kind::kNominal, {"two words", "b"}});
  ds.instances = {{1.0, 0.0}};
  const std::string text = write_arff(ds);
  CHECK(text.find("'two words'") != std::string::npos);
  CHECK(parse_arff(text) == ds);
}

TEST_CASE("empty instance list writes a header-only file") {
  Dataset ds = tiny_dataset();
  ds.instances.clear();
  const std::string text = write_arff(ds);
  CHECK(text.find("@data\n") == text.size() - 6);
  CHECK(parse_arff(text) == ds);
}

TEST_CASE("parse_csv collects classes in first-appearance order") {
  const Dataset ds = parse_csv("x,class\n1,bag\n2,shoe\n3,bag\n");
  CHECK(ds.class_attribute().values == std::vector<std::string>{"bag", "shoe"});
  CHECK(ds.instances[2][1] == 0.0);
  CHECK(ds.ids.empty());
}

TEST_CASE("parse_csv carries a leading id column as metadata") {
  const Dataset ds = parse_csv("id,x,class\nimg1,1,a\nimg2,2,b\n");
  CHECK(ds.ids == std::vector<std::string>{"img1", "img2"});
  CHECK(ds.n_attributes() == 2);
  CHECK(ds.n_features() == 1);
}

TEST_CASE("parse_csv errors name the position") {
  try {
    parse_csv("x,class\nabc,a\n");
    FAIL("expected numeric error");
  } catch (const DataParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("'x'") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_csv("x,class\n1,a,extra\n"), DataParseError);  // ragged
  CHECK_THROWS_AS(parse_csv("x,class\n1\n"), DataParseError);
  CHECK_THROWS_AS(parse_csv(""), DataParseError);
}

TEST_CASE("CSV round-trip is byte-identical after one canonicalization") {
  std::mt19937_64 gen(4);
  Dataset ds = random_dataset(gen, 30, 4, 3);
  ds.relation_name = "data";  // CSV carries no relation name
  ds.ids.clear();
  for (std::size_t i = 0; i < ds.n_instances(); ++i) ds.ids.push_back("row" + std::to_string(i));
  // one parse canonicalizes the class-value order to first appearance;
  // from then on write/parse is a byte-level identity
  const std::string once = write_csv(ds);
  const Dataset canon = parse_csv(once);
  CHECK(write_csv(canon) == once);
  CHECK(parse_csv(write_csv(canon)) == canon);
}

TEST_CASE("feature CSV header constant matches the attribute order") {
  std::string expected = "id";
  const std::array<const char*, 11> names = {
      "area",          "major_axis_length", "minor_axis_length", "eccentricity",
      "orientation",   "convex_area",       "filled_area",       "euler_number",
      "equiv_diameter", "solidity",         "extent"};
  for (const char* n : names) expected += std::string(",") + n;
  expected += ",class";
  CHECK(expected == kFeatureCsvHeader);
}

TEST_CASE("format_double renders shortest round-trip decimals") {
  CHECK(format_double(24.0) == "24");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-3.5) == "-3.5");
  std::mt19937_64 gen(6);
  std::uniform_real_distribution<double> dist(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = dist(gen);
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("stratified folds: balanced 5x20 at k=10") {
  std::mt19937_64 gen(8);
  Dataset ds;
  ds.relation_name = "balanced";
  ds.attributes.push_back({"x", AttributeSpec::Kind::kNumeric, {}});
  AttributeSpec cls{"class", AttributeSpec::Kind::kNominal, {"a", "b", "c", "d", "e"}};
  ds.attributes.push_back(cls);
  for (int c = 0; c < 5; ++c) {
    for (int i = 0; i < 20; ++i) {
      ds.instances.push_back({static_cast<double>(gen() % 100), static_cast<double>(c)});
    }
  }

  const FoldPlan plan = stratified_folds(ds, 10, 42);
  std::map<int, int> fold_sizes;
  std::map<std::pair<int, int>, int> class_fold;
  for (std::size_t i = 0; i < ds.n_instances(); ++i) {
    ++fold_sizes[plan.assignment[i]];
    ++class_fold[{ds.class_of(i), plan.assignment[i]}];
  }
  for (int f = 0; f < 10; ++f) CHECK(fold_sizes[f] == 10);
  for (const auto& [key, count] : class_fold) CHECK(count == 2);
}

TEST_CASE("stratified folds are deterministic in the seed") {
  std::mt19937_64 gen(9);
  const Dataset ds = random_dataset(gen, 83, 2, 4);
  const FoldPlan a = stratified_folds(ds, 7, 1234);
  const FoldPlan b = stratified_folds(ds, 7, 1234);
  CHECK(a.assignment == b.assignment);
  const FoldPlan c = stratified_folds(ds, 7, 1235);
  CHECK(a.assignment != c.assignment);
}

TEST_CASE("7 instances of one class at k=3 deal (3,2,2)") {
  Dataset ds;
  ds.attributes.push_back({"x", AttributeSpec::Kind::kNumeric, {}});
  ds.attributes.push_back({"class", AttributeSpec::Kind::kNominal, {"only"}});
  for (int i = 0; i < 7; ++i) ds.instances.push_back({static_cast<double>(i), 0.0});
  const FoldPlan plan = stratified_folds(ds, 3, 5);
  std::vector<int> sizes(3, 0);
  for (const int f : plan.assignment) ++sizes[static_cast<std::size_t>(f)];
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<int>{2, 2, 3});
}

TEST_CASE("per-class fold spread is at most one for any k") {
  std::mt19937_64 gen(10);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 20 + gen() % 100;
    const Dataset ds = random_dataset(gen, n, 2, 1 + gen() % 6);
    const int k = static_cast<int>(2 + gen() % 8);
    if (static_cast<std::size_t>(k) > n) continue;
    const FoldPlan plan = stratified_folds(ds, k, gen());

    std::map<std::pair<int, int>, int> class_fold;
    for (std::size_t i = 0; i < n; ++i) {
      ++class_fold[{ds.class_of(i), plan.assignment[i]}];
    }
    for (std::size_t c = 0; c < ds.n_classes(); ++c) {
      int lo = 1 << 30, hi = 0;
      for (int f = 0; f < k; ++f) {
        const auto it = class_fold.find({static_cast<int>(c), f});
        const int v = it == class_fold.end() ? 0 : it->second;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      CHECK(hi - lo <= 1);
    }
  }
}

TEST_CASE("fold assignment depends only on class labels and order") {
  std::mt19937_64 gen(11);
  Dataset a = random_dataset(gen, 60, 3, 3);
  Dataset b = a;
  for (auto& row : b.instances) {
    for (std::size_t f = 0; f < 3; ++f) row[f] += 1000.0;  // perturb features only
  }
  CHECK(stratified_folds(a, 5, 77).assignment == stratified_folds(b, 5, 77).assignment);
}

TEST_CASE("stratified_folds rejects bad k") {
  const Dataset ds = tiny_dataset();
  CHECK_THROWS_AS(stratified_folds(ds, 1, 0), Error);
  CHECK_THROWS_AS(stratified_folds(ds, 3, 0), Error);  // k > n
}
