// Copyright 2026 The shapeclass Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SHAPECLASS_LEARNERS_HPP_
#define SHAPECLASS_LEARNERS_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "shapeclass/dataio.hpp"
#include "shapeclass/prng.hpp"

namespace shapeclass {

/// A training subset: indices into a dataset, possibly with repetition
/// (bootstrap replicates are views too).
struct DatasetView {
  const Dataset* data = nullptr;
  std::vector<std::uint32_t> indices;

  static DatasetView all(const Dataset& ds);
  DatasetView select(const std::vector<std::uint32_t>& rows) const;
  std::size_t size() const { return indices.size(); }
  const std::vector<double>& row(std::size_t i) const {
    return data->instances[indices[i]];
  }
  int class_of(std::size_t i) const { return data->class_of(indices[i]); }
};

/// Common surface of every trained classifier. Models are immutable after
/// fitting and safe to share across threads for prediction.
class Model {
 public:
  virtual ~Model() = default;

  virtual std::string kind() const = 0;

  /// Class-probability vector over the training classes; sums to 1 within
  /// 1e-12. Throws Error on feature-count mismatch.
  virtual std::vector<double> predict_dist(std::span<const double> features) const = 0;

  /// Argmax of predict_dist; ties go to the lowest class index.
  int classify(std::span<const double> features) const;

  const std::vector<std::string>& classes() const { return classes_; }
  std::size_t n_classes() const { return classes_.size(); }
  std::size_t n_features() const { return n_features_; }

 protected:
  friend class ModelReader;

  void init_shape(const Dataset& ds);
  void check_arity(std::span<const double> features) const;

  std::vector<std::string> classes_;
  std::size_t n_features_ = 0;
};

int argmax_lowest(std::span<const double> values);

// ---------------------------------------------------------------------------
// Decision tree (CART, Gini impurity)
// ---------------------------------------------------------------------------

struct TreeNode {
  int feature = -1;        // -1 marks a leaf
  double threshold = 0.0;  // midpoint of adjacent observed values
  std::int32_t left = -1;
  std::int32_t right = -1;
  std::vector<double> distribution;       // leaf: empirical class frequencies
  std::vector<std::uint64_t> counts;      // leaf: per-class tallies

  bool is_leaf() const { return feature < 0; }
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct TreeParams {
  int max_features = 0;  // 0 = all; otherwise per-node random subset size
  int min_leaf = 1;
};

class TreeModel : public Model {
 public:
  std::string kind() const override { return "tree"; }
  std::vector<double> predict_dist(std::span<const double> features) const override;
  const std::vector<TreeNode>& nodes() const { return nodes_; }

 private:
  friend TreeModel fit_tree(const DatasetView&, const TreeParams&, Prng);
  friend class ModelReader;
  std::vector<TreeNode> nodes_;  // preorder, root at 0
};

/// Recursive binary partitioning. Candidate thresholds are midpoints between
/// consecutive distinct sorted values; the split with the largest Gini
/// decrease wins, ties to (lower feature index, lower threshold). A node
/// becomes a leaf when it is pure, has fewer than 2*min_leaf instances, or
/// no candidate separates two instances. Zero-gain splits of impure nodes
/// are taken, so distinct feature vectors always separate.
TreeModel fit_tree(const DatasetView& train, const TreeParams& params = {},
                   Prng rng = Prng(0));

// ---------------------------------------------------------------------------
// Ensembles
// ---------------------------------------------------------------------------

/// n uniform draws with replacement from [0, n).
std::vector<std::uint32_t> bootstrap_sample(std::size_t n, Prng& rng);

class BaggingModel : public Model {
 public:
  std::string kind() const override { return "bagging"; }
  std::vector<double> predict_dist(std::span<const double> features) const override;
  const std::vector<TreeModel>& members() const { return members_; }
  std::uint64_t seed() const { return seed_; }

 private:
  friend BaggingModel fit_bagging(const DatasetView&, int, const TreeParams&,
                                  std::uint64_t, int);
  friend class ModelReader;
  std::vector<TreeModel> members_;
  std::uint64_t seed_ = 0;
};

/// Member i is a full-feature CART tree on bootstrap_sample(n, stream("bag", i)).
/// Prediction is the arithmetic mean of member distributions.
BaggingModel fit_bagging(const DatasetView& train, int t = 10,
                         const TreeParams& base = {}, std::uint64_t seed = 0,
                         int n_jobs = 1);

struct ForestParams {
  int t = 100;
  int mtry = 0;  // 0 = floor(sqrt(n_features))
  int min_leaf = 1;
  bool bootstrap = true;  // test hook; identity sample when false
};

class ForestModel : public Model {
 public:
  std::string kind() const override { return "forest"; }
  std::vector<double> predict_dist(std::span<const double> features) const override;
  const std::vector<TreeModel>& members() const { return members_; }
  int mtry() const { return mtry_; }
  std::uint64_t seed() const { return seed_; }

 private:
  friend ForestModel fit_forest(const DatasetView&, const ForestParams&,
                                std::uint64_t, int);
  friend class ModelReader;
  std::vector<TreeModel> members_;
  int mtry_ = 0;
  std::uint64_t seed_ = 0;
};

/// Member i draws its bootstrap from stream("rf-boot", i) and its per-node
/// feature subsets (size mtry) from stream("rf-node", i).
ForestModel fit_forest(const DatasetView& train, const ForestParams& params = {},
                       std::uint64_t seed = 0, int n_jobs = 1);

// ---------------------------------------------------------------------------
// Discretized naive-structure Bayes network
// ---------------------------------------------------------------------------

/// Equal-frequency cut points per feature, fitted on the training view only.
/// Edges fall at midpoints between distinct adjacent order statistics;
/// duplicates collapse, so a feature may end up with fewer effective bins.
std::vector<std::vector<double>> discretize_fit(const DatasetView& train, int bins = 10);

/// Bin index by binary search; values beyond the extremes clamp to the
/// first/last bin. Values equal to an edge fall to the left bin.
int discretize_apply(const std::vector<double>& edges, double value);

class NaiveBayesModel : public Model {
 public:
  std::string kind() const override { return "bayesnet"; }
  std::vector<double> predict_dist(std::span<const double> features) const override;

  const std::vector<std::vector<double>>& bin_edges() const { return bin_edges_; }
  const std::vector<double>& priors() const { return priors_; }
  /// tables()[f][c][b] = P(bin b | class c) for feature f.
  const std::vector<std::vector<std::vector<double>>>& tables() const { return tables_; }
  double alpha() const { return alpha_; }

 private:
  friend NaiveBayesModel fit_naive_bayes(const DatasetView&, int, double);
  friend class ModelReader;
  std::vector<std::vector<double>> bin_edges_;
  std::vector<double> priors_;
  std::vector<std::vector<std::vector<double>>> tables_;
  double alpha_ = 0.5;
};

/// Class is the sole parent of every feature. Priors and conditionals use
/// pseudo-count smoothing: P(c) = (n_c + a) / (n + a*|C|),
/// P(b|c,f) = (count + a) / (n_c + a*B_f). Prediction accumulates in
/// log space and returns the normalized posterior.
NaiveBayesModel fit_naive_bayes(const DatasetView& train, int bins = 10,
                                double alpha = 0.5);

// ---------------------------------------------------------------------------
// Baseline and vote
// ---------------------------------------------------------------------------

class ZeroRModel : public Model {
 public:
  std::string kind() const override { return "zeror"; }
  std::vector<double> predict_dist(std::span<const double> features) const override;
  const std::vector<double>& distribution() const { return distribution_; }

 private:
  friend ZeroRModel fit_zero_r(const DatasetView&);
  friend class ModelReader;
  std::vector<double> distribution_;
  std::vector<std::uint64_t> counts_;
};

/// Constant prediction of the training class frequencies.
ZeroRModel fit_zero_r(const DatasetView& train);

enum class VoteRule { kMajority, kAverage };

class VoteModel : public Model {
 public:
  std::string kind() const override { return "vote"; }
  std::vector<double> predict_dist(std::span<const double> features) const override;
  VoteRule rule() const { return rule_; }
  const std::vector<std::unique_ptr<Model>>& members() const { return members_; }
  const ZeroRModel* fallback() const { return fallback_.get(); }

 private:
  friend VoteModel fit_vote(std::vector<std::unique_ptr<Model>>, VoteRule,
                            const DatasetView&);
  friend class ModelReader;
  std::vector<std::unique_ptr<Model>> members_;
  VoteRule rule_ = VoteRule::kMajority;
  std::unique_ptr<ZeroRModel> fallback_;  // used when members_ is empty
};

/// Majority: one argmax vote per member (ties to the lowest class index),
/// normalized vote counts out. Average: mean of member distributions.
/// With no members the model degrades to ZeroR trained on `train`.
VoteModel fit_vote(std::vector<std::unique_ptr<Model>> members, VoteRule rule,
                   const DatasetView& train);

// ---------------------------------------------------------------------------
// Learner specs and persistence
// ---------------------------------------------------------------------------

/// Names a fitter plus its parameters; the unit of configuration shared by
/// the CLI and the cross-validation harness.
struct LearnerSpec {
  std::string name;  // zeror | tree | bagging | forest | bayesnet | vote
  int trees = 0;     // 0 = learner default (bagging 10, forest 100)
  int mtry = 0;      // 0 = floor(sqrt(n_features))
  int min_leaf = 1;
  int bins = 10;
  double alpha = 0.5;
  VoteRule rule = VoteRule::kMajority;
  std::vector<LearnerSpec> members;  // vote only

  static bool valid_name(const std::string& name);
};

std::unique_ptr<Model> fit_learner(const LearnerSpec& spec, const DatasetView& train,
                                   std::uint64_t seed, int n_jobs = 1);

/// Versioned JSON text. save/load round-trips predictions bit-exactly;
/// load rejects unknown format versions and kinds with ModelFormatError.
std::string save_model(const Model& model, std::uint64_t seed = 0);
std::unique_ptr<Model> load_model(const std::string& json_text);
std::unique_ptr<Model> load_model_file(const std::string& path);
void save_model_file(const Model& model, std::uint64_t seed, const std::string& path);

}  // namespace shapeclass

#endif  // SHAPECLASS_LEARNERS_HPP_
