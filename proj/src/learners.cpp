// Copyright 2026 The shapeclass Authors.
// SPDX-License-Identifier: Apache-2.0

#include "shapeclass/learners.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "shapeclass/error.hpp"
#include "shapeclass/parallel.hpp"

namespace shapeclass {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Views and shared model machinery
// ---------------------------------------------------------------------------

DatasetView DatasetView::all(const Dataset& ds) {
  DatasetView view;
  view.data = &ds;
  view.indices.resize(ds.n_instances());
  std::iota(view.indices.begin(), view.indices.end(), 0);
  return view;
}

DatasetView DatasetView::select(const std::vector<std::uint32_t>& rows) const {
  DatasetView view;
  view.data = data;
  view.indices.reserve(rows.size());
  for (const std::uint32_t r : rows) view.indices.push_back(indices[r]);
  return view;
}

int argmax_lowest(std::span<const double> values) {
  int best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[static_cast<std::size_t>(best)]) best = static_cast<int>(i);
  }
  return best;
}

void Model::init_shape(const Dataset& ds) {
  classes_ = ds.class_attribute().values;
  n_features_ = ds.n_features();
}

void Model::check_arity(std::span<const double> features) const {
  if (features.size() != n_features_) {
    throw Error("feature arity mismatch: got " + std::to_string(features.size()) +
                ", model expects " + std::to_string(n_features_));
  }
}

int Model::classify(std::span<const double> features) const {
  const std::vector<double> dist = predict_dist(features);
  return argmax_lowest(dist);
}

namespace {

std::vector<double> class_counts_to_dist(const std::vector<std::uint64_t>& counts) {
  std::uint64_t total = 0;
  for (const std::uint64_t c : counts) total += c;
  std::vector<double> dist(counts.size(), 0.0);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    dist[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
  }
  return dist;
}

double gini(const std::vector<std::uint64_t>& counts, std::uint64_t n) {
  double sum_sq = 0.0;
  for (const std::uint64_t c : counts) {
    const double p = static_cast<double>(c) / static_cast<double>(n);
    sum_sq += p * p;
  }
  return 1.0 - sum_sq;
}

}  // namespace

// ---------------------------------------------------------------------------
// CART tree
// ---------------------------------------------------------------------------

std::vector<double> TreeModel::predict_dist(std::span<const double> features) const {
  check_arity(features);
  std::size_t i = 0;
  while (!nodes_[i].is_leaf()) {
    const TreeNode& node = nodes_[i];
    i = static_cast<std::size_t>(
        features[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left
                                                                           : node.right);
  }
  return nodes_[i].distribution;
}

TreeModel fit_tree(const DatasetView& train, const TreeParams& params, Prng rng) {
  if (train.size() == 0) throw Error("empty training view");
  const Dataset& ds = *train.data;
  const int d = static_cast<int>(ds.n_features());
  const std::size_t n_classes = ds.n_classes();
  const int min_leaf = std::max(1, params.min_leaf);
  const bool subsample = params.max_features > 0 && params.max_features < d;
  const int mtry = subsample ? params.max_features : d;

  TreeModel model;
  model.init_shape(ds);

  struct Work {
    std::vector<std::uint32_t> rows;  // indices into `train`
    std::int32_t parent;
    bool is_right;
  };

  std::vector<Work> stack;
  {
    std::vector<std::uint32_t> all(train.size());
    std::iota(all.begin(), all.end(), 0);
    stack.push_back({std::move(all), -1, false});
  }

  std::vector<int> feature_pool(static_cast<std::size_t>(d));
  std::vector<std::pair<double, int>> sorted;  // (value, class)

  // Nodes are numbered in preorder: each Work item is popped, gets the next
  // slot, and pushes right then left so the left subtree completes first.
  while (!stack.empty()) {
    Work work = std::move(stack.back());
    stack.pop_back();
    const auto slot = static_cast<std::int32_t>(model.nodes_.size());
    model.nodes_.emplace_back();
    if (work.parent >= 0) {
      TreeNode& parent = model.nodes_[static_cast<std::size_t>(work.parent)];
      (work.is_right ? parent.right : parent.left) = slot;
    }

    const std::size_t n = work.rows.size();
    std::vector<std::uint64_t> counts(n_classes, 0);
    for (const std::uint32_t r : work.rows) {
      ++counts[static_cast<std::size_t>(train.class_of(r))];
    }
    const bool pure =
        *std::max_element(counts.begin(), counts.end()) == static_cast<std::uint64_t>(n);

    auto make_leaf = [&] {
      TreeNode& leaf = model.nodes_[static_cast<std::size_t>(slot)];
      leaf.counts = counts;
      leaf.distribution = class_counts_to_dist(counts);
    };

    if (pure || n < 2 * static_cast<std::size_t>(min_leaf)) {
      make_leaf();
      continue;
    }

    // candidate features: all of them, or a uniform subset drawn without
    // replacement from this node's position in the stream
    std::iota(feature_pool.begin(), feature_pool.end(), 0);
    if (subsample) {
      for (int i = 0; i < mtry; ++i) {
        const auto j = static_cast<std::size_t>(i) +
                       rng.next_below(static_cast<std::uint64_t>(d - i));
        std::swap(feature_pool[static_cast<std::size_t>(i)], feature_pool[j]);
      }
      std::sort(feature_pool.begin(), feature_pool.begin() + mtry);
    }

    const double parent_gini = gini(counts, n);
    double best_gain = -1.0;
    int best_feature = -1;
    double best_threshold = 0.0;

    std::vector<std::uint64_t> left_counts(n_classes);
    for (int ci = 0; ci < mtry; ++ci) {
      const int f = feature_pool[static_cast<std::size_t>(ci)];
      sorted.clear();
      for (const std::uint32_t r : work.rows) {
        sorted.emplace_back(train.row(r)[static_cast<std::size_t>(f)], train.class_of(r));
      }
      std::sort(sorted.begin(), sorted.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });

      std::fill(left_counts.begin(), left_counts.end(), 0);
      for (std::size_t i = 0; i + 1 < n; ++i) {
        ++left_counts[static_cast<std::size_t>(sorted[i].second)];
        if (!(sorted[i].first < sorted[i + 1].first)) continue;
        const std::uint64_t nl = i + 1;
        const std::uint64_t nr = n - nl;
        if (nl < static_cast<std::uint64_t>(min_leaf) ||
            nr < static_cast<std::uint64_t>(min_leaf)) {
          continue;
        }
        double right_sq = 0.0, left_sq = 0.0;
        for (std::size_t c = 0; c < n_classes; ++c) {
          const double pl = static_cast<double>(left_counts[c]) / static_cast<double>(nl);
          const double pr =
              static_cast<double>(counts[c] - left_counts[c]) / static_cast<double>(nr);
          left_sq += pl * pl;
          right_sq += pr * pr;
        }
        const double weighted = (static_cast<double>(nl) * (1.0 - left_sq) +
                                 static_cast<double>(nr) * (1.0 - right_sq)) /
                                static_cast<double>(n);
        const double gain = parent_gini - weighted;
        double threshold =
            sorted[i].first + (sorted[i + 1].first - sorted[i].first) / 2.0;
        if (threshold >= sorted[i + 1].first) threshold = sorted[i].first;

        const bool better =
            gain > best_gain ||
            (gain == best_gain &&
             (f < best_feature || (f == best_feature && threshold < best_threshold)));
        if (better) {
          best_gain = gain;
          best_feature = f;
          best_threshold = threshold;
        }
      }
    }

    if (best_feature < 0) {
      // no candidate separates two instances under the min_leaf constraint
      make_leaf();
      continue;
    }

    std::vector<std::uint32_t> left_rows, right_rows;
    for (const std::uint32_t r : work.rows) {
      if (train.row(r)[static_cast<std::size_t>(best_feature)] <= best_threshold) {
        left_rows.push_back(r);
      } else {
        right_rows.push_back(r);
      }
    }

    TreeNode& node = model.nodes_[static_cast<std::size_t>(slot)];
    node.feature = best_feature;
    node.threshold = best_threshold;
    stack.push_back({std::move(right_rows), slot, true});
    stack.push_back({std::move(left_rows), slot, false});
  }

  return model;
}

// ---------------------------------------------------------------------------
// Bootstrap and ensembles
// ---------------------------------------------------------------------------

std::vector<std::uint32_t> bootstrap_sample(std::size_t n, Prng& rng) {
  if (n == 0) throw Error("bootstrap sample of an empty set");
  std::vector<std::uint32_t> sample(n);
  for (std::size_t i = 0; i < n; ++i) {
    sample[i] = static_cast<std::uint32_t>(rng.next_below(n));
  }
  return sample;
}

namespace {

std::vector<double> mean_member_dist(const std::vector<TreeModel>& members,
                                     std::span<const double> features,
                                     std::size_t n_classes) {
  std::vector<double> sum(n_classes, 0.0);
  for (const TreeModel& m : members) {
    const std::vector<double> dist = m.predict_dist(features);
    for (std::size_t c = 0; c < n_classes; ++c) sum[c] += dist[c];
  }
  for (double& v : sum) v /= static_cast<double>(members.size());
  return sum;
}

}  // namespace

std::vector<double> BaggingModel::predict_dist(std::span<const double> features) const {
  check_arity(features);
  return mean_member_dist(members_, features, n_classes());
}

BaggingModel fit_bagging(const DatasetView& train, int t, const TreeParams& base,
                         std::uint64_t seed, int n_jobs) {
  if (t < 1) throw Error("ensemble size must be at least 1");
  if (train.size() == 0) throw Error("empty training view");
  BaggingModel model;
  model.init_shape(*train.data);
  model.seed_ = seed;
  model.members_.resize(static_cast<std::size_t>(t));
  const TreeParams tree_params{0, base.min_leaf};  // full-feature CART
  parallel_for(static_cast<std::size_t>(t), n_jobs, [&](std::size_t i) {
    Prng boot = Prng::stream(seed, "bag", i);
    const std::vector<std::uint32_t> sample = bootstrap_sample(train.size(), boot);
    model.members_[i] = fit_tree(train.select(sample), tree_params, Prng(0));
  });
  return model;
}

std::vector<double> ForestModel::predict_dist(std::span<const double> features) const {
  check_arity(features);
  return mean_member_dist(members_, features, n_classes());
}

ForestModel fit_forest(const DatasetView& train, const ForestParams& params,
                       std::uint64_t seed, int n_jobs) {
  if (params.t < 1) throw Error("ensemble size must be at least 1");
  if (train.size() == 0) throw Error("empty training view");
  const int d = static_cast<int>(train.data->n_features());
  const int mtry = params.mtry == 0
                       ? std::max(1, static_cast<int>(std::floor(std::sqrt(
                             static_cast<double>(d)))))
                       : params.mtry;
  if (mtry < 1 || mtry > d) {
    throw Error("mtry must be in [1, " + std::to_string(d) + "]");
  }

  ForestModel model;
  model.init_shape(*train.data);
  model.seed_ = seed;
  model.mtry_ = mtry;
  model.members_.resize(static_cast<std::size_t>(params.t));
  const TreeParams tree_params{mtry, params.min_leaf};
  parallel_for(static_cast<std::size_t>(params.t), n_jobs, [&](std::size_t i) {
    DatasetView member_view;
    if (params.bootstrap) {
      Prng boot = Prng::stream(seed, "rf-boot", i);
      member_view = train.select(bootstrap_sample(train.size(), boot));
    } else {
      member_view = train;
    }
    model.members_[i] = fit_tree(member_view, tree_params, Prng::stream(seed, "rf-node", i));
  });
  return model;
}

// ---------------------------------------------------------------------------
// Discretization and naive Bayes
// ---------------------------------------------------------------------------

std::vector<std::vector<double>> discretize_fit(const DatasetView& train, int bins) {
  if (bins < 2) throw Error("bin count must be at least 2");
  if (train.size() == 0) throw Error("empty training view");
  const std::size_t d = train.data->n_features();
  const std::size_t n = train.size();

  std::vector<std::vector<double>> edges(d);
  std::vector<double> values(n);
  for (std::size_t f = 0; f < d; ++f) {
    for (std::size_t i = 0; i < n; ++i) values[i] = train.row(i)[f];
    std::sort(values.begin(), values.end());
    // equal-frequency boundaries; only boundaries between distinct adjacent
    // order statistics survive, so constant features yield zero edges
    for (int j = 1; j < bins; ++j) {
      const std::size_t idx =
          static_cast<std::size_t>(static_cast<std::uint64_t>(j) * n / static_cast<std::uint64_t>(bins));
      if (idx == 0 || idx >= n) continue;
      const double a = values[idx - 1];
      const double b = values[idx];
      if (!(a < b)) continue;
      const double edge = a + (b - a) / 2.0;
      if (edges[f].empty() || edge > edges[f].back()) edges[f].push_back(edge);
    }
  }
  return edges;
}

int discretize_apply(const std::vector<double>& edges, double value) {
  // values equal to an edge fall left; out-of-range values clamp naturally
  return static_cast<int>(std::lower_bound(edges.begin(), edges.end(), value) -
                          edges.begin());
}

std::vector<double> NaiveBayesModel::predict_dist(std::span<const double> features) const {
  check_arity(features);
  const std::size_t C = n_classes();
  std::vector<double> log_post(C);
  for (std::size_t c = 0; c < C; ++c) {
    double lp = std::log(priors_[c]);
    for (std::size_t f = 0; f < n_features_; ++f) {
      const int b = discretize_apply(bin_edges_[f], features[f]);
      lp += std::log(tables_[f][c][static_cast<std::size_t>(b)]);
    }
    log_post[c] = lp;
  }
  const double max_lp = *std::max_element(log_post.begin(), log_post.end());
  double total = 0.0;
  std::vector<double> post(C);
  for (std::size_t c = 0; c < C; ++c) {
    post[c] = std::exp(log_post[c] - max_lp);
    total += post[c];
  }
  for (double& p : post) p /= total;
  return post;
}

NaiveBayesModel fit_naive_bayes(const DatasetView& train, int bins, double alpha) {
  if (train.size() == 0) throw Error("empty training view");
  if (!(alpha > 0.0)) throw Error("smoothing pseudo-count must be positive");

  NaiveBayesModel model;
  model.init_shape(*train.data);
  model.alpha_ = alpha;
  model.bin_edges_ = discretize_fit(train, bins);

  const std::size_t C = model.n_classes();
  const std::size_t d = model.n_features();
  const std::size_t n = train.size();

  std::vector<std::uint64_t> class_counts(C, 0);
  for (std::size_t i = 0; i < n; ++i) {
    ++class_counts[static_cast<std::size_t>(train.class_of(i))];
  }
  model.priors_.resize(C);
  for (std::size_t c = 0; c < C; ++c) {
    model.priors_[c] = (static_cast<double>(class_counts[c]) + alpha) /
                       (static_cast<double>(n) + alpha * static_cast<double>(C));
  }

  model.tables_.assign(d, {});
  for (std::size_t f = 0; f < d; ++f) {
    const std::size_t n_bins = model.bin_edges_[f].size() + 1;
    std::vector<std::vector<std::uint64_t>> counts(C, std::vector<std::uint64_t>(n_bins, 0));
    for (std::size_t i = 0; i < n; ++i) {
      const int b = discretize_apply(model.bin_edges_[f], train.row(i)[f]);
      ++counts[static_cast<std::size_t>(train.class_of(i))][static_cast<std::size_t>(b)];
    }
    model.tables_[f].assign(C, std::vector<double>(n_bins, 0.0));
    for (std::size_t c = 0; c < C; ++c) {
      const double denom =
          static_cast<double>(class_counts[c]) + alpha * static_cast<double>(n_bins);
      for (std::size_t b = 0; b < n_bins; ++b) {
        model.tables_[f][c][b] = (static_cast<double>(counts[c][b]) + alpha) / denom;
      }
    }
  }
  return model;
}

// ---------------------------------------------------------------------------
// ZeroR and Vote
// ---------------------------------------------------------------------------

std::vector<double> ZeroRModel::predict_dist(std::span<const double> features) const {
  check_arity(features);
  return distribution_;
}

ZeroRModel fit_zero_r(const DatasetView& train) {
  if (train.size() == 0) throw Error("empty training view");
  ZeroRModel model;
  model.init_shape(*train.data);
  model.counts_.assign(model.n_classes(), 0);
  for (std::size_t i = 0; i < train.size(); ++i) {
    ++model.counts_[static_cast<std::size_t>(train.class_of(i))];
  }
  model.distribution_ = class_counts_to_dist(model.counts_);
  return model;
}

std::vector<double> VoteModel::predict_dist(std::span<const double> features) const {
  check_arity(features);
  if (members_.empty()) return fallback_->predict_dist(features);
  const std::size_t C = n_classes();
  std::vector<double> combined(C, 0.0);
  if (rule_ == VoteRule::kMajority) {
    for (const auto& m : members_) {
      combined[static_cast<std::size_t>(m->classify(features))] += 1.0;
    }
    for (double& v : combined) v /= static_cast<double>(members_.size());
  } else {
    for (const auto& m : members_) {
      const std::vector<double> dist = m->predict_dist(features);
      for (std::size_t c = 0; c < C; ++c) combined[c] += dist[c];
    }
    for (double& v : combined) v /= static_cast<double>(members_.size());
  }
  return combined;
}

VoteModel fit_vote(std::vector<std::unique_ptr<Model>> members, VoteRule rule,
                   const DatasetView& train) {
  VoteModel model;
  model.init_shape(*train.data);
  model.rule_ = rule;
  for (const auto& m : members) {
    if (m->n_features() != model.n_features() || m->classes() != model.classes()) {
      throw Error("vote member shape does not match the training data");
    }
  }
  model.members_ = std::move(members);
  if (model.members_.empty()) {
    model.fallback_ = std::make_unique<ZeroRModel>(fit_zero_r(train));
  }
  return model;
}

// ---------------------------------------------------------------------------
// Learner specs
// ---------------------------------------------------------------------------

bool LearnerSpec::valid_name(const std::string& name) {
  return name == "zeror" || name == "tree" || name == "bagging" || name == "forest" ||
         name == "bayesnet" || name == "vote";
}

std::unique_ptr<Model> fit_learner(const LearnerSpec& spec, const DatasetView& train,
                                   std::uint64_t seed, int n_jobs) {
  if (spec.name == "zeror") {
    return std::make_unique<ZeroRModel>(fit_zero_r(train));
  }
  if (spec.name == "tree") {
    const TreeParams params{0, spec.min_leaf};
    return std::make_unique<TreeModel>(fit_tree(train, params, Prng::stream(seed, "tree")));
  }
  if (spec.name == "bagging") {
    const int t = spec.trees > 0 ? spec.trees : 10;
    const TreeParams base{0, spec.min_leaf};
    return std::make_unique<BaggingModel>(fit_bagging(train, t, base, seed, n_jobs));
  }
  if (spec.name == "forest") {
    ForestParams params;
    params.t = spec.trees > 0 ? spec.trees : 100;
    params.mtry = spec.mtry;
    params.min_leaf = spec.min_leaf;
    return std::make_unique<ForestModel>(fit_forest(train, params, seed, n_jobs));
  }
  if (spec.name == "bayesnet") {
    return std::make_unique<NaiveBayesModel>(fit_naive_bayes(train, spec.bins, spec.alpha));
  }
  if (spec.name == "vote") {
    std::vector<std::unique_ptr<Model>> members;
    members.reserve(spec.members.size());
    for (std::size_t i = 0; i < spec.members.size(); ++i) {
      const std::uint64_t member_seed = mix64(seed ^ hash64("vote-member") ^ i);
      members.push_back(fit_learner(spec.members[i], train, member_seed, n_jobs));
    }
    return std::make_unique<VoteModel>(fit_vote(std::move(members), spec.rule, train));
  }
  throw Error("unknown learner '" + spec.name + "'");
}

// ---------------------------------------------------------------------------
// Persistence (versioned JSON)
// ---------------------------------------------------------------------------

namespace {

constexpr int kFormatVersion = 1;

json tree_payload(const TreeModel& tree) {
  json nodes = json::array();
  for (const TreeNode& node : tree.nodes()) {
    if (node.is_leaf()) {
      nodes.push_back({{"dist", node.distribution}, {"counts", node.counts}});
    } else {
      nodes.push_back({{"feature", node.feature},
                       {"threshold", node.threshold},
                       {"left", node.left},
                       {"right", node.right}});
    }
  }
  return json{{"nodes", std::move(nodes)}};
}

json model_object(const Model& model);

json params_of(const Model& model) {
  if (const auto* bag = dynamic_cast<const BaggingModel*>(&model)) {
    return json{{"t", bag->members().size()}, {"seed", bag->seed()}};
  }
  if (const auto* forest = dynamic_cast<const ForestModel*>(&model)) {
    return json{{"t", forest->members().size()},
                {"mtry", forest->mtry()},
                {"seed", forest->seed()}};
  }
  if (const auto* nb = dynamic_cast<const NaiveBayesModel*>(&model)) {
    return json{{"alpha", nb->alpha()}};
  }
  if (const auto* vote = dynamic_cast<const VoteModel*>(&model)) {
    return json{{"rule", vote->rule() == VoteRule::kMajority ? "majority" : "average"}};
  }
  return json::object();
}

json payload_of(const Model& model) {
  if (const auto* tree = dynamic_cast<const TreeModel*>(&model)) {
    return tree_payload(*tree);
  }
  if (const auto* bag = dynamic_cast<const BaggingModel*>(&model)) {
    json members = json::array();
    for (const TreeModel& m : bag->members()) members.push_back(tree_payload(m));
    return json{{"members", std::move(members)}};
  }
  if (const auto* forest = dynamic_cast<const ForestModel*>(&model)) {
    json members = json::array();
    for (const TreeModel& m : forest->members()) members.push_back(tree_payload(m));
    return json{{"members", std::move(members)}};
  }
  if (const auto* nb = dynamic_cast<const NaiveBayesModel*>(&model)) {
    return json{{"edges", nb->bin_edges()},
                {"priors", nb->priors()},
                {"tables", nb->tables()}};
  }
  if (const auto* zero = dynamic_cast<const ZeroRModel*>(&model)) {
    return json{{"distribution", zero->distribution()}};
  }
  if (const auto* vote = dynamic_cast<const VoteModel*>(&model)) {
    json members = json::array();
    for (const auto& m : vote->members()) members.push_back(model_object(*m));
    json payload{{"members", std::move(members)}};
    if (vote->fallback() != nullptr) {
      payload["fallback"] = json{{"distribution", vote->fallback()->distribution()}};
    }
    return payload;
  }
  throw ModelFormatError("unsupported model kind: " + model.kind());
}

json model_object(const Model& model) {
  return json{{"kind", model.kind()},
              {"classes", model.classes()},
              {"n_features", model.n_features()},
              {"params", params_of(model)},
              {"payload", payload_of(model)}};
}

}  // namespace

class ModelReader {
 public:
  static std::unique_ptr<Model> read(const json& obj) {
    const std::string kind = obj.at("kind").get<std::string>();
    const auto classes = obj.at("classes").get<std::vector<std::string>>();
    const auto n_features = obj.at("n_features").get<std::size_t>();
    const json& params = obj.at("params");
    const json& payload = obj.at("payload");

    std::unique_ptr<Model> model;
    if (kind == "tree") {
      auto tree = std::make_unique<TreeModel>();
      tree->nodes_ = read_nodes(payload, classes.size());
      model = std::move(tree);
    } else if (kind == "bagging") {
      auto bag = std::make_unique<BaggingModel>();
      bag->seed_ = params.at("seed").get<std::uint64_t>();
      for (const json& m : payload.at("members")) {
        TreeModel tree;
        tree.nodes_ = read_nodes(m, classes.size());
        tree.classes_ = classes;
        tree.n_features_ = n_features;
        bag->members_.push_back(std::move(tree));
      }
      if (bag->members_.empty()) throw ModelFormatError("bagging model with no members");
      model = std::move(bag);
    } else if (kind == "forest") {
      auto forest = std::make_unique<ForestModel>();
      forest->seed_ = params.at("seed").get<std::uint64_t>();
      forest->mtry_ = params.at("mtry").get<int>();
      for (const json& m : payload.at("members")) {
        TreeModel tree;
        tree.nodes_ = read_nodes(m, classes.size());
        tree.classes_ = classes;
        tree.n_features_ = n_features;
        forest->members_.push_back(std::move(tree));
      }
      if (forest->members_.empty()) throw ModelFormatError("forest model with no members");
      model = std::move(forest);
    } else if (kind == "bayesnet") {
      auto nb = std::make_unique<NaiveBayesModel>();
      nb->alpha_ = params.at("alpha").get<double>();
      nb->bin_edges_ = payload.at("edges").get<std::vector<std::vector<double>>>();
      nb->priors_ = payload.at("priors").get<std::vector<double>>();
      nb->tables_ =
          payload.at("tables").get<std::vector<std::vector<std::vector<double>>>>();
      if (nb->bin_edges_.size() != n_features || nb->tables_.size() != n_features ||
          nb->priors_.size() != classes.size()) {
        throw ModelFormatError("bayesnet payload shape mismatch");
      }
      model = std::move(nb);
    } else if (kind == "zeror") {
      auto zero = std::make_unique<ZeroRModel>();
      zero->distribution_ = payload.at("distribution").get<std::vector<double>>();
      if (zero->distribution_.size() != classes.size()) {
        throw ModelFormatError("zeror payload shape mismatch");
      }
      model = std::move(zero);
    } else if (kind == "vote") {
      auto vote = std::make_unique<VoteModel>();
      const std::string rule = params.at("rule").get<std::string>();
      if (rule == "majority") {
        vote->rule_ = VoteRule::kMajority;
      } else if (rule == "average") {
        vote->rule_ = VoteRule::kAverage;
      } else {
        throw ModelFormatError("unknown vote rule '" + rule + "'");
      }
      for (const json& m : payload.at("members")) {
        vote->members_.push_back(read(m));
      }
      if (vote->members_.empty()) {
        auto fallback = std::make_unique<ZeroRModel>();
        fallback->distribution_ =
            payload.at("fallback").at("distribution").get<std::vector<double>>();
        fallback->classes_ = classes;
        fallback->n_features_ = n_features;
        vote->fallback_ = std::move(fallback);
      }
      model = std::move(vote);
    } else {
      throw ModelFormatError("unknown model kind '" + kind + "'");
    }
    model->classes_ = classes;
    model->n_features_ = n_features;
    return model;
  }

 private:
  static std::vector<TreeNode> read_nodes(const json& payload, std::size_t n_classes) {
    std::vector<TreeNode> nodes;
    const json& arr = payload.at("nodes");
    nodes.reserve(arr.size());
    for (const json& item : arr) {
      TreeNode node;
      if (item.contains("feature")) {
        node.feature = item.at("feature").get<int>();
        node.threshold = item.at("threshold").get<double>();
        node.left = item.at("left").get<std::int32_t>();
        node.right = item.at("right").get<std::int32_t>();
        if (node.left < 0 || node.right < 0 ||
            static_cast<std::size_t>(node.left) >= arr.size() ||
            static_cast<std::size_t>(node.right) >= arr.size()) {
          throw ModelFormatError("tree node child index out of range");
        }
      } else {
        node.distribution = item.at("dist").get<std::vector<double>>();
        node.counts = item.at("counts").get<std::vector<std::uint64_t>>();
        if (node.distribution.size() != n_classes) {
          throw ModelFormatError("leaf distribution arity mismatch");
        }
      }
      nodes.push_back(std::move(node));
    }
    if (nodes.empty()) throw ModelFormatError("tree with no nodes");
    return nodes;
  }
};

std::string save_model(const Model& model, std::uint64_t seed) {
  json root{{"format_version", kFormatVersion}, {"seed", seed}};
  json obj = model_object(model);
  root.update(obj);
  return root.dump(1) + "\n";
}

std::unique_ptr<Model> load_model(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ModelFormatError(std::string("model file is not valid JSON: ") + e.what());
  }
  try {
    const int version = root.at("format_version").get<int>();
    if (version != kFormatVersion) {
      throw ModelFormatError("unsupported model format_version " + std::to_string(version));
    }
    return ModelReader::read(root);
  } catch (const json::exception& e) {
    throw ModelFormatError(std::string("malformed model payload: ") + e.what());
  }
}

std::unique_ptr<Model> load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_model(ss.str());
}

void save_model_file(const Model& model, std::uint64_t seed, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open file for writing: " + path);
  out << save_model(model, seed);
  if (!out) throw Error("write failed: " + path);
}

}  // namespace shapeclass
