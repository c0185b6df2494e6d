// Copyright 2026 The shapeclass Authors.
// SPDX-License-Identifier: Apache-2.0
//
// shapeclass: batch pipeline for classifying single-object images by shape.
// Subcommands: synth, segment, extract, train, predict, crossval.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "shapeclass/dataio.hpp"
#include "shapeclass/error.hpp"
#include "shapeclass/eval.hpp"
#include "shapeclass/learners.hpp"
#include "shapeclass/pipeline.hpp"
#include "shapeclass/raster.hpp"
#include "shapeclass/synth.hpp"

namespace fs = std::filesystem;
using namespace shapeclass;

namespace {

Polarity parse_polarity(const std::string& name) {
  if (name == "dark") return Polarity::kDarkForeground;
  if (name == "light") return Polarity::kLightForeground;
  return Polarity::kMinorityForeground;
}

std::vector<std::string> split_commas(const std::string& list) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t comma = list.find(',', start);
    const std::string item =
        list.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

struct LearnerFlags {
  std::string name;
  int trees = 0;
  int mtry = 0;
  int min_leaf = 1;
  int bins = 10;
  double alpha = 0.5;
  std::string rule = "majority";
  std::string members;

  LearnerSpec to_spec() const {
    LearnerSpec spec;
    spec.name = name;
    spec.trees = trees;
    spec.mtry = mtry;
    spec.min_leaf = min_leaf;
    spec.bins = bins;
    spec.alpha = alpha;
    spec.rule = rule == "average" ? VoteRule::kAverage : VoteRule::kMajority;
    for (const std::string& member : split_commas(members)) {
      LearnerSpec ms;
      ms.name = member;
      spec.members.push_back(std::move(ms));
    }
    return spec;
  }
};

void add_learner_flags(CLI::App* cmd, LearnerFlags& flags) {
  cmd->add_option("--learner", flags.name, "Learner: zeror|tree|bagging|forest|bayesnet|vote")
      ->required()
      ->check(CLI::IsMember({"zeror", "tree", "bagging", "forest", "bayesnet", "vote"}));
  cmd->add_option("--trees", flags.trees, "Ensemble size (default: 10 bagging, 100 forest)");
  cmd->add_option("--mtry", flags.mtry, "Features per node for forest (default: floor(sqrt(d)))");
  cmd->add_option("--min-leaf", flags.min_leaf, "Minimum instances per leaf")->default_val(1);
  cmd->add_option("--bins", flags.bins, "Discretization bins for bayesnet")->default_val(10);
  cmd->add_option("--alpha", flags.alpha, "Smoothing pseudo-count for bayesnet")
      ->default_val(0.5);
  cmd->add_option("--rule", flags.rule, "Vote combination rule")
      ->check(CLI::IsMember({"majority", "average"}))
      ->default_val("majority");
  cmd->add_option("--members", flags.members,
                  "Vote members as a comma list of learner names (empty permitted)");
}

void validate_members(const LearnerSpec& spec) {
  for (const LearnerSpec& m : spec.members) {
    if (!LearnerSpec::valid_name(m.name) || m.name == "vote") {
      throw CLI::ValidationError("--members", "invalid vote member '" + m.name + "'");
    }
  }
}

void write_text_file(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open file for writing: " + path);
  out << text;
  if (!out) throw Error("write failed: " + path);
}

int run_synth(const std::string& out_dir, int per_class, std::uint64_t seed, double jitter) {
  GenParams params;
  params.seed = seed;
  params.jitter = jitter;
  const SynthDataset ds = generate_dataset(per_class, params);
  fs::create_directories(out_dir);
  for (std::size_t i = 0; i < ds.images.size(); ++i) {
    write_pgm_file(ds.images[i], (fs::path(out_dir) / ds.manifest[i].filename).string());
  }
  write_text_file(manifest_csv(ds.manifest), (fs::path(out_dir) / "manifest.csv").string());
  std::cout << "wrote " << ds.images.size() << " images and manifest.csv to " << out_dir
            << "\n";
  return 0;
}

int run_segment(const std::string& in, const std::string& out, const std::string& polarity) {
  const GrayImage img = load_image_file(in);
  const BinaryMask mask = segment(img, parse_polarity(polarity));
  write_mask_pgm_file(mask, out);
  return 0;
}

int run_extract(const std::string& in_dir, const std::string& manifest_path,
                const std::string& out, int connectivity, int jobs) {
  std::ifstream mf(manifest_path, std::ios::binary);
  if (!mf) throw Error("cannot open file: " + manifest_path);
  std::string manifest_text((std::istreambuf_iterator<char>(mf)),
                            std::istreambuf_iterator<char>());
  const std::vector<ManifestEntry> entries = parse_manifest_csv(manifest_text);
  if (entries.empty()) throw Error("manifest is empty: " + manifest_path);

  std::vector<GrayImage> images;
  std::vector<std::string> ids, labels;
  images.reserve(entries.size());
  for (const ManifestEntry& e : entries) {
    images.push_back(load_image_file((fs::path(in_dir) / e.filename).string()));
    ids.push_back(e.filename);
    labels.push_back(e.shape_class);
  }
  const Dataset ds = features_from_images(images, ids, labels, connectivity,
                                          Polarity::kMinorityForeground, jobs);
  write_text_file(write_csv(ds), out);
  std::cout << "extracted " << ds.n_instances() << " feature vectors to " << out << "\n";
  return 0;
}

int run_train(const std::string& data, const LearnerFlags& flags, const std::string& out,
              std::uint64_t seed, int jobs) {
  const LearnerSpec spec = flags.to_spec();
  validate_members(spec);
  const Dataset ds = parse_data_file(data);
  const auto model = fit_learner(spec, DatasetView::all(ds), seed, jobs);
  save_model_file(*model, seed, out);
  std::cout << "trained " << spec.name << " on " << ds.n_instances() << " instances -> "
            << out << "\n";
  return 0;
}

int run_predict(const std::string& model_path, const std::string& data,
                const std::string& out) {
  const auto model = load_model_file(model_path);
  const Dataset ds = parse_data_file(data);
  if (ds.n_features() != model->n_features()) {
    throw Error("data has " + std::to_string(ds.n_features()) + " features, model expects " +
                std::to_string(model->n_features()));
  }

  std::string text = "id,predicted";
  for (const std::string& c : model->classes()) text += "," + c;
  text += "\n";
  for (std::size_t i = 0; i < ds.n_instances(); ++i) {
    const auto& row = ds.instances[i];
    const std::span<const double> features(row.data(), ds.n_features());
    const std::vector<double> dist = model->predict_dist(features);
    text += ds.ids.empty() ? std::to_string(i) : ds.ids[i];
    text += "," + model->classes()[static_cast<std::size_t>(argmax_lowest(dist))];
    for (const double p : dist) text += "," + format_double(p);
    text += "\n";
  }
  write_text_file(text, out);
  std::cout << "wrote predictions for " << ds.n_instances() << " instances to " << out << "\n";
  return 0;
}

int run_crossval(const std::string& data, const LearnerFlags& flags, int folds,
                 std::uint64_t seed, const std::string& report_format, int jobs) {
  const LearnerSpec spec = flags.to_spec();
  validate_members(spec);
  const Dataset ds = parse_data_file(data);
  const EvalReport report = cross_validate(ds, spec, folds, seed, jobs);
  if (report_format == "json") {
    std::cout << report_json(report);
  } else if (report_format == "table") {
    std::cout << report_table({report});
  } else {
    std::cout << report_line(report) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shape-feature pipeline for single-object images: synthesize, "
               "segment, extract features, train and evaluate classifiers"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic shape image set");
  std::string synth_out;
  int per_class = 0;
  std::uint64_t synth_seed = 42;
  double synth_jitter = 0.5;
  synth->add_option("--out", synth_out, "Output directory")->required();
  synth->add_option("--per-class", per_class, "Images per shape class")
      ->required()
      ->check(CLI::PositiveNumber);
  synth->add_option("--seed", synth_seed, "Generator seed")->default_val(42);
  synth->add_option("--jitter", synth_jitter, "Boundary noise amplitude in pixels")
      ->default_val(0.5);

  // segment
  auto* seg = app.add_subcommand("segment", "Threshold one image into a mask (Otsu)");
  std::string seg_in, seg_out, seg_polarity = "minority";
  seg->add_option("--in", seg_in, "Input PGM/PPM image")->required();
  seg->add_option("--out", seg_out, "Output mask PGM")->required();
  seg->add_option("--polarity", seg_polarity, "dark|light|minority")
      ->check(CLI::IsMember({"dark", "light", "minority"}))
      ->default_val("minority");

  // extract
  auto* ext = app.add_subcommand("extract", "Extract shape features for a manifest of images");
  std::string ext_in, ext_manifest, ext_out;
  int ext_conn = 8, ext_jobs = 1;
  ext->add_option("--in", ext_in, "Image directory")->required();
  ext->add_option("--manifest", ext_manifest, "Manifest CSV (filename,class)")->required();
  ext->add_option("--out", ext_out, "Output feature CSV")->required();
  ext->add_option("--connectivity", ext_conn, "4 or 8")
      ->check(CLI::IsMember({4, 8}))
      ->default_val(8);
  ext->add_option("--jobs", ext_jobs, "Worker threads (0 = all cores)")->default_val(1);

  // train
  auto* train = app.add_subcommand("train", "Fit a learner and save the model as JSON");
  std::string train_data, train_out;
  std::uint64_t train_seed = 42;
  int train_jobs = 1;
  LearnerFlags train_flags;
  train->add_option("--data", train_data, "Feature CSV or ARFF file")->required();
  add_learner_flags(train, train_flags);
  train->add_option("--out", train_out, "Output model JSON")->required();
  train->add_option("--seed", train_seed, "Training seed")->default_val(42);
  train->add_option("--jobs", train_jobs, "Worker threads (0 = all cores)")->default_val(1);

  // predict
  auto* pred = app.add_subcommand("predict", "Predict classes with a saved model");
  std::string pred_model, pred_data, pred_out;
  pred->add_option("--model", pred_model, "Model JSON from train")->required();
  pred->add_option("--data", pred_data, "Feature CSV or ARFF file")->required();
  pred->add_option("--out", pred_out, "Output prediction CSV")->required();

  // crossval
  auto* cv = app.add_subcommand("crossval", "Stratified k-fold cross-validation");
  std::string cv_data, cv_report = "line";
  int cv_folds = 10, cv_jobs = 1;
  std::uint64_t cv_seed = 42;
  LearnerFlags cv_flags;
  cv->add_option("--data", cv_data, "Feature CSV or ARFF file")->required();
  add_learner_flags(cv, cv_flags);
  cv->add_option("--folds", cv_folds, "Fold count")->default_val(10);
  cv->add_option("--seed", cv_seed, "Fold/learner seed")->default_val(42);
  cv->add_option("--report", cv_report, "json|table (default: one tab-separated line)")
      ->check(CLI::IsMember({"json", "table"}));
  cv->add_option("--jobs", cv_jobs, "Worker threads (0 = all cores)")->default_val(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n";
    std::cerr << app.help();
    return 2;
  }

  try {
    if (app.got_subcommand(synth)) {
      return run_synth(synth_out, per_class, synth_seed, synth_jitter);
    }
    if (app.got_subcommand(seg)) return run_segment(seg_in, seg_out, seg_polarity);
    if (app.got_subcommand(ext)) {
      return run_extract(ext_in, ext_manifest, ext_out, ext_conn, ext_jobs);
    }
    if (app.got_subcommand(train)) {
      return run_train(train_data, train_flags, train_out, train_seed, train_jobs);
    }
    if (app.got_subcommand(pred)) return run_predict(pred_model, pred_data, pred_out);
    if (app.got_subcommand(cv)) {
      return run_crossval(cv_data, cv_flags, cv_folds, cv_seed, cv_report, cv_jobs);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
