#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "movemine/classify/common.hpp"
#include "movemine/classify/forest.hpp"
#include "movemine/classify/logreg.hpp"
#include "movemine/classify/metrics.hpp"
#include "movemine/classify/mlp.hpp"
#include "movemine/classify/naive_bayes.hpp"
#include "movemine/classify/tree.hpp"
#include "movemine/error.hpp"
#include "movemine/parallel.hpp"
#include "movemine/rng.hpp"

namespace movemine {

struct CvConfig {
  int n_splits = 10;
  bool shuffle = true;
  uint64_t seed = 10;

  void validate(size_t rows) const {
    if (n_splits < 2) fail("config", "cross-validation needs at least 2 folds");
    if (size_t(n_splits) > rows)
      fail("config", "more folds than rows (" + std::to_string(n_splits) + " > " +
                         std::to_string(rows) + ")");
  }
};

// Seeded shuffle, then contiguous folds whose sizes differ by at most one
// (the first rows % n_splits folds take the extra row).
inline std::vector<std::vector<uint32_t>> kfold_indices(size_t rows,
                                                        const CvConfig& cfg) {
  cfg.validate(rows);
  std::vector<uint32_t> idx(rows);
  for (uint32_t i = 0; i < rows; ++i) idx[i] = i;
  if (cfg.shuffle) {
    std::mt19937_64 rng(cfg.seed);
    shuffle_vec(rng, idx);
  }
  std::vector<std::vector<uint32_t>> folds(size_t(cfg.n_splits));
  size_t base = rows / size_t(cfg.n_splits);
  size_t extra = rows % size_t(cfg.n_splits);
  size_t at = 0;
  for (size_t f = 0; f < folds.size(); ++f) {
    size_t len = base + (f < extra ? 1 : 0);
    folds[f].assign(idx.begin() + at, idx.begin() + at + len);
    at += len;
  }
  return folds;
}

struct CvReport {
  std::string model;
  std::string algorithm;
  std::vector<FoldMetrics> folds;
  FoldMetrics mean;
  std::vector<std::string> warnings;
};

// Builds the classifier for one fold; fold_seed is derived from the model's
// base seed and the fold index so parallel fold training stays reproducible.
using ClassifierFactory =
    std::function<std::unique_ptr<Classifier>(uint64_t fold_seed)>;

inline CvReport cross_validate(const std::string& model_name,
                               const std::string& algorithm,
                               const ClassifierFactory& make, const Dataset& data,
                               const CvConfig& cfg, uint64_t model_seed = 0,
                               unsigned threads = 1) {
  auto folds = kfold_indices(data.size(), cfg);
  CvReport report;
  report.model = model_name;
  report.algorithm = algorithm;
  report.folds.resize(folds.size());
  std::vector<std::vector<std::string>> fold_warnings(folds.size());

  parallel_for(folds.size(), threads, [&](size_t f) {
    std::vector<bool> in_test(data.size(), false);
    for (uint32_t r : folds[f]) in_test[r] = true;

    Dataset train;
    train.cols = data.cols;
    for (size_t r = 0; r < data.size(); ++r) {
      if (in_test[r]) continue;
      train.rows.push_back(data.rows[r]);
      train.labels.push_back(data.labels[r]);
    }
    auto model = make(derive_seed(model_seed, f));
    model->fit(train);

    std::vector<int> truth, pred;
    truth.reserve(folds[f].size());
    pred.reserve(folds[f].size());
    for (uint32_t r : folds[f]) {
      truth.push_back(data.labels[r]);
      pred.push_back(model->predict_row(data.rows[r]));
    }
    report.folds[f] = classification_metrics(truth, pred, &fold_warnings[f]);
  });

  for (size_t f = 0; f < folds.size(); ++f) {
    report.mean.accuracy += report.folds[f].accuracy;
    report.mean.precision += report.folds[f].precision;
    report.mean.recall += report.folds[f].recall;
    report.mean.f1 += report.folds[f].f1;
    for (const auto& w : fold_warnings[f])
      report.warnings.push_back("fold " + std::to_string(f) + ": " + w);
  }
  double k = double(folds.size());
  report.mean.accuracy /= k;
  report.mean.precision /= k;
  report.mean.recall /= k;
  report.mean.f1 /= k;
  return report;
}

// The five model families exposed on the CLI, with their fixed defaults.
struct ModelParams {
  LogRegConfig logreg;
  TreeConfig tree;
  ForestConfig forest;
  MlpConfig mlp;
};

inline const std::vector<std::string>& model_names() {
  static const std::vector<std::string> names = {"logreg", "gnb", "cart", "rf",
                                                 "mlp"};
  return names;
}

inline ClassifierFactory make_factory(const std::string& model,
                                      const ModelParams& params = {}) {
  if (model == "logreg")
    return [cfg = params.logreg](uint64_t) {
      return std::make_unique<LogisticRegressionL1>(cfg);
    };
  if (model == "gnb")
    return [](uint64_t) { return std::make_unique<GaussianNb>(); };
  if (model == "cart")
    return [cfg = params.tree](uint64_t) {
      return std::make_unique<DecisionTree>(cfg);
    };
  if (model == "rf")
    return [cfg = params.forest](uint64_t fold_seed) {
      ForestConfig c = cfg;
      c.seed = fold_seed;
      return std::make_unique<RandomForest>(c);
    };
  if (model == "mlp")
    return [cfg = params.mlp](uint64_t fold_seed) {
      MlpConfig c = cfg;
      c.seed = fold_seed;
      return std::make_unique<MlpClassifier>(c);
    };
  fail("config", "unknown model '" + model +
                     "' (expected logreg, gnb, cart, rf or mlp)");
}

// Base seeds for fold-seed derivation follow each model's own random_state.
inline uint64_t model_base_seed(const std::string& model,
                                const ModelParams& params = {}) {
  if (model == "rf") return params.forest.seed;
  if (model == "mlp") return params.mlp.seed;
  return 0;
}

}  // namespace movemine
