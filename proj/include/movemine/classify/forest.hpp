#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "movemine/classify/tree.hpp"
#include "movemine/parallel.hpp"
#include "movemine/rng.hpp"

namespace movemine {

struct ForestConfig {
  int n_trees = 100;
  uint64_t seed = 1;
  bool bootstrap = true;
  int mtry = 0;  // features per split; 0 = floor(sqrt(cols)), min 1
  unsigned threads = 1;
};

// Majority vote over CART trees grown on bootstrap samples with per-split
// feature subsampling. Every tree draws from its own generator seeded by
// (seed, tree index), so results do not depend on build order or thread
// count. Vote ties predict the smaller label.
class RandomForest : public Classifier {
 public:
  explicit RandomForest(ForestConfig cfg = {}) : cfg_(cfg) {}

  void fit(const Dataset& d) override {
    validate_training_data(d);
    if (cfg_.n_trees < 1) fail("config", "forest needs at least one tree");
    int mtry = cfg_.mtry > 0 ? std::min<int>(cfg_.mtry, int(d.cols))
                             : std::max(1, int(std::sqrt(double(d.cols))));
    trees_.assign(size_t(cfg_.n_trees), DecisionTree{});
    parallel_for(size_t(cfg_.n_trees), cfg_.threads, [&](size_t t) {
      std::mt19937_64 rng(derive_seed(cfg_.seed, t));
      std::vector<uint32_t> rows(d.size());
      if (cfg_.bootstrap) {
        for (auto& r : rows) r = uint32_t(uniform_below(rng, d.size()));
      } else {
        for (uint32_t i = 0; i < d.size(); ++i) rows[i] = i;
      }
      trees_[t].fit_on(d, rows, mtry, &rng);
    });
    fitted_ = true;
  }

  int predict_row(const std::vector<double>& x) const override {
    if (!fitted_) fail("state", "random forest is not fitted");
    int votes = 0;
    for (const auto& tree : trees_) votes += tree.predict_row(x);
    return 2 * votes > int(trees_.size()) ? 1 : 0;
  }

 private:
  ForestConfig cfg_;
  std::vector<DecisionTree> trees_;
  bool fitted_ = false;
};

}  // namespace movemine
