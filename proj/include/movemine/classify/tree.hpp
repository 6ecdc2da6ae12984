#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "movemine/classify/common.hpp"
#include "movemine/error.hpp"
#include "movemine/rng.hpp"

namespace movemine {

struct TreeConfig {
  int max_depth = 0;  // 0 = unbounded
};

// CART-style binary classification tree with the Gini criterion. Greedy
// splits at midpoints between consecutive distinct feature values; the best
// Gini decrease wins, ties resolved to the lowest column index then lowest
// threshold. A node becomes a leaf when pure, at max depth, or when no
// feature varies within it. Impure nodes split even at zero gain (Gini is
// concave, so gain is never negative) — two constant features XOR-ed need
// that to reach their pure grandchildren. Leaf ties predict the smaller
// label. Unlike the other learners, pure-label input is accepted: the tree
// degenerates to a single leaf.
class DecisionTree : public Classifier {
 public:
  explicit DecisionTree(TreeConfig cfg = {}) : cfg_(cfg) {}

  void fit(const Dataset& d) override {
    std::vector<uint32_t> all(d.size());
    for (uint32_t i = 0; i < d.size(); ++i) all[i] = i;
    fit_on(d, all, 0, nullptr);
  }

  // Training entry point shared with random forests: explicit row multiset
  // (bootstrap samples repeat indices, and may hold a single label) and,
  // when rng is given, `mtry` features sampled without replacement per split.
  void fit_on(const Dataset& d, const std::vector<uint32_t>& row_indices,
              int mtry, std::mt19937_64* rng) {
    if (d.size() == 0) fail("empty-input", "no training rows");
    if (d.cols == 0) fail("degenerate-input", "zero feature columns");
    for (int y : d.labels)
      if (y != 0 && y != 1) fail("degenerate-labels", "labels must be 0 or 1");
    if (row_indices.empty()) fail("empty-input", "decision tree: no rows");
    cols_ = d.cols;
    mtry_ = mtry;
    nodes_.clear();
    std::vector<uint32_t> rows = row_indices;
    build(d, rows, 0, rng);
    fitted_ = true;
  }

  int predict_row(const std::vector<double>& x) const override {
    if (!fitted_) fail("state", "decision tree is not fitted");
    size_t at = 0;
    for (;;) {
      const Node& n = nodes_[at];
      if (n.leaf) return n.label;
      at = x[n.feature] <= n.threshold ? n.left : n.right;
    }
  }

  int depth() const {
    if (!fitted_) fail("state", "decision tree is not fitted");
    return depth_of(0);
  }
  size_t node_count() const { return nodes_.size(); }

 private:
  struct Node {
    bool leaf = true;
    int label = 0;
    uint32_t feature = 0;
    double threshold = 0.0;
    size_t left = 0, right = 0;
  };

  static double gini(const int counts[2], int n) {
    double p0 = double(counts[0]) / n, p1 = double(counts[1]) / n;
    return 1.0 - p0 * p0 - p1 * p1;
  }

  int depth_of(size_t at) const {
    const Node& n = nodes_[at];
    if (n.leaf) return 0;
    return 1 + std::max(depth_of(n.left), depth_of(n.right));
  }

  std::vector<uint32_t> candidate_features(std::mt19937_64* rng) const {
    std::vector<uint32_t> feats(cols_);
    for (uint32_t j = 0; j < cols_; ++j) feats[j] = j;
    if (!rng || mtry_ <= 0 || size_t(mtry_) >= cols_) return feats;
    // Partial Fisher-Yates, then ascending order for deterministic ties.
    for (int i = 0; i < mtry_; ++i) {
      size_t j = i + size_t(uniform_below(*rng, feats.size() - i));
      std::swap(feats[i], feats[j]);
    }
    feats.resize(size_t(mtry_));
    std::sort(feats.begin(), feats.end());
    return feats;
  }

  size_t build(const Dataset& d, std::vector<uint32_t>& rows, int depth,
               std::mt19937_64* rng) {
    int counts[2] = {0, 0};
    for (uint32_t r : rows) ++counts[d.labels[r]];

    size_t index = nodes_.size();
    nodes_.push_back({});
    nodes_[index].label = counts[1] > counts[0] ? 1 : 0;

    bool at_depth_cap = cfg_.max_depth > 0 && depth >= cfg_.max_depth;
    if (counts[0] == 0 || counts[1] == 0 || at_depth_cap) return index;

    const double parent_impurity = gini(counts, int(rows.size()));
    double best_gain = -1.0;
    uint32_t best_feature = 0;
    double best_threshold = 0.0;

    std::vector<double> values;
    for (uint32_t f : candidate_features(rng)) {
      values.clear();
      for (uint32_t r : rows) values.push_back(d.rows[r][f]);
      std::sort(values.begin(), values.end());
      values.erase(std::unique(values.begin(), values.end()), values.end());
      for (size_t v = 0; v + 1 < values.size(); ++v) {
        double threshold = values[v] + (values[v + 1] - values[v]) / 2.0;
        int left[2] = {0, 0};
        int nl = 0;
        for (uint32_t r : rows)
          if (d.rows[r][f] <= threshold) {
            ++left[d.labels[r]];
            ++nl;
          }
        int nr = int(rows.size()) - nl;
        int right[2] = {counts[0] - left[0], counts[1] - left[1]};
        double gain = parent_impurity - (nl * gini(left, nl) + nr * gini(right, nr)) /
                                            double(rows.size());
        if (gain > best_gain + 1e-12) {
          best_gain = gain;
          best_feature = f;
          best_threshold = threshold;
        }
      }
    }
    if (best_gain < 0.0) return index;  // nothing varies: stay a leaf

    std::vector<uint32_t> left_rows, right_rows;
    for (uint32_t r : rows)
      (d.rows[r][best_feature] <= best_threshold ? left_rows : right_rows)
          .push_back(r);
    rows.clear();
    rows.shrink_to_fit();

    size_t left = build(d, left_rows, depth + 1, rng);
    size_t right = build(d, right_rows, depth + 1, rng);
    nodes_[index].leaf = false;
    nodes_[index].feature = best_feature;
    nodes_[index].threshold = best_threshold;
    nodes_[index].left = left;
    nodes_[index].right = right;
    return index;
  }

  TreeConfig cfg_;
  size_t cols_ = 0;
  int mtry_ = 0;
  std::vector<Node> nodes_;
  bool fitted_ = false;
};

}  // namespace movemine
