#pragma once

#include <algorithm>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "movemine/error.hpp"
#include "movemine/featurize.hpp"

namespace movemine {

// Dense labeled training data; labels are 0/1. Feature values are arbitrary
// doubles so the learners stay usable beyond binary pattern matrices.
struct Dataset {
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  size_t cols = 0;

  size_t size() const { return rows.size(); }
};

// Maps a feature matrix to a dataset. Label names are assigned 0/1 in ASCII
// order; more than two distinct labels is an error.
inline Dataset dataset_from_matrix(const FeatureMatrix& m,
                                   std::vector<std::string>* label_names = nullptr) {
  std::set<std::string> names(m.labels.begin(), m.labels.end());
  if (names.size() > 2)
    fail("degenerate-labels", "more than two position labels in the matrix");
  std::vector<std::string> order(names.begin(), names.end());

  Dataset d;
  d.cols = m.cols();
  d.rows.reserve(m.rows());
  d.labels.reserve(m.rows());
  for (size_t r = 0; r < m.rows(); ++r) {
    std::vector<double> row(m.values[r].begin(), m.values[r].end());
    d.rows.push_back(std::move(row));
    d.labels.push_back(m.labels[r] == order.front() ? 0 : 1);
  }
  if (label_names) *label_names = order;
  return d;
}

inline void validate_training_data(const Dataset& d) {
  if (d.size() == 0) fail("empty-input", "no training rows");
  if (d.cols == 0) fail("degenerate-input", "zero feature columns");
  bool has0 = false, has1 = false;
  for (int y : d.labels) {
    if (y == 0) has0 = true;
    else if (y == 1) has1 = true;
    else fail("degenerate-labels", "labels must be 0 or 1");
  }
  if (!has0 || !has1)
    fail("degenerate-labels", "training data contains a single label");
}

class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual void fit(const Dataset& data) = 0;
  virtual int predict_row(const std::vector<double>& x) const = 0;

  std::vector<int> predict(const std::vector<std::vector<double>>& rows) const {
    std::vector<int> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(predict_row(r));
    return out;
  }
};

}  // namespace movemine
