#pragma once

#include <string>
#include <vector>

#include "movemine/error.hpp"

namespace movemine {

// accuracy is a percentage; precision / recall / f1 are label-frequency
// weighted averages in [0, 1].
struct FoldMetrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Weighted-average metrics for binary predictions. A label never predicted
// contributes precision 0 with a warning; a fold holding a single true label
// is warned about and scored on the labels it has.
inline FoldMetrics classification_metrics(const std::vector<int>& truth,
                                          const std::vector<int>& pred,
                                          std::vector<std::string>* warnings = nullptr) {
  if (truth.empty() || truth.size() != pred.size())
    fail("config", "metrics need equally sized truth/prediction vectors");
  const double n = double(truth.size());

  int correct = 0;
  int support[2] = {0, 0}, predicted[2] = {0, 0}, tp[2] = {0, 0};
  for (size_t i = 0; i < truth.size(); ++i) {
    ++support[truth[i]];
    ++predicted[pred[i]];
    if (truth[i] == pred[i]) {
      ++correct;
      ++tp[truth[i]];
    }
  }
  if (support[0] == 0 || support[1] == 0)
    warn(warnings, "fold contains a single true label");

  FoldMetrics m;
  m.accuracy = 100.0 * double(correct) / n;
  for (int label = 0; label < 2; ++label) {
    if (support[label] == 0) continue;  // weight would be zero
    double weight = double(support[label]) / n;
    double precision;
    if (predicted[label] == 0) {
      warn(warnings, "label " + std::to_string(label) +
                         " never predicted; precision counted as 0");
      precision = 0.0;
    } else {
      precision = double(tp[label]) / double(predicted[label]);
    }
    double recall = double(tp[label]) / double(support[label]);
    double f1 =
        precision + recall > 0 ? 2 * precision * recall / (precision + recall) : 0.0;
    m.precision += weight * precision;
    m.recall += weight * recall;
    m.f1 += weight * f1;
  }
  return m;
}

}  // namespace movemine
