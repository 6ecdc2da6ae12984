#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "movemine/classify/common.hpp"
#include "movemine/error.hpp"

namespace movemine {

// Gaussian naive Bayes: per-label feature means and (floored) maximum
// likelihood variances, class priors from label frequencies, prediction by
// maximum posterior.
class GaussianNb : public Classifier {
 public:
  static constexpr double kVarianceFloor = 1e-9;

  void fit(const Dataset& d) override {
    validate_training_data(d);
    cols_ = d.cols;
    for (int label = 0; label < 2; ++label) {
      mean_[label].assign(cols_, 0.0);
      var_[label].assign(cols_, 0.0);
      count_[label] = 0;
    }
    for (size_t i = 0; i < d.size(); ++i) {
      int y = d.labels[i];
      ++count_[y];
      for (size_t j = 0; j < cols_; ++j) mean_[y][j] += d.rows[i][j];
    }
    for (int label = 0; label < 2; ++label)
      for (auto& m : mean_[label]) m /= double(count_[label]);
    for (size_t i = 0; i < d.size(); ++i) {
      int y = d.labels[i];
      for (size_t j = 0; j < cols_; ++j) {
        double dev = d.rows[i][j] - mean_[y][j];
        var_[y][j] += dev * dev;
      }
    }
    for (int label = 0; label < 2; ++label)
      for (auto& v : var_[label])
        v = std::max(v / double(count_[label]), kVarianceFloor);
    double n = double(d.size());
    log_prior_[0] = std::log(double(count_[0]) / n);
    log_prior_[1] = std::log(double(count_[1]) / n);
    fitted_ = true;
  }

  // Unnormalized log posterior per label.
  std::array<double, 2> log_posteriors(const std::vector<double>& x) const {
    if (!fitted_) fail("state", "naive Bayes model is not fitted");
    std::array<double, 2> lp{log_prior_[0], log_prior_[1]};
    for (int label = 0; label < 2; ++label) {
      for (size_t j = 0; j < cols_; ++j) {
        double v = var_[label][j];
        double dev = x[j] - mean_[label][j];
        lp[label] -= 0.5 * (std::log(2.0 * std::numbers::pi * v) + dev * dev / v);
      }
    }
    return lp;
  }

  int predict_row(const std::vector<double>& x) const override {
    auto lp = log_posteriors(x);
    return lp[1] > lp[0] ? 1 : 0;
  }

 private:
  size_t cols_ = 0;
  std::array<std::vector<double>, 2> mean_, var_;
  std::array<int, 2> count_{0, 0};
  std::array<double, 2> log_prior_{0.0, 0.0};
  bool fitted_ = false;
};

}  // namespace movemine
