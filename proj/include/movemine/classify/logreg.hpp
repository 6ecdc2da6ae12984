#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "movemine/classify/common.hpp"
#include "movemine/error.hpp"

namespace movemine {

inline double log1pexp(double u) {
  if (u > 33.0) return u;
  if (u > 0.0) return u + std::log1p(std::exp(-u));
  return std::log1p(std::exp(u));
}

inline double sigmoid(double z) {
  return z >= 0 ? 1.0 / (1.0 + std::exp(-z))
                : std::exp(z) / (1.0 + std::exp(z));
}

// Mean logistic loss over the dataset and (optionally) its gradient with
// respect to weights and bias. The L1 penalty is not part of this value;
// the proximal step handles it.
inline double logistic_loss_grad(const Dataset& d, const std::vector<double>& w,
                                 double b, std::vector<double>* grad_w = nullptr,
                                 double* grad_b = nullptr) {
  const double n = double(d.size());
  if (grad_w) grad_w->assign(d.cols, 0.0);
  if (grad_b) *grad_b = 0.0;
  double loss = 0.0;
  for (size_t i = 0; i < d.size(); ++i) {
    const auto& x = d.rows[i];
    double z = b;
    for (size_t j = 0; j < d.cols; ++j) z += w[j] * x[j];
    double sign = d.labels[i] ? 1.0 : -1.0;
    loss += log1pexp(-sign * z);
    if (grad_w || grad_b) {
      double r = sigmoid(z) - double(d.labels[i]);
      if (grad_w)
        for (size_t j = 0; j < d.cols; ++j) (*grad_w)[j] += r * x[j];
      if (grad_b) *grad_b += r;
    }
  }
  if (grad_w)
    for (auto& g : *grad_w) g /= n;
  if (grad_b) *grad_b /= n;
  return loss / n;
}

struct LogRegConfig {
  double l1_penalty = 0.01;  // lambda on the mean-loss scale; bias unpenalized
  double tol = 1e-4;         // proximal-gradient residual norm
  int max_epochs = 1000;
};

// L1-penalized logistic regression trained by proximal gradient descent with
// backtracking. Deterministic: weights start at zero and no randomness is
// consumed.
class LogisticRegressionL1 : public Classifier {
 public:
  explicit LogisticRegressionL1(LogRegConfig cfg = {}) : cfg_(cfg) {}

  void fit(const Dataset& d) override {
    validate_training_data(d);
    if (cfg_.l1_penalty < 0) fail("config", "l1 penalty must be >= 0");

    // Sparse view of the rows; pattern matrices are mostly zeros.
    std::vector<std::vector<std::pair<uint32_t, double>>> nz(d.size());
    for (size_t i = 0; i < d.size(); ++i)
      for (size_t j = 0; j < d.cols; ++j)
        if (d.rows[i][j] != 0.0) nz[i].emplace_back(uint32_t(j), d.rows[i][j]);

    const double n = double(d.size());
    w_.assign(d.cols, 0.0);
    b_ = 0.0;
    std::vector<double> z(d.size(), 0.0), grad(d.cols), w_next(d.cols);

    auto smooth_loss = [&](const std::vector<double>& zz) {
      double loss = 0.0;
      for (size_t i = 0; i < d.size(); ++i)
        loss += log1pexp((d.labels[i] ? -1.0 : 1.0) * zz[i]);
      return loss / n;
    };
    auto margins = [&](const std::vector<double>& w, double b,
                       std::vector<double>& out) {
      for (size_t i = 0; i < d.size(); ++i) {
        double zi = b;
        for (auto [j, v] : nz[i]) zi += w[j] * v;
        out[i] = zi;
      }
    };

    margins(w_, b_, z);
    double loss = smooth_loss(z);
    double step = 1.0;
    std::vector<double> z_next(d.size());

    for (int epoch = 0; epoch < cfg_.max_epochs; ++epoch) {
      std::fill(grad.begin(), grad.end(), 0.0);
      double grad_b = 0.0;
      for (size_t i = 0; i < d.size(); ++i) {
        double r = sigmoid(z[i]) - double(d.labels[i]);
        for (auto [j, v] : nz[i]) grad[j] += r * v;
        grad_b += r;
      }
      for (auto& g : grad) g /= n;
      grad_b /= n;

      double b_next = 0.0, residual = 0.0;
      for (;;) {
        double thresh = step * cfg_.l1_penalty;
        for (size_t j = 0; j < d.cols; ++j) {
          double u = w_[j] - step * grad[j];
          w_next[j] = u > thresh ? u - thresh : (u < -thresh ? u + thresh : 0.0);
        }
        b_next = b_ - step * grad_b;
        margins(w_next, b_next, z_next);
        double loss_next = smooth_loss(z_next);
        double decrease = 0.0, sqnorm = 0.0;
        for (size_t j = 0; j < d.cols; ++j) {
          double dj = w_next[j] - w_[j];
          decrease += grad[j] * dj;
          sqnorm += dj * dj;
        }
        double db = b_next - b_;
        decrease += grad_b * db;
        sqnorm += db * db;
        if (loss_next <= loss + decrease + sqnorm / (2.0 * step) + 1e-12) {
          residual = std::sqrt(sqnorm) / step;
          loss = loss_next;
          break;
        }
        step *= 0.5;
        if (step < 1e-12) {  // cannot make progress; treat as converged
          residual = 0.0;
          loss = smooth_loss(z);
          w_next = w_;
          b_next = b_;
          z_next = z;
          break;
        }
      }
      w_.swap(w_next);
      b_ = b_next;
      z.swap(z_next);
      step = std::min(step * 1.5, 1e6);
      if (residual <= cfg_.tol) break;
    }
    fitted_ = true;
  }

  int predict_row(const std::vector<double>& x) const override {
    if (!fitted_) fail("state", "logistic regression model is not fitted");
    double z = b_;
    for (size_t j = 0; j < w_.size() && j < x.size(); ++j) z += w_[j] * x[j];
    return z > 0 ? 1 : 0;
  }

  bool fitted() const { return fitted_; }
  const std::vector<double>& weights() const {
    if (!fitted_) fail("state", "logistic regression model is not fitted");
    return w_;
  }
  double bias() const {
    if (!fitted_) fail("state", "logistic regression model is not fitted");
    return b_;
  }

 private:
  LogRegConfig cfg_;
  std::vector<double> w_;
  double b_ = 0.0;
  bool fitted_ = false;
};

struct ImportanceEntry {
  std::string pattern;
  double score = 0.0;

  bool operator==(const ImportanceEntry&) const = default;
};

// Ranks features by |weight| descending (ties keep column order); zero
// weights are excluded, so fewer than k entries may come back.
inline std::vector<ImportanceEntry> rank_importance(
    const std::vector<double>& weights, const std::vector<std::string>& columns,
    int k) {
  if (k < 1) fail("config", "importance k must be >= 1");
  if (weights.size() != columns.size())
    fail("config", "weight / column count mismatch");
  std::vector<size_t> idx;
  for (size_t j = 0; j < weights.size(); ++j)
    if (weights[j] != 0.0) idx.push_back(j);
  std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
    return std::fabs(weights[a]) > std::fabs(weights[b]);
  });
  if (idx.size() > size_t(k)) idx.resize(size_t(k));
  std::vector<ImportanceEntry> out;
  for (size_t j : idx) out.push_back({columns[j], std::fabs(weights[j])});
  return out;
}

inline std::vector<ImportanceEntry> top_k_importance(
    const LogisticRegressionL1& model, const std::vector<std::string>& columns,
    int k = 20) {
  if (!model.fitted()) fail("state", "importance ranking needs a fitted model");
  return rank_importance(model.weights(), columns, k);
}

}  // namespace movemine
