#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <utility>
#include <vector>

#include "movemine/classify/common.hpp"
#include "movemine/classify/logreg.hpp"  // sigmoid, log1pexp
#include "movemine/error.hpp"
#include "movemine/rng.hpp"

namespace movemine {

struct MlpConfig {
  int hidden = 100;
  int max_epochs = 300;
  int batch_size = 32;
  double learning_rate = 1e-3;
  uint64_t seed = 5;
  double plateau_tol = 1e-6;  // stop when 10 epochs fail to improve by this
  int plateau_epochs = 10;
};

// One hidden ReLU layer and a logistic output. w1 is input-major
// (w1[j*hidden + h]) so sparse rows touch contiguous blocks.
struct MlpParams {
  int inputs = 0;
  int hidden = 0;
  std::vector<double> w1;
  std::vector<double> b1;
  std::vector<double> w2;
  double b2 = 0.0;

  void resize(int in, int hid) {
    inputs = in;
    hidden = hid;
    w1.assign(size_t(in) * hid, 0.0);
    b1.assign(size_t(hid), 0.0);
    w2.assign(size_t(hid), 0.0);
    b2 = 0.0;
  }
  size_t count() const { return w1.size() + b1.size() + w2.size() + 1; }

  double& flat(size_t i) {
    if (i < w1.size()) return w1[i];
    i -= w1.size();
    if (i < b1.size()) return b1[i];
    i -= b1.size();
    if (i < w2.size()) return w2[i];
    return b2;
  }
  double flat(size_t i) const { return const_cast<MlpParams&>(*this).flat(i); }
};

// Mean binary cross-entropy over (xs, ys) and, when grad is given, its full
// gradient. Exposed separately from training so the gradient can be checked
// against finite differences.
inline double mlp_loss_grad(const std::vector<std::vector<double>>& xs,
                            const std::vector<int>& ys, const MlpParams& p,
                            MlpParams* grad = nullptr) {
  if (xs.empty() || xs.size() != ys.size())
    fail("config", "mlp loss needs equally sized inputs and labels");
  if (grad) grad->resize(p.inputs, p.hidden);
  const int H = p.hidden;
  const double n = double(xs.size());
  std::vector<double> z1(H), a1(H), delta1(H);
  double loss = 0.0;

  for (size_t i = 0; i < xs.size(); ++i) {
    const auto& x = xs[i];
    for (int h = 0; h < H; ++h) z1[h] = p.b1[h];
    for (int j = 0; j < p.inputs; ++j) {
      double v = x[j];
      if (v == 0.0) continue;
      const double* col = &p.w1[size_t(j) * H];
      for (int h = 0; h < H; ++h) z1[h] += v * col[h];
    }
    double z2 = p.b2;
    for (int h = 0; h < H; ++h) {
      a1[h] = z1[h] > 0 ? z1[h] : 0.0;
      z2 += p.w2[h] * a1[h];
    }
    double y = double(ys[i]);
    loss += log1pexp((ys[i] ? -1.0 : 1.0) * z2);

    if (grad) {
      double d2 = (sigmoid(z2) - y) / n;
      grad->b2 += d2;
      for (int h = 0; h < H; ++h) {
        grad->w2[h] += d2 * a1[h];
        delta1[h] = z1[h] > 0 ? d2 * p.w2[h] : 0.0;
        grad->b1[h] += delta1[h];
      }
      for (int j = 0; j < p.inputs; ++j) {
        double v = x[j];
        if (v == 0.0) continue;
        double* gcol = &grad->w1[size_t(j) * H];
        for (int h = 0; h < H; ++h) gcol[h] += v * delta1[h];
      }
    }
  }
  return loss / n;
}

// Single-hidden-layer perceptron trained with mini-batch Adam. Weight
// initialization, batch order and therefore the fitted model are functions
// of the seed alone.
class MlpClassifier : public Classifier {
 public:
  explicit MlpClassifier(MlpConfig cfg = {}) : cfg_(cfg) {}

  void fit(const Dataset& d) override {
    validate_training_data(d);
    if (cfg_.hidden < 1) fail("config", "mlp needs at least one hidden unit");
    const int H = cfg_.hidden;
    const int D = int(d.cols);
    std::mt19937_64 rng(cfg_.seed);

    p_.resize(D, H);
    double limit1 = std::sqrt(6.0 / double(D + H));
    for (auto& w : p_.w1) w = uniform_range(rng, -limit1, limit1);
    double limit2 = std::sqrt(6.0 / double(H + 1));
    for (auto& w : p_.w2) w = uniform_range(rng, -limit2, limit2);

    // Sparse row views: (feature, value) pairs of the nonzero entries.
    std::vector<std::vector<std::pair<uint32_t, double>>> nz(d.size());
    for (size_t i = 0; i < d.size(); ++i)
      for (size_t j = 0; j < d.cols; ++j)
        if (d.rows[i][j] != 0.0) nz[i].emplace_back(uint32_t(j), d.rows[i][j]);

    MlpParams g;
    g.resize(D, H);
    MlpParams m, v;  // Adam moments
    m.resize(D, H);
    v.resize(D, H);
    const double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
    long step = 0;

    std::vector<size_t> order(d.size());
    for (size_t i = 0; i < d.size(); ++i) order[i] = i;
    std::vector<double> z1(H), a1(H);

    double best_loss = std::numeric_limits<double>::infinity();
    int stalled = 0;

    for (int epoch = 0; epoch < cfg_.max_epochs; ++epoch) {
      shuffle_vec(rng, order);
      double epoch_loss = 0.0;
      for (size_t begin = 0; begin < order.size(); begin += size_t(cfg_.batch_size)) {
        size_t end = std::min(order.size(), begin + size_t(cfg_.batch_size));
        const double bn = double(end - begin);
        std::fill(g.w1.begin(), g.w1.end(), 0.0);
        std::fill(g.b1.begin(), g.b1.end(), 0.0);
        std::fill(g.w2.begin(), g.w2.end(), 0.0);
        g.b2 = 0.0;

        for (size_t k = begin; k < end; ++k) {
          size_t i = order[k];
          for (int h = 0; h < H; ++h) z1[h] = p_.b1[h];
          for (auto [j, val] : nz[i]) {
            const double* col = &p_.w1[size_t(j) * H];
            for (int h = 0; h < H; ++h) z1[h] += val * col[h];
          }
          double z2 = p_.b2;
          for (int h = 0; h < H; ++h) {
            a1[h] = z1[h] > 0 ? z1[h] : 0.0;
            z2 += p_.w2[h] * a1[h];
          }
          epoch_loss += log1pexp((d.labels[i] ? -1.0 : 1.0) * z2);

          double d2 = (sigmoid(z2) - double(d.labels[i])) / bn;
          g.b2 += d2;
          for (int h = 0; h < H; ++h) {
            g.w2[h] += d2 * a1[h];
            a1[h] = z1[h] > 0 ? d2 * p_.w2[h] : 0.0;  // reuse as delta1
            g.b1[h] += a1[h];
          }
          for (auto [j, val] : nz[i]) {
            double* gcol = &g.w1[size_t(j) * H];
            for (int h = 0; h < H; ++h) gcol[h] += val * a1[h];
          }
        }

        ++step;
        double corr1 = 1.0 - std::pow(beta1, double(step));
        double corr2 = 1.0 - std::pow(beta2, double(step));
        auto adam = [&](double* param, const double* grad, double* mm, double* vv,
                        size_t count) {
          for (size_t i = 0; i < count; ++i) {
            double gi = grad[i];
            mm[i] = beta1 * mm[i] + (1.0 - beta1) * gi;
            vv[i] = beta2 * vv[i] + (1.0 - beta2) * gi * gi;
            param[i] -= cfg_.learning_rate * (mm[i] / corr1) /
                        (std::sqrt(vv[i] / corr2) + eps);
          }
        };
        adam(p_.w1.data(), g.w1.data(), m.w1.data(), v.w1.data(), p_.w1.size());
        adam(p_.b1.data(), g.b1.data(), m.b1.data(), v.b1.data(), p_.b1.size());
        adam(p_.w2.data(), g.w2.data(), m.w2.data(), v.w2.data(), p_.w2.size());
        adam(&p_.b2, &g.b2, &m.b2, &v.b2, 1);
      }
      epoch_loss /= double(d.size());
      if (epoch_loss < best_loss - cfg_.plateau_tol) {
        best_loss = epoch_loss;
        stalled = 0;
      } else if (++stalled >= cfg_.plateau_epochs) {
        break;
      }
      best_loss = std::min(best_loss, epoch_loss);
    }
    fitted_ = true;
  }

  int predict_row(const std::vector<double>& x) const override {
    if (!fitted_) fail("state", "mlp is not fitted");
    const int H = p_.hidden;
    double z2 = p_.b2;
    for (int h = 0; h < H; ++h) {
      double z1 = p_.b1[h];
      for (int j = 0; j < p_.inputs && j < int(x.size()); ++j)
        if (x[j] != 0.0) z1 += x[j] * p_.w1[size_t(j) * H + h];
      if (z1 > 0) z2 += p_.w2[h] * z1;
    }
    return z2 > 0 ? 1 : 0;
  }

  const MlpParams& params() const {
    if (!fitted_) fail("state", "mlp is not fitted");
    return p_;
  }

 private:
  MlpConfig cfg_;
  MlpParams p_;
  bool fitted_ = false;
};

}  // namespace movemine
