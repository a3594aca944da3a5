#include "ddbin/ann.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <string>

#include "ddbin/errors.hpp"
#include "ddbin/rng.hpp"

namespace ddbin {

namespace {

struct BatchResult {
  double loss = 0.0;  // mean over the batch, without the l2 term
  std::size_t correct = 0;
};

// Forward and (optionally) backward pass over one batch. `grad`, when given,
// must already have the shape of W; it is overwritten.
BatchResult forward_backward(const Matrix& w, const Dataset& data,
                             std::span<const std::size_t> batch, Matrix* grad) {
  const std::size_t classes = w.rows();
  const std::size_t n = w.cols();
  if (n != data.pixel_count()) {
    fail(Errc::DimensionMismatch, "model has " + std::to_string(n) + " pixels, data has " +
                                      std::to_string(data.pixel_count()));
  }
  if (grad != nullptr) std::fill(grad->values().begin(), grad->values().end(), 0.0);

  std::vector<double> z(classes);
  std::vector<double> prob(classes);
  BatchResult result;
  double loss_sum = 0.0;
  for (std::size_t idx : batch) {
    const auto p = data.image(idx);
    const std::size_t label = data.labels[idx];
    if (label >= classes) fail(Errc::LabelOutOfRange, "label " + std::to_string(label));
    multiply(w, p, z);
    if (argmax(z) == label) ++result.correct;

    const double top = *std::max_element(z.begin(), z.end());
    double denom = 0.0;
    for (std::size_t m = 0; m < classes; ++m) {
      prob[m] = std::exp(z[m] - top);
      denom += prob[m];
    }
    loss_sum += std::log(denom) + top - z[label];

    if (grad != nullptr) {
      for (std::size_t m = 0; m < classes; ++m) {
        const double delta = prob[m] / denom - (m == label ? 1.0 : 0.0);
        auto g = grad->row(m);
        for (std::size_t k = 0; k < n; ++k) g[k] += delta * p[k];
      }
    }
  }
  const double scale = 1.0 / static_cast<double>(batch.size());
  result.loss = loss_sum * scale;
  if (grad != nullptr) {
    for (double& g : grad->values()) g *= scale;
  }
  return result;
}

double l2_penalty(const Matrix& w, double l2) {
  if (l2 == 0.0) return 0.0;
  double sq = 0.0;
  for (double v : w.values()) sq += v * v;
  return 0.5 * l2 * sq;
}

void add_l2_gradient(const Matrix& w, double l2, Matrix& grad) {
  if (l2 == 0.0) return;
  const auto wv = w.values();
  auto gv = grad.values();
  for (std::size_t i = 0; i < gv.size(); ++i) gv[i] += l2 * wv[i];
}

}  // namespace

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    fail(Errc::InvalidArgument, "learning rate must be positive");
  }
  if (batch_size == 0) fail(Errc::InvalidArgument, "batch size must be >= 1");
  if (!(l2 >= 0.0) || !std::isfinite(l2)) fail(Errc::InvalidArgument, "l2 must be >= 0");
}

void softmax(std::span<const double> z, std::span<double> out) {
  if (out.size() != z.size()) fail(Errc::DimensionMismatch, "softmax output size");
  if (z.empty()) return;
  const double top = *std::max_element(z.begin(), z.end());
  double denom = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    out[i] = std::exp(z[i] - top);
    denom += out[i];
  }
  for (double& v : out) v /= denom;
}

std::vector<double> softmax(std::span<const double> z) {
  std::vector<double> out(z.size());
  softmax(z, out);
  return out;
}

double cross_entropy(const WeightMatrix& model, const Dataset& data,
                     std::span<const std::size_t> batch, double l2, Matrix* grad) {
  if (batch.empty()) fail(Errc::InvalidArgument, "empty batch");
  if (grad != nullptr && (grad->rows() != model.w.rows() || grad->cols() != model.w.cols())) {
    *grad = Matrix(model.w.rows(), model.w.cols());
  }
  const BatchResult r = forward_backward(model.w, data, batch, grad);
  if (grad != nullptr) add_l2_gradient(model.w, l2, *grad);
  return r.loss + l2_penalty(model.w, l2);
}

AnnResult fit_ann(const Dataset& train, const TrainConfig& cfg) {
  cfg.validate();
  if (train.size() == 0) fail(Errc::EmptyClass, "training set is empty");
  const std::size_t classes = train.class_count;
  const std::size_t n = train.pixel_count();
  std::vector<std::size_t> members(classes, 0);
  for (std::uint32_t label : train.labels) {
    if (label >= classes) fail(Errc::LabelOutOfRange, "label " + std::to_string(label));
    ++members[label];
  }
  for (std::size_t m = 0; m < classes; ++m) {
    if (members[m] == 0) fail(Errc::EmptyClass, "class " + std::to_string(m) + " is empty");
  }

  Xoshiro256 rng(cfg.seed);
  Matrix w(classes, n);
  for (double& v : w.values()) v = 0.01 * rng.uniform();

  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Matrix grad(classes, n);
  AnnResult result;

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (std::size_t i = order.size() - 1; i > 0; --i) {
      std::swap(order[i], order[rng.below(i + 1)]);
    }

    double loss_sum = 0.0;
    std::size_t correct = 0;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t len = std::min(cfg.batch_size, order.size() - start);
      const std::span<const std::size_t> batch(order.data() + start, len);
      const BatchResult r = forward_backward(w, train, batch, &grad);
      const double loss = r.loss + l2_penalty(w, cfg.l2);
      if (!std::isfinite(loss)) {
        fail(Errc::DivergedLoss, "loss became " + std::to_string(loss) + " in epoch " +
                                     std::to_string(epoch) + "; lower the learning rate");
      }
      loss_sum += loss * static_cast<double>(len);
      correct += r.correct;
      add_l2_gradient(w, cfg.l2, grad);

      auto wv = w.values();
      const auto gv = grad.values();
      for (std::size_t k = 0; k < wv.size(); ++k) wv[k] -= cfg.learning_rate * gv[k];
      if (cfg.nonnegative) {
        // W <- W * step(W); exact zeros stay zero.
        for (double& v : wv) v = v > 0.0 ? v : 0.0;
        assert(std::all_of(wv.begin(), wv.end(), [](double v) { return v >= 0.0; }));
      }
    }

    const auto total = static_cast<double>(order.size());
    result.trace.loss.push_back(loss_sum / total);
    result.trace.train_accuracy.push_back(static_cast<double>(correct) / total);
    const auto zeros = std::count(w.values().begin(), w.values().end(), 0.0);
    result.trace.zero_fraction.push_back(static_cast<double>(zeros) /
                                         static_cast<double>(w.size()));
  }

  result.weights = WeightMatrix(std::move(w));
  return result;
}

double grad_check(const WeightMatrix& model, const Dataset& data,
                  std::span<const std::size_t> batch, std::size_t block, double step,
                  double l2) {
  if (batch.empty()) fail(Errc::InvalidArgument, "empty batch");
  Matrix analytic;
  cross_entropy(model, data, batch, l2, &analytic);

  WeightMatrix probe = model;
  const std::size_t rows = std::min(block, model.w.rows());
  const std::size_t cols = std::min(block, model.w.cols());
  double worst = 0.0;
  for (std::size_t m = 0; m < rows; ++m) {
    for (std::size_t k = 0; k < cols; ++k) {
      const double saved = probe.w(m, k);
      probe.w(m, k) = saved + step;
      const double up = cross_entropy(probe, data, batch, l2);
      probe.w(m, k) = saved - step;
      const double down = cross_entropy(probe, data, batch, l2);
      probe.w(m, k) = saved;

      const double numeric = (up - down) / (2.0 * step);
      const double a = analytic(m, k);
      const double scale = std::max({std::abs(a), std::abs(numeric), 1e-6});
      worst = std::max(worst, std::abs(a - numeric) / scale);
    }
  }
  return worst;
}

}  // namespace ddbin
