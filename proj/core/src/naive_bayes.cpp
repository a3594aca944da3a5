#include "ddbin/naive_bayes.hpp"

#include <cmath>
#include <string>

#include "ddbin/errors.hpp"

namespace ddbin {

Matrix nb_probabilities(const Dataset& train, double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    fail(Errc::InvalidArgument, "smoothing alpha must be finite and >= 0");
  }
  if (train.size() == 0) fail(Errc::EmptyClass, "training set is empty");
  const std::size_t classes = train.class_count;
  const std::size_t n = train.pixel_count();

  // Per-class pixel sums, accumulated in sample order.
  Matrix sums(classes, n);
  std::vector<std::size_t> members(classes, 0);
  for (std::size_t i = 0; i < train.size(); ++i) {
    const std::size_t m = train.labels[i];
    if (m >= classes) fail(Errc::LabelOutOfRange, "label " + std::to_string(m));
    ++members[m];
    auto row = sums.row(m);
    const auto img = train.image(i);
    for (std::size_t k = 0; k < n; ++k) row[k] += img[k];
  }

  Matrix pi(classes, n);
  for (std::size_t m = 0; m < classes; ++m) {
    if (members[m] == 0) {
      fail(Errc::EmptyClass, "class " + std::to_string(m) + " has no training samples");
    }
    double total = 0.0;
    for (double s : sums.row(m)) total += s;
    const double denom = static_cast<double>(n) * alpha + total;
    if (!(denom > 0.0)) {
      fail(Errc::ZeroSmoothingWithEmptyPixel,
           "class " + std::to_string(m) + " has no signal and alpha is 0");
    }
    for (std::size_t k = 0; k < n; ++k) {
      const double p = (alpha + sums(m, k)) / denom;
      if (p == 0.0) {
        fail(Errc::ZeroSmoothingWithEmptyPixel,
             "pixel " + std::to_string(k) + " is dark for class " + std::to_string(m) +
                 " and alpha is 0; its log weight would be -inf");
      }
      pi(m, k) = p;
    }
  }
  return pi;
}

WeightMatrix fit_nb(const Dataset& train, double alpha) {
  Matrix w = nb_probabilities(train, alpha);
  for (double& v : w.values()) v = std::log(v);
  return WeightMatrix(std::move(w));
}

std::vector<double> scores(const WeightMatrix& model, std::span<const double> p) {
  std::vector<double> out = multiply(model.w, p);
  for (std::size_t m = 0; m < out.size() && m < model.bias.size(); ++m) out[m] += model.bias[m];
  return out;
}

std::size_t predict_linear(const WeightMatrix& model, std::span<const double> p) {
  return argmax(scores(model, p));
}

}  // namespace ddbin
