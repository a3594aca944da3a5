#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ddbin/dataset.hpp"
#include "ddbin/matrix.hpp"

namespace ddbin {

/// Linear classifier weights: class scores are w * p + bias. The bias is held
/// at zero by every trainer in this library; the sensor has no bias channel.
struct WeightMatrix {
  Matrix w;
  std::vector<double> bias;

  WeightMatrix() = default;
  explicit WeightMatrix(Matrix weights)
      : w(std::move(weights)), bias(w.rows(), 0.0) {}

  std::size_t classes() const noexcept { return w.rows(); }
  std::size_t pixels() const noexcept { return w.cols(); }

  bool operator==(const WeightMatrix&) const = default;
};

/// Multinomial Naive Bayes with fractional counts:
///   pi_mn = (alpha + S_mn) / (N alpha + sum_k S_mk),  w_mn = log pi_mn,
/// where S_mn sums pixel n over the training images of class m.
///
/// Throws EmptyClass when a class has no samples and
/// ZeroSmoothingWithEmptyPixel when alpha == 0 leaves some pi_mn at zero.
WeightMatrix fit_nb(const Dataset& train, double alpha = 1.0);

/// The smoothed class-conditional pixel distributions (rows sum to 1).
Matrix nb_probabilities(const Dataset& train, double alpha = 1.0);

/// w * p + bias.
std::vector<double> scores(const WeightMatrix& model, std::span<const double> p);

/// argmax of w * p + bias, ties to the lowest class. Throws DimensionMismatch.
std::size_t predict_linear(const WeightMatrix& model, std::span<const double> p);

}  // namespace ddbin
