#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ddbin/dataset.hpp"
#include "ddbin/naive_bayes.hpp"

namespace ddbin {

struct TrainConfig {
  double learning_rate = 0.5;
  std::size_t epochs = 20;
  std::size_t batch_size = 128;
  std::uint64_t seed = 42;
  double l2 = 0.0;
  /// Clip W to W * step(W) after every update. Off only for the
  /// unconstrained comparison run.
  bool nonnegative = true;

  void validate() const;
};

struct TrainTrace {
  std::vector<double> loss;            // mean mini-batch loss per epoch
  std::vector<double> train_accuracy;  // from the same forward passes
  std::vector<double> zero_fraction;   // share of W entries equal to 0
};

struct AnnResult {
  WeightMatrix weights;
  TrainTrace trace;
};

/// Numerically stable softmax (max subtracted before exponentiation).
std::vector<double> softmax(std::span<const double> z);
void softmax(std::span<const double> z, std::span<double> out);

/// Mean categorical cross-entropy of softmax(W p) over `batch` (indices into
/// `data`), plus 0.5 * l2 * |W|^2. When `grad` is non-null it receives dL/dW.
/// The bias is not a parameter.
double cross_entropy(const WeightMatrix& model, const Dataset& data,
                     std::span<const std::size_t> batch, double l2 = 0.0,
                     Matrix* grad = nullptr);

/// Mini-batch SGD on cross-entropy with the non-negativity projection applied
/// after each update. Shuffling and initialisation (uniform [0, 0.01]) draw
/// from Xoshiro256 seeded with cfg.seed, so equal configs give equal weights.
/// Throws DivergedLoss when a batch loss is not finite.
AnnResult fit_ann(const Dataset& train, const TrainConfig& cfg);

/// Max relative deviation between the analytic gradient and central
/// differences (step `step`) over the leading `block` x `block` entries of W.
/// Deviation is |a - n| / max(|a|, |n|, 1e-6).
double grad_check(const WeightMatrix& model, const Dataset& data,
                  std::span<const std::size_t> batch, std::size_t block = 5,
                  double step = 1e-5, double l2 = 0.0);

}  // namespace ddbin
