#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "ddbin/dataset.hpp"
#include "ddbin/naive_bayes.hpp"
#include "ddbin/sensor.hpp"

namespace ddbin {

/// Rows are true classes, columns predicted classes.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(std::size_t classes = 0)
      : classes_(classes), counts_(classes * classes, 0) {}

  void add(std::size_t truth, std::size_t predicted);

  std::size_t classes() const noexcept { return classes_; }
  std::uint64_t count(std::size_t truth, std::size_t predicted) const {
    return counts_[truth * classes_ + predicted];
  }
  std::uint64_t row_sum(std::size_t truth) const;
  std::uint64_t total() const noexcept { return total_; }
  std::uint64_t correct() const;
  double accuracy() const;

  bool operator==(const ConfusionMatrix&) const = default;

 private:
  std::size_t classes_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

struct Evaluation {
  ConfusionMatrix confusion;
  double accuracy = 0.0;
  std::vector<std::size_t> predictions;
};

/// Noiseless sensor readout (unit intensity) for every sample.
Evaluation evaluate(const SensorModel& model, const Dataset& test);
/// Software argmax of W p for every sample.
Evaluation evaluate(const WeightMatrix& model, const Dataset& test);

/// (I_top - I_m) / I_top for every channel other than the top one, sorted
/// ascending (index 0 is the runner-up). Throws ZeroTopCurrent when
/// I_top <= 0.
std::vector<double> relative_gaps(std::span<const double> currents);

struct SpreadSummary {
  std::size_t samples = 0;
  /// gaps(s, r): relative gap of rank r+1 (0 = runner-up) for sample s.
  Matrix gaps;
  std::vector<double> rank_mean;
  std::vector<double> rank_median;
  /// histogram[r][b]: samples whose rank-r gap falls in bin b of [0, 1].
  std::vector<std::vector<std::uint64_t>> histogram;
  double mean = 0.0;    // over all samples and ranks
  double median = 0.0;  // over all samples and ranks
};

/// Output-current spread of noiseless readouts over `test`.
SpreadSummary spread(const SensorModel& model, const Dataset& test, std::size_t bins = 20);

enum class Device { Binned, Reference };
std::string_view to_string(Device device) noexcept;

struct SweepPoint {
  double intensity = 0.0;
  double accuracy = 0.0;
  double stderr_ = 0.0;  // sqrt(a (1 - a) / trials)
  std::size_t trials = 0;
};

struct SweepCurve {
  Device device = Device::Binned;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  /// Accuracy of the same trial set with the noise switched off.
  double noiseless_accuracy = 0.0;
  std::vector<SweepPoint> points;
};

struct ReferenceDevice {
  WeightMatrix weights;
  double sigma = 0.0;
  double responsivity = kDefaultResponsivity;
};

struct SweepConfig {
  std::vector<double> intensities;  // > 0, strictly increasing
  std::size_t trials = 2000;        // >= 100
  std::uint64_t seed = 7;
  unsigned threads = 1;
};

/// Monte-Carlo accuracy vs intensity for both devices. Trial t classifies
/// test image t mod n using noise from sub-stream (seed, device, t); the
/// same sub-stream is reused at every intensity, so curves are smooth in
/// intensity and independent of thread scheduling.
std::pair<SweepCurve, SweepCurve> sweep_intensity(const SensorModel& binned,
                                                  const ReferenceDevice& reference,
                                                  const Dataset& task,
                                                  const SweepConfig& cfg);

/// `count` log-spaced values from `lo` to `hi` inclusive.
std::vector<double> logspace(double lo, double hi, std::size_t count);

}  // namespace ddbin
