#include "ddbin/eval.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "ddbin/errors.hpp"
#include "ddbin/rng.hpp"

namespace ddbin {

namespace {

// Stream tags for the sweep's per-trial sub-streams.
constexpr std::uint64_t kBinnedTag = 1;
constexpr std::uint64_t kReferenceTag = 2;

double median_of(std::vector<double> values) {
  if (values.empty()) return 0.0;
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid),
                   values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(),
                                         values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

void check_task(const Dataset& test, std::size_t classes, std::size_t pixels) {
  if (test.size() == 0) fail(Errc::InvalidArgument, "test set is empty");
  if (test.pixel_count() != pixels) {
    fail(Errc::DimensionMismatch, "test images have " + std::to_string(test.pixel_count()) +
                                      " pixels, model has " + std::to_string(pixels));
  }
  if (test.class_count != classes) {
    fail(Errc::DimensionMismatch, "test set has " + std::to_string(test.class_count) +
                                      " classes, model has " + std::to_string(classes));
  }
}

template <typename Predict>
Evaluation evaluate_with(const Dataset& test, std::size_t classes, Predict predict) {
  Evaluation out{ConfusionMatrix(classes), 0.0, {}};
  out.predictions.reserve(test.size());
  for (std::size_t i = 0; i < test.size(); ++i) {
    const std::size_t predicted = predict(test.image(i));
    out.predictions.push_back(predicted);
    out.confusion.add(test.labels[i], predicted);
  }
  out.accuracy = out.confusion.accuracy();
  return out;
}

// Runs `trial(t)` (returning 1 for a correct classification at every sweep
// point) for t in [0, trials) on up to `threads` workers and sums the
// per-point counts. Each trial owns its RNG sub-stream, so the sum does not
// depend on the split.
template <typename Trial>
std::vector<std::uint64_t> run_trials(std::size_t trials, std::size_t points,
                                      unsigned threads, Trial trial) {
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(trials)));
  std::vector<std::vector<std::uint64_t>> partial(workers,
                                                  std::vector<std::uint64_t>(points, 0));
  auto work = [&](unsigned w) {
    const std::size_t begin = trials * w / workers;
    const std::size_t end = trials * (w + 1) / workers;
    for (std::size_t t = begin; t < end; ++t) trial(t, partial[w]);
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  std::vector<std::uint64_t> total(points, 0);
  for (const auto& counts : partial) {
    for (std::size_t k = 0; k < points; ++k) total[k] += counts[k];
  }
  return total;
}

SweepCurve make_curve(Device device, double sigma, const SweepConfig& cfg,
                      const std::vector<std::uint64_t>& correct, std::uint64_t noiseless) {
  SweepCurve curve;
  curve.device = device;
  curve.sigma = sigma;
  curve.seed = cfg.seed;
  const auto trials = static_cast<double>(cfg.trials);
  curve.noiseless_accuracy = static_cast<double>(noiseless) / trials;
  for (std::size_t k = 0; k < cfg.intensities.size(); ++k) {
    SweepPoint point;
    point.intensity = cfg.intensities[k];
    point.trials = cfg.trials;
    point.accuracy = static_cast<double>(correct[k]) / trials;
    point.stderr_ = std::sqrt(point.accuracy * (1.0 - point.accuracy) / trials);
    curve.points.push_back(point);
  }
  return curve;
}

}  // namespace

void ConfusionMatrix::add(std::size_t truth, std::size_t predicted) {
  if (truth >= classes_ || predicted >= classes_) {
    fail(Errc::DimensionMismatch, "class index outside the confusion matrix");
  }
  ++counts_[truth * classes_ + predicted];
  ++total_;
}

std::uint64_t ConfusionMatrix::row_sum(std::size_t truth) const {
  std::uint64_t sum = 0;
  for (std::size_t p = 0; p < classes_; ++p) sum += count(truth, p);
  return sum;
}

std::uint64_t ConfusionMatrix::correct() const {
  std::uint64_t trace = 0;
  for (std::size_t m = 0; m < classes_; ++m) trace += count(m, m);
  return trace;
}

double ConfusionMatrix::accuracy() const {
  return total_ == 0 ? 0.0 : static_cast<double>(correct()) / static_cast<double>(total_);
}

Evaluation evaluate(const SensorModel& model, const Dataset& test) {
  check_task(test, model.fill.classes(), model.fill.pixels());
  return evaluate_with(test, model.fill.classes(), [&](std::span<const double> p) {
    return read(model, p, 1.0).predicted;
  });
}

Evaluation evaluate(const WeightMatrix& model, const Dataset& test) {
  check_task(test, model.classes(), model.pixels());
  return evaluate_with(test, model.classes(), [&](std::span<const double> p) {
    return predict_linear(model, p);
  });
}

std::vector<double> relative_gaps(std::span<const double> currents) {
  if (currents.empty()) return {};
  const std::size_t top = argmax(currents);
  const double peak = currents[top];
  if (!(peak > 0.0)) fail(Errc::ZeroTopCurrent, "top output current is not positive");
  std::vector<double> gaps;
  gaps.reserve(currents.size() - 1);
  for (std::size_t m = 0; m < currents.size(); ++m) {
    if (m != top) gaps.push_back((peak - currents[m]) / peak);
  }
  std::sort(gaps.begin(), gaps.end());
  return gaps;
}

SpreadSummary spread(const SensorModel& model, const Dataset& test, std::size_t bins) {
  check_task(test, model.fill.classes(), model.fill.pixels());
  if (bins == 0) fail(Errc::InvalidArgument, "histogram needs at least one bin");
  const std::size_t ranks = model.fill.classes() > 0 ? model.fill.classes() - 1 : 0;

  SpreadSummary out;
  out.samples = test.size();
  out.gaps = Matrix(test.size(), ranks);
  out.histogram.assign(ranks, std::vector<std::uint64_t>(bins, 0));
  for (std::size_t i = 0; i < test.size(); ++i) {
    const auto gaps = relative_gaps(read(model, test.image(i), 1.0).currents);
    for (std::size_t r = 0; r < ranks; ++r) {
      out.gaps(i, r) = gaps[r];
      const auto bin = std::min(bins - 1, static_cast<std::size_t>(gaps[r] * static_cast<double>(bins)));
      ++out.histogram[r][bin];
    }
  }

  std::vector<double> all;
  all.reserve(out.gaps.size());
  double total = 0.0;
  for (std::size_t r = 0; r < ranks; ++r) {
    std::vector<double> column(test.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < test.size(); ++i) {
      column[i] = out.gaps(i, r);
      sum += column[i];
    }
    total += sum;
    out.rank_mean.push_back(sum / static_cast<double>(test.size()));
    all.insert(all.end(), column.begin(), column.end());
    out.rank_median.push_back(median_of(std::move(column)));
  }
  if (!all.empty()) out.mean = total / static_cast<double>(all.size());
  out.median = median_of(std::move(all));
  return out;
}

std::string_view to_string(Device device) noexcept {
  return device == Device::Binned ? "binned" : "reference";
}

std::pair<SweepCurve, SweepCurve> sweep_intensity(const SensorModel& binned,
                                                  const ReferenceDevice& reference,
                                                  const Dataset& task,
                                                  const SweepConfig& cfg) {
  binned.validate();
  check_task(task, binned.fill.classes(), binned.fill.pixels());
  check_task(task, reference.weights.classes(), reference.weights.pixels());
  if (cfg.trials < 100) fail(Errc::InvalidArgument, "a sweep needs at least 100 trials");
  if (cfg.intensities.empty()) fail(Errc::InvalidArgument, "no sweep intensities");
  for (std::size_t k = 0; k < cfg.intensities.size(); ++k) {
    if (!(cfg.intensities[k] > 0.0) || !std::isfinite(cfg.intensities[k])) {
      fail(Errc::InvalidArgument, "sweep intensities must be positive");
    }
    if (k > 0 && !(cfg.intensities[k] > cfg.intensities[k - 1])) {
      fail(Errc::InvalidArgument, "sweep intensities must be strictly increasing");
    }
  }

  const std::size_t points = cfg.intensities.size();
  const std::size_t n = task.size();

  auto binned_trial = [&](std::size_t t, std::vector<std::uint64_t>& correct) {
    const std::size_t i = t % n;
    for (std::size_t k = 0; k < points; ++k) {
      NormalStream noise(Xoshiro256::stream(cfg.seed, kBinnedTag, t));
      if (read(binned, task.image(i), cfg.intensities[k], noise).predicted == task.labels[i]) {
        ++correct[k];
      }
    }
  };
  auto reference_trial = [&](std::size_t t, std::vector<std::uint64_t>& correct) {
    const std::size_t i = t % n;
    for (std::size_t k = 0; k < points; ++k) {
      NormalStream noise(Xoshiro256::stream(cfg.seed, kReferenceTag, t));
      const Readout r = read_reference(reference.weights, task.image(i), cfg.intensities[k],
                                       reference.sigma, reference.responsivity, &noise);
      if (r.predicted == task.labels[i]) ++correct[k];
    }
  };
  auto binned_clean = [&](std::size_t t, std::vector<std::uint64_t>& correct) {
    const std::size_t i = t % n;
    if (read(binned, task.image(i), 1.0).predicted == task.labels[i]) ++correct[0];
  };
  auto reference_clean = [&](std::size_t t, std::vector<std::uint64_t>& correct) {
    const std::size_t i = t % n;
    const Readout r = read_reference(reference.weights, task.image(i), 1.0, reference.sigma,
                                     reference.responsivity, nullptr);
    if (r.predicted == task.labels[i]) ++correct[0];
  };

  const auto binned_counts = run_trials(cfg.trials, points, cfg.threads, binned_trial);
  const auto reference_counts = run_trials(cfg.trials, points, cfg.threads, reference_trial);
  const auto binned_noiseless = run_trials(cfg.trials, 1, cfg.threads, binned_clean)[0];
  const auto reference_noiseless = run_trials(cfg.trials, 1, cfg.threads, reference_clean)[0];

  return {make_curve(Device::Binned, binned.sigma, cfg, binned_counts, binned_noiseless),
          make_curve(Device::Reference, reference.sigma, cfg, reference_counts,
                     reference_noiseless)};
}

std::vector<double> logspace(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) {
    fail(Errc::InvalidArgument, "logspace needs 0 < lo < hi and at least 2 points");
  }
  std::vector<double> out(count);
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (std::size_t k = 0; k < count; ++k) {
    out[k] = std::pow(10.0, a + (b - a) * static_cast<double>(k) / static_cast<double>(count - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace ddbin
