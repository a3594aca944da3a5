#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ddbin/fill_factor.hpp"
#include "ddbin/naive_bayes.hpp"
#include "ddbin/rng.hpp"

namespace ddbin {

inline constexpr double kDefaultResponsivity = 0.1;  // A/W

/// A data-driven-binning sensor: M superpixel photodiodes with fill factors F,
/// shared responsivity R and additive Gaussian read noise sigma (amperes).
struct SensorModel {
  FillFactorMatrix fill;
  double responsivity = kDefaultResponsivity;
  double sigma = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct Readout {
  std::vector<double> currents;  // amperes, one per superpixel (or class score)
  std::size_t predicted = 0;
  bool noisy = false;
};

/// Noiseless readout: i = R F (intensity * p).
Readout read(const SensorModel& model, std::span<const double> p, double intensity);

/// Noisy readout: adds sigma * noise.normal() to each superpixel current,
/// exactly M draws.
Readout read(const SensorModel& model, std::span<const double> p, double intensity,
             NoiseSource& noise);

/// Unbinned reference device: every pixel is read separately with its own
/// noise draw (N draws), then classified in software with `weights`.
/// `currents` holds the software class scores. A null `noise` means noiseless.
Readout read_reference(const WeightMatrix& weights, std::span<const double> p,
                       double intensity, double sigma, double responsivity,
                       NoiseSource* noise);

/// sqrt(coverage * N) / M.
double snr_gain(const FillFactorMatrix& fill);

}  // namespace ddbin
