#include "ddbin/sensor.hpp"

#include <cmath>
#include <string>

#include "ddbin/errors.hpp"

namespace ddbin {

namespace {

void check_intensity(double intensity) {
  if (!(intensity >= 0.0) || !std::isfinite(intensity)) {
    fail(Errc::InvalidArgument, "intensity must be finite and >= 0");
  }
}

void check_pixels(std::size_t expected, std::size_t got) {
  if (expected != got) {
    fail(Errc::DimensionMismatch, "image has " + std::to_string(got) +
                                      " pixels, sensor has " + std::to_string(expected));
  }
}

}  // namespace

void SensorModel::validate() const {
  if (!(responsivity > 0.0) || !std::isfinite(responsivity)) {
    fail(Errc::InvalidArgument, "responsivity must be positive");
  }
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    fail(Errc::InvalidArgument, "sigma must be finite and >= 0");
  }
}

Readout read(const SensorModel& model, std::span<const double> p, double intensity) {
  model.validate();
  check_intensity(intensity);
  check_pixels(model.fill.pixels(), p.size());

  // Each superpixel integrates R * f_mn * intensity * P_n over its pixels.
  const double gain = model.responsivity * intensity;
  Readout out;
  out.currents.resize(model.fill.classes());
  for (std::size_t m = 0; m < out.currents.size(); ++m) {
    const auto f = model.fill.f.row(m);
    double acc = 0.0;
    for (std::size_t n = 0; n < p.size(); ++n) acc += f[n] * (gain * p[n]);
    out.currents[m] = acc;
  }
  out.predicted = argmax(out.currents);
  return out;
}

Readout read(const SensorModel& model, std::span<const double> p, double intensity,
             NoiseSource& noise) {
  Readout out = read(model, p, intensity);
  for (double& current : out.currents) current += model.sigma * noise.normal();
  out.predicted = argmax(out.currents);
  out.noisy = true;
  return out;
}

Readout read_reference(const WeightMatrix& weights, std::span<const double> p,
                       double intensity, double sigma, double responsivity,
                       NoiseSource* noise) {
  check_intensity(intensity);
  check_pixels(weights.pixels(), p.size());
  if (!(responsivity > 0.0)) fail(Errc::InvalidArgument, "responsivity must be positive");
  if (!(sigma >= 0.0)) fail(Errc::InvalidArgument, "sigma must be >= 0");

  std::vector<double> measured(p.size());
  const double gain = responsivity * intensity;
  for (std::size_t n = 0; n < p.size(); ++n) {
    measured[n] = gain * p[n];
    if (noise != nullptr) measured[n] += sigma * noise->normal();
  }
  Readout out;
  out.currents = scores(weights, measured);
  out.predicted = argmax(out.currents);
  out.noisy = noise != nullptr;
  return out;
}

double snr_gain(const FillFactorMatrix& fill) {
  if (fill.classes() == 0) fail(Errc::DimensionMismatch, "fill-factor matrix has no rows");
  return std::sqrt(coverage(fill) * static_cast<double>(fill.pixels())) /
         static_cast<double>(fill.classes());
}

}  // namespace ddbin
