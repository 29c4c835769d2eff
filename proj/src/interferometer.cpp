#include "bellsim/interferometer.hpp"

#include <cmath>

namespace bellsim::interf {

namespace {

double modulation(double r, double vartheta) {
  const double r2 = r * r;
  return std::sqrt(std::max(0.0, 1.0 + r2 * r2 + 2.0 * r2 * std::cos(2.0 * vartheta)));
}

}  // namespace

InterferometerConfig InterferometerConfig::of(double amplitude_sq, double r, double vartheta,
                                              double phi) {
  if (!std::isfinite(amplitude_sq) || !std::isfinite(r) || !std::isfinite(vartheta) ||
      !std::isfinite(phi)) {
    throw validation_error("InterferometerConfig: parameters must be finite");
  }
  if (amplitude_sq < 0.0) throw validation_error("InterferometerConfig: |A|^2 must be >= 0");
  if (r < 0.0) throw validation_error("InterferometerConfig: r must be >= 0");
  return InterferometerConfig{amplitude_sq, r, vartheta, phi};
}

BlochState recombined_bloch(const InterferometerConfig& config) {
  const double r = config.r;
  const double denom = 1.0 + r * r;
  const UnitVector3 b = UnitVector3::of(2.0 * r * std::sin(config.vartheta) / denom,
                                        (1.0 - r * r) / denom,
                                        2.0 * r * std::cos(config.vartheta) / denom);
  return BlochState{b, config.amplitude_sq * denom};
}

double detector_intensity(const InterferometerConfig& config) {
  const double r = config.r;
  const double alpha = std::atan2(1.0 - r * r, 2.0 * r * std::cos(config.vartheta));
  return 0.25 * config.amplitude_sq *
         (1.0 + r * r + modulation(r, config.vartheta) * std::cos(2.0 * config.phi + alpha));
}

double visibility(double r, double vartheta) {
  if (r < 0.0) throw validation_error("visibility: r must be >= 0");
  const double v = modulation(r, vartheta) / (1.0 + r * r);
  return std::min(1.0, v);
}

}  // namespace bellsim::interf
