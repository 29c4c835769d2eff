#pragma once

#include "bellsim/vec3.hpp"

// Neutron-interferometer spin-path model. The two paths recombine into
// |psi> = A [ |ξ_y> + r e^{iϑ} |ξ_-y> ]; a spin rotator turns the spin by
// phi about x and a z-analyzer feeds detector O. Everything observable is a
// function of (|A|², r, ϑ, phi).

namespace bellsim::interf {

using math::UnitVector3;

struct InterferometerConfig {
  double amplitude_sq{1.0};  // |A|², overall intensity scale
  double r{1.0};             // relative path amplitude, real and >= 0
  double vartheta{0.0};      // phase-shifter phase (radians)
  double phi{0.0};           // spin-rotator angle about x (radians)

  static InterferometerConfig of(double amplitude_sq, double r, double vartheta, double phi);
};

/// Polarization direction of the recombined beam and its squared norm
/// |C|² = |A|² (1 + r²).
struct BlochState {
  UnitVector3 b;
  double norm_sq;
};

/// b = (2r sin ϑ, 1 - r², 2r cos ϑ) / (1 + r²); |b| = 1 for every (r, ϑ).
BlochState recombined_bloch(const InterferometerConfig& config);

/// Detector-O count rate:
/// I = (|A|²/4) [ 1 + r² + sqrt(1 + r⁴ + 2r² cos 2ϑ) · cos(2 phi + α) ],
/// α = atan2(1 - r², 2r cos ϑ), which continues the arccot form smoothly
/// through r = 1.
double detector_intensity(const InterferometerConfig& config);

/// Fringe contrast of the phi oscillation:
/// V = sqrt(1 + r⁴ + 2r² cos 2ϑ) / (1 + r²) in [0, 1]; equals
/// (I_max - I_min)/(I_max + I_min) of the intensity scanned over phi.
double visibility(double r, double vartheta);

}  // namespace bellsim::interf
