#pragma once

#include <complex>

#include "bellsim/vec3.hpp"

// Two-component spinor algebra for spin-1/2 polarization: states polarized
// along a direction, the polarization (spin-arrow) expectation, and
// analyzer-filter transmission.

namespace bellsim::spin {

using math::cplx;
using math::UnitVector3;

/// Normalized two-component state. |up|² + |down|² = 1 within 1e-12 for every
/// constructed value; operations re-check their inputs.
struct Spinor {
  cplx up{1.0, 0.0};
  cplx down{0.0, 0.0};

  static Spinor of(cplx up, cplx down);

  double norm_sq() const { return std::norm(up) + std::norm(down); }
};

/// ⟨a|b⟩.
inline cplx overlap(const Spinor& a, const Spinor& b) {
  return std::conj(a.up) * b.up + std::conj(a.down) * b.down;
}

/// Outcome of passing a state through an analyzer: transmission amplitude,
/// its squared magnitude, and the state after the filter.
struct FilterResult {
  cplx amplitude;
  double probability;  // |amplitude|², clamped to [0, 1] against rounding
  Spinor post_state;
};

/// State polarized along omega: the +1 eigenstate of σ·omega.
///
/// up   = sqrt((1 + Ω_z)/2)
/// down = (Ω_x + iΩ_y) / sqrt(2(1 + Ω_z))
///
/// The representation excludes the south pole; inputs with 1 + Ω_z < 1e-12
/// are rejected rather than gauge-switched, since callers sample directions
/// continuously and the excluded point has measure zero.
Spinor spinor_from_direction(const UnitVector3& omega);

/// Polarization expectation ⟨ψ|σ|ψ⟩; a unit vector for normalized states.
/// Inverse of spinor_from_direction away from the south pole.
UnitVector3 spin_arrow(const Spinor& psi);

/// Transmission through an analyzer along `axis`: probability
/// (1 + axis·⟨σ⟩)/2, post state polarized along the axis.
FilterResult filter_transmit(const Spinor& psi, const UnitVector3& axis);

}  // namespace bellsim::spin
