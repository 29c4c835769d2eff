#include "bellsim/spin.hpp"

#include <cmath>
#include <string>

namespace bellsim::spin {

namespace {

void require_normalized(const Spinor& psi) {
  const double n2 = psi.norm_sq();
  if (std::abs(n2 - 1.0) > math::kUnitTol) {
    throw validation_error("Spinor: state is not normalized (|psi|^2 = " + std::to_string(n2) + ")");
  }
}

void require_unit(const UnitVector3& v, const char* what) {
  const double n2 = math::norm_sq(v);
  if (std::abs(n2 - 1.0) > math::kUnitTol) {
    throw validation_error(std::string(what) + ": direction is not unit length");
  }
}

}  // namespace

Spinor Spinor::of(cplx up, cplx down) {
  Spinor psi{up, down};
  require_normalized(psi);
  return psi;
}

Spinor spinor_from_direction(const UnitVector3& omega) {
  require_unit(omega, "spinor_from_direction");
  const double one_plus_z = 1.0 + omega.z;
  if (one_plus_z < 1e-12) {
    throw validation_error("spinor_from_direction: direction too close to the excluded south pole");
  }
  const double denom = std::sqrt(2.0 * one_plus_z);
  return Spinor{cplx(one_plus_z / denom, 0.0), cplx(omega.x, omega.y) / denom};
}

UnitVector3 spin_arrow(const Spinor& psi) {
  require_normalized(psi);
  const cplx cross = std::conj(psi.up) * psi.down;
  return UnitVector3::of(2.0 * cross.real(), 2.0 * cross.imag(),
                         std::norm(psi.up) - std::norm(psi.down));
}

FilterResult filter_transmit(const Spinor& psi, const UnitVector3& axis) {
  require_normalized(psi);
  const Spinor post = spinor_from_direction(axis);
  const cplx amplitude = overlap(post, psi);
  const double probability = std::min(1.0, std::max(0.0, std::norm(amplitude)));
  return FilterResult{amplitude, probability, post};
}

}  // namespace bellsim::spin
