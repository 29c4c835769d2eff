#include "bellsim/downconversion.hpp"

#include <cmath>
#include <string>

namespace bellsim::downconv {

namespace {

void require_row_norms(const SplitterAmplitudes& amps) {
  const double row_a = std::norm(amps.alpha) + std::norm(amps.beta);
  const double row_b = std::norm(amps.gamma) + std::norm(amps.delta);
  if (std::abs(row_a - 1.0) > math::kUnitTol || std::abs(row_b - 1.0) > math::kUnitTol) {
    throw validation_error("SplitterAmplitudes: |alpha|^2+|beta|^2 and |gamma|^2+|delta|^2 must be 1 (got " +
                           std::to_string(row_a) + ", " + std::to_string(row_b) + ")");
  }
}

}  // namespace

SplitterAmplitudes SplitterAmplitudes::of(cplx alpha, cplx beta, cplx gamma, cplx delta) {
  SplitterAmplitudes amps{alpha, beta, gamma, delta};
  require_row_norms(amps);
  return amps;
}

SplitterAmplitudes SplitterAmplitudes::normalized(cplx alpha, cplx beta, cplx gamma, cplx delta) {
  const double na = std::sqrt(std::norm(alpha) + std::norm(beta));
  const double nb = std::sqrt(std::norm(gamma) + std::norm(delta));
  if (!(na > 0.0) || !(nb > 0.0) || !std::isfinite(na) || !std::isfinite(nb)) {
    throw validation_error("SplitterAmplitudes: cannot normalize a zero amplitude pair");
  }
  return SplitterAmplitudes{alpha / na, beta / na, gamma / nb, delta / nb};
}

bool SplitterAmplitudes::unitary_splitter() const {
  return std::abs(alpha * std::conj(gamma) + beta * std::conj(delta)) <= math::kUnitTol;
}

SplitterAmplitudes SplitterAmplitudes::balanced() {
  const double s = 1.0 / std::sqrt(2.0);
  return SplitterAmplitudes{cplx(s), cplx(s), cplx(s), cplx(-s)};
}

double coincidence_interfering(const SplitterAmplitudes& amps) {
  require_row_norms(amps);
  return std::norm(amps.alpha * amps.delta + amps.gamma * amps.beta);
}

double coincidence_unitary(const SplitterAmplitudes& amps) {
  require_row_norms(amps);
  return std::norm(amps.alpha * amps.delta) + std::norm(amps.gamma * amps.beta);
}

CountingAudit audit(const SplitterAmplitudes& amps) {
  require_row_norms(amps);
  CountingAudit out{};
  out.w1 = coincidence_interfering(amps);
  out.w2 = coincidence_unitary(amps);
  out.same_detector = std::norm(amps.alpha * amps.gamma) + std::norm(amps.beta * amps.delta);
  out.unitary_sum = out.same_detector + out.w2;
  out.interference_defect =
      2.0 * (std::conj(amps.alpha) * std::conj(amps.delta) * amps.gamma * amps.beta).real();
  return out;
}

}  // namespace bellsim::downconv
