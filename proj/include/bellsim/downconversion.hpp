#pragma once

#include <complex>

#include "bellsim/vec3.hpp"

// Two-photon beam-splitter counting statistics: the interfering and the
// unitarity-preserving coincidence probabilities, same-detector
// probabilities, and the bookkeeping audit of the two totals.

namespace bellsim::downconv {

using math::cplx;

/// The four amplitudes of a two-port splitter acting on photons A and B:
/// photon A reaches detectors 1, 2 with amplitudes alpha, beta; photon B
/// with gamma, delta. Each photon's pair of amplitudes is normalized:
/// |alpha|² + |beta|² = |gamma|² + |delta|² = 1 within 1e-12.
struct SplitterAmplitudes {
  cplx alpha;
  cplx beta;
  cplx gamma;
  cplx delta;

  static SplitterAmplitudes of(cplx alpha, cplx beta, cplx gamma, cplx delta);

  /// Rescales each photon's amplitude pair to unit norm.
  static SplitterAmplitudes normalized(cplx alpha, cplx beta, cplx gamma, cplx delta);

  /// Row normalization only constrains the two pairs; a physical splitter
  /// additionally has orthogonal columns: alpha*conj(gamma) +
  /// beta*conj(delta) = 0 (within 1e-12).
  bool unitary_splitter() const;

  /// 50/50 splitter with the physical phase convention (delta = -1/sqrt 2).
  static SplitterAmplitudes balanced();
};

/// Coincidence probability with amplitude interference: |αδ + γβ|².
double coincidence_interfering(const SplitterAmplitudes& amps);

/// Coincidence probability from particle-number bookkeeping: |αδ|² + |γβ|².
double coincidence_unitary(const SplitterAmplitudes& amps);

/// Side-by-side audit of the two counting schemes.
///
///   same_detector       = |αγ|² + |βδ|²           (both photons, one detector)
///   unitary_sum         = same_detector + w2      (= 1 for all normalized inputs)
///   interference_defect = 2 Re(α* δ* γ β)          (w1 = w2 + defect)
///
/// so the w1-based total, same_detector + w1, equals 1 + interference_defect
/// and differs from unity whenever the cross term survives.
struct CountingAudit {
  double w1;
  double w2;
  double same_detector;
  double unitary_sum;
  double interference_defect;
};

CountingAudit audit(const SplitterAmplitudes& amps);

}  // namespace bellsim::downconv
