#pragma once

#include <complex>
#include <utility>

#include "bellsim/montecarlo.hpp"
#include "bellsim/vec3.hpp"

// Closed-form local-realist and quantum-mechanical predictions for the
// spin-1/2 decay and cascade-photon coincidence experiments, plus the
// per-event product-state realization sampler.
//
// Spin-1/2 decay: the pair leaves the source with opposite polarizations
// ±Ω along a hidden direction uniform on the sphere; each analyzer
// transmits with probability (1 + axis·polarization)/2. Cascade photons:
// the pair carries a hidden linear-polarization angle uniform on the
// circle; each polarizer transmits by Malus' law.

namespace bellsim::models {

using math::cplx;
using math::UnitVector3;

/// Right- and left-side analyzer axes.
struct AnalyzerPair {
  UnitVector3 a;  // right
  UnitVector3 b;  // left
};

/// Relative angle between the two photon polarizers. Polarizers are axes,
/// so the angle is stored reduced to [0, pi).
struct PhotonAnalyzerPair {
  double phi{0.0};

  static PhotonAnalyzerPair of(double phi_rad);
};

/// Two-term superposition weights of a pair state; |first|² + |second|² = 1.
struct EntangledPair {
  cplx weight_first;
  cplx weight_second;

  static EntangledPair of(cplx first, cplx second);
};

// ---------------------------------------------------------------------------
// Spin-1/2 decay pair

/// Hidden-direction coincidence probability, closed form:
/// w(a, b) = (1 - a·b/3)/4, ranging over [1/6, 1/3].
double singlet_coincidence_closed(const AnalyzerPair& pair);

/// Per-direction transmission probabilities of the two sides:
/// { [1 - Ω·a]/2, [1 + Ω·b]/2 }.
std::pair<double, double> singlet_side_probabilities(const UnitVector3& omega,
                                                     const AnalyzerPair& pair);

/// Product of the side probabilities; its uniform sphere average reproduces
/// singlet_coincidence_closed.
double singlet_coincidence_integrand(const UnitVector3& omega, const AnalyzerPair& pair);

/// w(a,a) / w(a,-a) from the closed forms: exactly 1/2.
double singlet_ratio_test();

/// The four joint outcomes (transmit/reflect on each side), completed from
/// the transmit-transmit form by the analyzer complements a -> -a, b -> -b.
/// The four sum to 1.
struct JointProbabilities {
  double transmit_transmit;
  double transmit_reflect;
  double reflect_transmit;
  double reflect_reflect;

  double sum() const {
    return transmit_transmit + transmit_reflect + reflect_transmit + reflect_reflect;
  }
};

JointProbabilities singlet_joint_probabilities(const AnalyzerPair& pair);

/// Correlator of the hidden-direction model, built from the four joint
/// probabilities; equals -(a·b)/3.
double lhv_singlet_correlation(const AnalyzerPair& pair);

/// Quantum singlet expectation of the product of projections: -a·b.
double qm_singlet_correlation(const AnalyzerPair& pair);

/// The two bracketed groups of the pre-decay coincidence sandwich for
/// parallel analyzers along omega, evaluated on the entangled singlet with
/// an explicit 4-dimensional tensor product. The direct and cross
/// (interference) contributions cancel: total == 0 for every omega.
struct PredecayTerms {
  double direct_term;
  double cross_term;
  double total;
};

PredecayTerms predecay_parallel_terms(const UnitVector3& omega);

/// Total of the sandwich above; identically zero (computed, not assumed).
double predecay_parallel_coincidence(const UnitVector3& omega);

// ---------------------------------------------------------------------------
// Cascade photon pair

/// Hidden-angle coincidence probability, closed form:
/// P(phi) = [1 + cos(2 phi)/2]/4, ranging over [1/8, 3/8].
double cascade_coincidence_closed(const PhotonAnalyzerPair& pair);

/// Malus factors of the two sides: { cos²(h), cos²(h - phi) }.
std::pair<double, double> cascade_side_probabilities(double hidden_angle,
                                                     const PhotonAnalyzerPair& pair);

/// cos²(h) · cos²(h - phi); its uniform circle average reproduces
/// cascade_coincidence_closed.
double cascade_coincidence_integrand(double hidden_angle, const PhotonAnalyzerPair& pair);

/// P(pi/2) / P(0) from the closed forms: exactly 1/3.
double cascade_ratio_test();

/// Pre-decay projection amplitude of the photon pair on the two filters:
/// -cos(phi)/sqrt(2).
double cascade_predecay_amplitude(const PhotonAnalyzerPair& pair);

/// Squared projection: (1 + cos(2 phi))/4. Differs from the post-decay
/// closed form only by the constant 1/8.
double cascade_predecay_probability(const PhotonAnalyzerPair& pair);

// ---------------------------------------------------------------------------
// Realization sampler

/// One realization of a two-term superposition: branch 1 when u < |first|²,
/// branch 2 otherwise. Branch-1 frequency over many draws tends to |first|².
int realize_entangled_event(const EntangledPair& pair, double u);

// ---------------------------------------------------------------------------
// Bindings for the sampling engine

mc::CoincidenceModel singlet_model(const AnalyzerPair& pair);
mc::CoincidenceModel cascade_model(const PhotonAnalyzerPair& pair);

/// Deterministic sign model: right outcome sgn(a·λ), left outcome -sgn(b·λ).
/// Its correlator is -1 + 2*theta/pi for analyzers at angle theta.
mc::OutcomeModel sign_outcome_model(const AnalyzerPair& pair);

}  // namespace bellsim::models
