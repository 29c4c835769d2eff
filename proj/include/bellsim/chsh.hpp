#pragma once

#include <array>
#include <functional>
#include <string_view>

#include "bellsim/montecarlo.hpp"
#include "bellsim/vec3.hpp"

// CHSH evaluation over any correlator (closed-form quantum, closed-form
// hidden-direction, or Monte Carlo sampled) and classification against the
// local bound 2 and the quantum maximum 2*sqrt(2).

namespace bellsim::chsh {

using math::UnitVector3;

inline const double kLocalBound = 2.0;
inline const double kQuantumMaximum = 2.0 * std::sqrt(2.0);

/// The four analyzer axes of a CHSH run.
struct ChshSettings {
  UnitVector3 a;
  UnitVector3 a_prime;
  UnitVector3 b;
  UnitVector3 b_prime;

  /// Axes in the x-y plane at the given angles (radians).
  static ChshSettings planar(double a, double a_prime, double b, double b_prime) {
    return ChshSettings{UnitVector3::planar(a), UnitVector3::planar(a_prime),
                        UnitVector3::planar(b), UnitVector3::planar(b_prime)};
  }

  /// The maximally violating arrangement: 0°, 90°, 45°, 135°.
  static ChshSettings canonical() {
    return planar(0.0, math::to_radians(90.0), math::to_radians(45.0), math::to_radians(135.0));
  }
};

enum class Classification { within_local_bound, violates_local_bound, at_quantum_maximum };

std::string_view to_string(Classification c);

/// Correlation estimate for one pair of axes; sigma is 0 for closed forms.
using Correlator = std::function<mc::ValueWithError(const UnitVector3&, const UnitVector3&)>;

/// S = E(a,b) - E(a,b') + E(a',b) + E(a',b'), the per-term estimates, the
/// combined uncertainty, and the classification of |S|. Classification
/// tolerance is max(1e-9, 4*uncertainty).
struct ChshResult {
  double s_value{0.0};
  std::array<mc::ValueWithError, 4> terms{};  // E(ab), E(ab'), E(a'b), E(a'b')
  Classification classification{Classification::within_local_bound};
  double uncertainty{0.0};
  ChshSettings settings;
};

/// Evaluate S at fixed settings. Rejects correlator values outside
/// [-1, 1] beyond 4 sigma.
ChshResult chsh_value(const Correlator& correlator, const ChshSettings& settings);

/// Maximize |S| over a planar grid with `angles_per_setting` (>= 8) equally
/// spaced angles per axis. Deterministic: exact ties resolve toward the
/// smallest (b, b', a, a') index tuple.
ChshResult chsh_scan(const Correlator& correlator, int angles_per_setting);

/// E(a, b) = -a·b (quantum singlet).
Correlator qm_singlet_correlator();

/// E(a, b) = -(a·b)/3 (hidden-direction model).
Correlator lhv_singlet_correlator();

/// Monte Carlo correlator of the deterministic sign model. Per-term seeds
/// derive from the base seed and the axis components, so results do not
/// depend on evaluation order.
Correlator sampled_sign_correlator(std::uint64_t n, mc::Seed base_seed,
                                   mc::EstimateOptions options = {});

}  // namespace bellsim::chsh
