#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <variant>
#include <vector>

#include "bellsim/vec3.hpp"

// Seeded sampling engine and estimators: uniform directions on the sphere and
// circle, coincidence-probability and correlator estimators against any
// hidden-variable model, and a deterministic fixed-grid quadrature oracle.
//
// Reproducibility contract: every estimate is a pure function of
// (seed, n, model). Work is split into fixed-size shards whose random draws
// come from counter-derived substreams, and shard partials are combined by a
// fixed-order pairwise sum, so results are bit-identical for any thread count.

namespace bellsim::mc {

/// RNG seed. Same seed + same parameters => bit-identical estimates.
struct Seed {
  std::uint64_t value{0};
};

/// Counter-based generator: bits(i) is a pure function of (seed, i), so any
/// draw can be addressed directly and substreams never overlap.
class CounterRng {
 public:
  explicit CounterRng(Seed seed) : seed_(seed.value) {}

  std::uint64_t bits(std::uint64_t index) const;

  /// Uniform double in [0, 1).
  double uniform(std::uint64_t index) const {
    return static_cast<double>(bits(index) >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t seed_;
};

/// Draw-slot layout: event i owns counter slots [4i, 4i+4). Slots 0..1 feed
/// the hidden-variable draw, slots 2..3 the per-side Bernoulli trials.
inline constexpr std::uint64_t kDrawSlotsPerEvent = 4;

/// Uniform direction on the full unit sphere (inverse CDF in cos(theta),
/// independent uniform azimuth), drawn from the event's counter slots.
math::UnitVector3 sample_sphere(const CounterRng& rng, std::uint64_t event_index);

/// Uniform angle in [0, 2*pi).
double sample_circle_angle(const CounterRng& rng, std::uint64_t event_index);

enum class HiddenDomain { sphere, circle };

/// Per-event hidden parameter: the pair's shared polarization, either a
/// direction on the sphere (spin case) or a planar angle (photon case).
class HiddenDirection {
 public:
  static HiddenDirection direction(const math::UnitVector3& v) { return HiddenDirection(v); }

  /// Angle is reduced to [0, 2*pi).
  static HiddenDirection angle(double radians);

  bool is_direction() const { return std::holds_alternative<math::UnitVector3>(value_); }

  const math::UnitVector3& as_direction() const;
  double as_angle() const;

 private:
  explicit HiddenDirection(const math::UnitVector3& v) : value_(v) {}
  explicit HiddenDirection(double a) : value_(a) {}

  std::variant<math::UnitVector3, double> value_;
};

HiddenDirection sample_hidden(const CounterRng& rng, HiddenDomain domain,
                              std::uint64_t event_index);

/// Monte Carlo estimate of a mean: value, standard error of the mean
/// (sample standard deviation / sqrt(n)), sample count, and the seed that
/// reproduces it.
struct SampleStats {
  double mean{0.0};
  double std_error{0.0};
  std::uint64_t n{0};
  Seed seed;
};

/// Coincidence estimators:
///  - product_mean averages the product of the two per-side probabilities;
///  - double_bernoulli draws one uniform against each side and tallies joint
///    successes (simulated coincidence counting).
/// Both converge to E[w_right * w_left].
enum class Estimator { product_mean, double_bernoulli };

struct EstimateOptions {
  Estimator estimator = Estimator::product_mean;
  /// Worker threads; 0 = hardware concurrency. Results do not depend on it.
  unsigned threads = 0;
};

/// A local hidden-variable coincidence model: per hidden realization, the
/// transmission probabilities of the right and left analyzers.
struct CoincidenceModel {
  HiddenDomain domain;
  std::function<std::pair<double, double>(const HiddenDirection&)> sides;
};

/// Mean of the coincidence probability over the hidden distribution.
/// Requires n >= 100 and side probabilities in [0, 1].
SampleStats estimate_probability(const CoincidenceModel& model, std::uint64_t n, Seed seed,
                                 EstimateOptions options = {});

/// Deterministic ±1 outcome model for correlator estimation.
struct OutcomeModel {
  HiddenDomain domain;
  std::function<int(const HiddenDirection&)> right;
  std::function<int(const HiddenDirection&)> left;
};

/// Mean of right*left over the hidden distribution (a Bell correlator).
/// Outcome functions must return exactly +1 or -1.
SampleStats estimate_correlator(const OutcomeModel& model, std::uint64_t n, Seed seed,
                                EstimateOptions options = {});

/// Deterministic fixed-grid mean over the hidden domain: product
/// Gauss-Legendre in cos(theta) x uniform azimuth on the sphere, uniform
/// midpoint rule on the circle. Requires resolution >= 64 nodes per
/// dimension; smooth trigonometric integrands converge to ~1e-12 by 256.
double quadrature(const std::function<double(const HiddenDirection&)>& integrand,
                  HiddenDomain domain, int resolution);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// A derived quantity with a first-order propagated uncertainty.
struct ValueWithError {
  double value{0.0};
  double sigma{0.0};
};

/// numer.mean / denom.mean with propagated standard error.
ValueWithError ratio_with_error(const SampleStats& numer, const SampleStats& denom);

/// Fixed-order pairwise sum; scheduling-independent reduction primitive.
double pairwise_sum(const std::vector<double>& values);

/// Derive an independent stream seed from a base seed and a tag (e.g. hashed
/// settings), for running several estimates from one user-facing seed.
Seed derive_seed(Seed base, std::uint64_t tag);

/// Hash the bit patterns of doubles into a tag for derive_seed.
std::uint64_t hash_doubles(std::initializer_list<double> values);

}  // namespace bellsim::mc
