#include "bellsim/models.hpp"

#include <cmath>
#include <string>

#include "bellsim/pauli.hpp"

namespace bellsim::models {

namespace {

using math::Mat2c;
using math::Mat4c;
using math::Vec2c;
using math::Vec4c;

double closed_singlet(double a_dot_b) {
  // (1 - d/3)/4 arranged as a single division so that d = ±1 lands exactly
  // on 1/6 and 1/3.
  return (3.0 - a_dot_b) / 12.0;
}

double closed_cascade(double cos_two_phi) {
  return (2.0 + cos_two_phi) / 8.0;
}

}  // namespace

PhotonAnalyzerPair PhotonAnalyzerPair::of(double phi_rad) {
  if (!std::isfinite(phi_rad)) {
    throw validation_error("PhotonAnalyzerPair: angle must be finite");
  }
  double phi = std::fmod(phi_rad, math::kPi);
  if (phi < 0.0) phi += math::kPi;
  if (phi >= math::kPi) phi = 0.0;  // fmod rounding at the period boundary
  return PhotonAnalyzerPair{phi};
}

EntangledPair EntangledPair::of(cplx first, cplx second) {
  const double n2 = std::norm(first) + std::norm(second);
  if (std::abs(n2 - 1.0) > math::kUnitTol) {
    throw validation_error("EntangledPair: weights are not normalized (sum " +
                           std::to_string(n2) + ")");
  }
  return EntangledPair{first, second};
}

double singlet_coincidence_closed(const AnalyzerPair& pair) {
  return closed_singlet(math::dot(pair.a, pair.b));
}

std::pair<double, double> singlet_side_probabilities(const UnitVector3& omega,
                                                     const AnalyzerPair& pair) {
  return {0.5 * (1.0 - math::dot(omega, pair.a)), 0.5 * (1.0 + math::dot(omega, pair.b))};
}

double singlet_coincidence_integrand(const UnitVector3& omega, const AnalyzerPair& pair) {
  const auto [right, left] = singlet_side_probabilities(omega, pair);
  return right * left;
}

double singlet_ratio_test() {
  const AnalyzerPair parallel{UnitVector3::z_axis(), UnitVector3::z_axis()};
  const AnalyzerPair antiparallel{UnitVector3::z_axis(), -UnitVector3::z_axis()};
  return singlet_coincidence_closed(parallel) / singlet_coincidence_closed(antiparallel);
}

JointProbabilities singlet_joint_probabilities(const AnalyzerPair& pair) {
  return JointProbabilities{
      singlet_coincidence_closed(pair),
      singlet_coincidence_closed(AnalyzerPair{pair.a, -pair.b}),
      singlet_coincidence_closed(AnalyzerPair{-pair.a, pair.b}),
      singlet_coincidence_closed(AnalyzerPair{-pair.a, -pair.b}),
  };
}

double lhv_singlet_correlation(const AnalyzerPair& pair) {
  const JointProbabilities p = singlet_joint_probabilities(pair);
  return p.transmit_transmit + p.reflect_reflect - p.transmit_reflect - p.reflect_transmit;
}

double qm_singlet_correlation(const AnalyzerPair& pair) {
  return -math::dot(pair.a, pair.b);
}

PredecayTerms predecay_parallel_terms(const UnitVector3& omega) {
  const double n2 = math::norm_sq(omega);
  if (std::abs(n2 - 1.0) > math::kUnitTol) {
    throw validation_error("predecay_parallel_terms: direction is not unit length");
  }

  // Normalized singlet (|+-> - |-+>)/sqrt(2) in the basis {++, +-, -+, --}.
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const Vec4c plus_minus{cplx(0), cplx(1), cplx(0), cplx(0)};
  const Vec4c minus_plus{cplx(0), cplx(0), cplx(1), cplx(0)};

  // Projector (1 + σ·Ω)/2 on each side, combined as a full 4x4 operator so
  // the interference cross terms are computed, not assumed.
  const Mat2c projector = (Mat2c::identity() + math::sigma_dot(omega)) * 0.5;
  const Mat4c both = math::kron(projector, projector);

  const double direct = 0.5 * (math::sandwich(plus_minus, both, plus_minus).real() +
                               math::sandwich(minus_plus, both, minus_plus).real());
  const double cross = -0.5 * (math::sandwich(plus_minus, both, minus_plus).real() +
                               math::sandwich(minus_plus, both, plus_minus).real());

  Vec4c singlet{};
  for (std::size_t i = 0; i < 4; ++i) singlet[i] = (plus_minus[i] - minus_plus[i]) * inv_sqrt2;
  const double total = math::sandwich(singlet, both, singlet).real();

  return PredecayTerms{direct, cross, total};
}

double predecay_parallel_coincidence(const UnitVector3& omega) {
  return predecay_parallel_terms(omega).total;
}

double cascade_coincidence_closed(const PhotonAnalyzerPair& pair) {
  return closed_cascade(std::cos(2.0 * pair.phi));
}

std::pair<double, double> cascade_side_probabilities(double hidden_angle,
                                                     const PhotonAnalyzerPair& pair) {
  const double right = std::cos(hidden_angle);
  const double left = std::cos(hidden_angle - pair.phi);
  return {right * right, left * left};
}

double cascade_coincidence_integrand(double hidden_angle, const PhotonAnalyzerPair& pair) {
  const auto [right, left] = cascade_side_probabilities(hidden_angle, pair);
  return right * left;
}

double cascade_ratio_test() {
  return cascade_coincidence_closed(PhotonAnalyzerPair::of(math::kPi / 2.0)) /
         cascade_coincidence_closed(PhotonAnalyzerPair::of(0.0));
}

double cascade_predecay_amplitude(const PhotonAnalyzerPair& pair) {
  return -std::cos(pair.phi) / std::sqrt(2.0);
}

double cascade_predecay_probability(const PhotonAnalyzerPair& pair) {
  return (1.0 + std::cos(2.0 * pair.phi)) / 4.0;
}

int realize_entangled_event(const EntangledPair& pair, double u) {
  if (!(u >= 0.0 && u < 1.0)) {
    throw validation_error("realize_entangled_event: u must lie in [0, 1)");
  }
  return u < std::norm(pair.weight_first) ? 1 : 2;
}

mc::CoincidenceModel singlet_model(const AnalyzerPair& pair) {
  return mc::CoincidenceModel{
      mc::HiddenDomain::sphere,
      [pair](const mc::HiddenDirection& hidden) {
        return singlet_side_probabilities(hidden.as_direction(), pair);
      },
  };
}

mc::CoincidenceModel cascade_model(const PhotonAnalyzerPair& pair) {
  return mc::CoincidenceModel{
      mc::HiddenDomain::circle,
      [pair](const mc::HiddenDirection& hidden) {
        return cascade_side_probabilities(hidden.as_angle(), pair);
      },
  };
}

mc::OutcomeModel sign_outcome_model(const AnalyzerPair& pair) {
  const UnitVector3 a = pair.a;
  const UnitVector3 b = pair.b;
  return mc::OutcomeModel{
      mc::HiddenDomain::sphere,
      [a](const mc::HiddenDirection& hidden) {
        return math::dot(a, hidden.as_direction()) >= 0.0 ? 1 : -1;
      },
      [b](const mc::HiddenDirection& hidden) {
        return math::dot(b, hidden.as_direction()) >= 0.0 ? -1 : 1;
      },
  };
}

}  // namespace bellsim::models
