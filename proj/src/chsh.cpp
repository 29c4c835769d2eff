#include "bellsim/chsh.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "bellsim/models.hpp"

namespace bellsim::chsh {

namespace {

mc::ValueWithError checked_term(const Correlator& correlator, const UnitVector3& x,
                                const UnitVector3& y) {
  const mc::ValueWithError e = correlator(x, y);
  // The 1e-12 slack absorbs rounding when dot products land a few ulp
  // outside [-1, 1] at aligned axes.
  if (std::abs(e.value) > 1.0 + 4.0 * e.sigma + 1e-12) {
    throw validation_error("chsh: correlator value " + std::to_string(e.value) +
                           " lies outside [-1, 1] beyond its uncertainty");
  }
  return e;
}

Classification classify(double s_value, double tolerance) {
  if (std::abs(std::abs(s_value) - kQuantumMaximum) <= tolerance) {
    return Classification::at_quantum_maximum;
  }
  if (std::abs(s_value) <= kLocalBound + tolerance) {
    return Classification::within_local_bound;
  }
  return Classification::violates_local_bound;
}

}  // namespace

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::within_local_bound: return "within-local-bound";
    case Classification::violates_local_bound: return "violates-local-bound";
    case Classification::at_quantum_maximum: return "at-quantum-maximum";
  }
  return "unknown";
}

ChshResult chsh_value(const Correlator& correlator, const ChshSettings& settings) {
  if (!correlator) throw validation_error("chsh_value: missing correlator");

  ChshResult result;
  result.settings = settings;
  result.terms[0] = checked_term(correlator, settings.a, settings.b);
  result.terms[1] = checked_term(correlator, settings.a, settings.b_prime);
  result.terms[2] = checked_term(correlator, settings.a_prime, settings.b);
  result.terms[3] = checked_term(correlator, settings.a_prime, settings.b_prime);

  result.s_value = result.terms[0].value - result.terms[1].value + result.terms[2].value +
                   result.terms[3].value;
  double var = 0.0;
  for (const auto& t : result.terms) var += t.sigma * t.sigma;
  result.uncertainty = std::sqrt(var);

  const double tolerance = std::max(1e-9, 4.0 * result.uncertainty);
  result.classification = classify(result.s_value, tolerance);
  return result;
}

ChshResult chsh_scan(const Correlator& correlator, int angles_per_setting) {
  if (angles_per_setting < 8) {
    throw validation_error("chsh_scan: need at least 8 angles per setting");
  }
  if (!correlator) throw validation_error("chsh_scan: missing correlator");

  const int res = angles_per_setting;
  const double step = 2.0 * math::kPi / static_cast<double>(res);
  std::vector<UnitVector3> axes(static_cast<std::size_t>(res));
  for (int i = 0; i < res; ++i) axes[static_cast<std::size_t>(i)] = UnitVector3::planar(step * i);

  // Correlation matrix over the grid.
  std::vector<double> corr(static_cast<std::size_t>(res) * static_cast<std::size_t>(res));
  for (int i = 0; i < res; ++i) {
    for (int j = 0; j < res; ++j) {
      corr[static_cast<std::size_t>(i * res + j)] =
          checked_term(correlator, axes[static_cast<std::size_t>(i)],
                       axes[static_cast<std::size_t>(j)])
              .value;
    }
  }
  auto e = [&](int i, int j) { return corr[static_cast<std::size_t>(i * res + j)]; };

  // For fixed (b, b') the a-part E(a,b) - E(a,b') and the a'-part
  // E(a',b) + E(a',b') maximize independently, so the scan is cubic.
  struct Candidate {
    double abs_s = -1.0;
    int ia = 0, iap = 0, ib = 0, ibp = 0;
  };
  Candidate best;
  auto offer = [&best](double abs_s, int ia, int iap, int ib, int ibp) {
    if (abs_s < best.abs_s) return;
    if (abs_s == best.abs_s) {
      const auto lhs = std::array{ib, ibp, ia, iap};
      const auto rhs = std::array{best.ib, best.ibp, best.ia, best.iap};
      if (!(lhs < rhs)) return;
    }
    best = Candidate{abs_s, ia, iap, ib, ibp};
  };

  for (int ib = 0; ib < res; ++ib) {
    for (int ibp = 0; ibp < res; ++ibp) {
      int amax = 0, amin = 0, apmax = 0, apmin = 0;
      double gmax = e(0, ib) - e(0, ibp), gmin = gmax;
      double hmax = e(0, ib) + e(0, ibp), hmin = hmax;
      for (int ia = 1; ia < res; ++ia) {
        const double g = e(ia, ib) - e(ia, ibp);
        const double h = e(ia, ib) + e(ia, ibp);
        if (g > gmax) { gmax = g; amax = ia; }
        if (g < gmin) { gmin = g; amin = ia; }
        if (h > hmax) { hmax = h; apmax = ia; }
        if (h < hmin) { hmin = h; apmin = ia; }
      }
      offer(std::abs(gmax + hmax), amax, apmax, ib, ibp);
      offer(std::abs(gmin + hmin), amin, apmin, ib, ibp);
    }
  }

  const ChshSettings winner{axes[static_cast<std::size_t>(best.ia)],
                            axes[static_cast<std::size_t>(best.iap)],
                            axes[static_cast<std::size_t>(best.ib)],
                            axes[static_cast<std::size_t>(best.ibp)]};
  return chsh_value(correlator, winner);
}

Correlator qm_singlet_correlator() {
  return [](const UnitVector3& a, const UnitVector3& b) {
    return mc::ValueWithError{models::qm_singlet_correlation(models::AnalyzerPair{a, b}), 0.0};
  };
}

Correlator lhv_singlet_correlator() {
  return [](const UnitVector3& a, const UnitVector3& b) {
    return mc::ValueWithError{models::lhv_singlet_correlation(models::AnalyzerPair{a, b}), 0.0};
  };
}

Correlator sampled_sign_correlator(std::uint64_t n, mc::Seed base_seed,
                                   mc::EstimateOptions options) {
  return [n, base_seed, options](const UnitVector3& a, const UnitVector3& b) {
    const std::uint64_t tag = mc::hash_doubles({a.x, a.y, a.z, b.x, b.y, b.z});
    const mc::SampleStats stats = mc::estimate_correlator(
        models::sign_outcome_model(models::AnalyzerPair{a, b}), n,
        mc::derive_seed(base_seed, tag), options);
    return mc::ValueWithError{stats.mean, stats.std_error};
  };
}

}  // namespace bellsim::chsh
