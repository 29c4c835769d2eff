#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bellsim/vec3.hpp"

// Ingest cascade-photon coincidence counts (delay histograms or peak
// summaries), split them into true and background contributions under
// alternative assumptions, and test the orthogonal/parallel ratio against
// the hidden-angle prediction of 1/3.
//
// Error model: sigma = sqrt(N) on every count entering a ratio, propagated
// to first order. A reported ratio is "consistent with 1/3" when it lies
// within 3 sigma of 1/3.

namespace bellsim::reanalysis {

/// Analyzer arrangement tag of a histogram row.
struct FilterConfig {
  enum class Kind { parallel, orthogonal, angle, no_polarizers };

  Kind kind{Kind::parallel};
  double angle_rad{0.0};  // meaningful only for Kind::angle

  /// Accepted tokens: "parallel", "orthogonal", "deg:<number>", "nopol".
  static FilterConfig parse(const std::string& token);

  std::string to_string() const;

  bool operator==(const FilterConfig& o) const {
    return kind == o.kind && (kind != Kind::angle || angle_rad == o.angle_rad);
  }
};

/// One histogram bin: coincidence counts at a detector delay for one
/// analyzer arrangement.
struct CoincidenceRecord {
  double delay_ns{0.0};
  std::uint64_t counts{0};
  FilterConfig filter;
};

/// Parse a comma-separated table with header `delay_ns,counts,filter_config`.
/// Rows may come in any order; malformed rows are reported by number.
std::vector<CoincidenceRecord> load_histogram(std::istream& in);
std::vector<CoincidenceRecord> load_histogram_file(const std::string& path);

/// Peak minus background for one analyzer arrangement. The peak of a delay
/// histogram is its maximum bin; a single-bin group is taken as a directly
/// entered peak value. Negative nets clamp to zero and are flagged.
struct NetPeak {
  FilterConfig filter;
  double raw_peak{0.0};
  double net{0.0};
  bool clamped{false};
};

/// Subtract a flat background level from the peak of every arrangement
/// present. Rejects groups whose bins are all equal within Poisson noise
/// (no identifiable peak). Increasing the background never increases a net.
std::vector<NetPeak> subtract_background(const std::vector<CoincidenceRecord>& records,
                                         double background_level);

/// True-coincidence rate model R(phi) = K [1 + cos(2 phi)/2]: peak scale K,
/// an accidental rate, and a non-accidental floor present at every angle.
/// The true part predicts R(0)/R(pi/2) = 3 identically.
struct RateModel {
  double true_peak_rate{0.0};
  double accidental_rate{0.0};
  double residual_floor{0.0};
};

/// Orthogonal/parallel ratio with its Poisson uncertainty.
struct ReanalysisReport {
  double net_parallel{0.0};
  double net_orthogonal{0.0};
  double ratio{0.0};
  double ratio_sigma{0.0};
  bool consistent_one_third{false};
};

/// Build the report from net peak counts (sigma = sqrt(N) on each net).
ReanalysisReport report_from_nets(double net_parallel, double net_orthogonal);

/// Re-split a no-polarizer coincidence rate under an alternative accidental
/// assumption. Of the `claimed_accidental` rate, only `alternative_accidental`
/// is treated as truly accidental; the remainder becomes a floor present at
/// every analyzer angle. The published true rate (total - claimed) passes
/// parallel analyzers with probability 1/2 and orthogonal ones with
/// probability 0, so
///   net_parallel   = (total - claimed)/2 + floor
///   net_orthogonal = floor.
/// With alternative == claimed this reproduces the published split exactly.
ReanalysisReport aspect_resplit(double total_no_polarizers, double claimed_accidental,
                                double alternative_accidental);

/// Fit of the rate model to net counts at phi = 0 and phi = pi/2:
/// K = net_parallel / 1.5, predicted orthogonal = net_parallel / 3,
/// goodness = (net_orthogonal - predicted) / sigma in Poisson sigmas
/// (sigma from the observed count, or from the prediction when the
/// observation is zero).
struct RateModelFit {
  RateModel model;
  double predicted_orthogonal{0.0};
  double goodness_sigma{0.0};
  bool consistent{false};  // |goodness| <= 3
};

RateModelFit fit_ratio_model(double net_parallel, double net_orthogonal);

}  // namespace bellsim::reanalysis
