#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "bellsim/reanalysis.hpp"
#include "test_oracles.hpp"

using namespace bellsim;
using reanalysis::CoincidenceRecord;
using reanalysis::FilterConfig;

namespace {

std::vector<CoincidenceRecord> parse(const std::string& text) {
  std::istringstream in(text);
  return reanalysis::load_histogram(in);
}

// A delay histogram in the style of the early cascade measurements: flat
// background near 40 counts, peaks of 140 (parallel) and 70 (orthogonal).
const char* kCascadeHistogram =
    "delay_ns,counts,filter_config\n"
    "-4,38,parallel\n"
    "-3,42,parallel\n"
    "-2,40,parallel\n"
    "-1,55,parallel\n"
    "0,140,parallel\n"
    "1,58,parallel\n"
    "2,41,parallel\n"
    "3,39,parallel\n"
    "-4,39,orthogonal\n"
    "-3,41,orthogonal\n"
    "-2,40,orthogonal\n"
    "-1,45,orthogonal\n"
    "0,70,orthogonal\n"
    "1,47,orthogonal\n"
    "2,40,orthogonal\n"
    "3,38,orthogonal\n";

double find_net(const std::vector<reanalysis::NetPeak>& nets, FilterConfig::Kind kind) {
  for (const auto& net : nets) {
    if (net.filter.kind == kind) return net.net;
  }
  FAIL("filter kind not present");
  return 0.0;
}

// Explicit first-order Poisson propagation for o/p with sigma = sqrt(N).
double sigma_oracle(double orthogonal, double parallel) {
  const double d_o = std::sqrt(orthogonal) / parallel;
  const double d_p = orthogonal * std::sqrt(parallel) / (parallel * parallel);
  return std::sqrt(d_o * d_o + d_p * d_p);
}

}  // namespace

TEST_SUITE("reanalysis") {

TEST_CASE("well-formed tables load in order") {
  const auto records = parse(
      "delay_ns,counts,filter_config\n"
      "0,12,parallel\n"
      "1.5,0,deg:30\n"
      "-2,7,nopol\n");
  REQUIRE(records.size() == 3);
  CHECK(records[0].delay_ns == 0.0);
  CHECK(records[0].counts == 12);
  CHECK(records[0].filter.kind == FilterConfig::Kind::parallel);
  CHECK(records[1].delay_ns == 1.5);
  CHECK(records[1].filter.kind == FilterConfig::Kind::angle);
  CHECK(records[1].filter.angle_rad == doctest::Approx(math::kPi / 6.0).epsilon(1e-12));
  CHECK(records[2].filter.kind == FilterConfig::Kind::no_polarizers);
}

TEST_CASE("empty input is an empty table, not an error") {
  CHECK(parse("").empty());
  CHECK(parse("delay_ns,counts,filter_config\n").empty());
}

TEST_CASE("malformed rows are reported by number") {
  const char* negative =
      "delay_ns,counts,filter_config\n"
      "0,10,parallel\n"
      "1,-5,parallel\n";
  CHECK_THROWS_WITH_AS(parse(negative),
                       doctest::Contains("row 3"), validation_error);

  const char* unknown_filter =
      "delay_ns,counts,filter_config\n"
      "0,10,diagonal\n";
  CHECK_THROWS_WITH_AS(parse(unknown_filter),
                       doctest::Contains("row 2"), validation_error);

  CHECK_THROWS_AS(parse("delay,counts,filter\n"), validation_error);
  CHECK_THROWS_AS(parse("delay_ns,counts,filter_config\n0,1,parallel,extra\n"), validation_error);
  CHECK_THROWS_AS(parse("delay_ns,counts,filter_config\nabc,1,parallel\n"), validation_error);
}

TEST_CASE("filter tokens round-trip") {
  CHECK(FilterConfig::parse("deg:30").angle_rad == doctest::Approx(math::to_radians(30)));
  CHECK(FilterConfig::parse("parallel").to_string() == "parallel");
  CHECK(FilterConfig::parse("nopol").to_string() == "nopol");
  CHECK(FilterConfig::parse("deg:45").to_string() == "deg:45");
  CHECK_THROWS_AS(FilterConfig::parse("deg:abc"), validation_error);
}

TEST_CASE("background subtraction on the cascade histogram") {
  const auto records = parse(kCascadeHistogram);
  const auto nets = reanalysis::subtract_background(records, 40.0);
  const double parallel = find_net(nets, FilterConfig::Kind::parallel);
  const double orthogonal = find_net(nets, FilterConfig::Kind::orthogonal);
  CHECK(parallel == 100.0);
  CHECK(orthogonal == 30.0);

  const auto report = reanalysis::report_from_nets(parallel, orthogonal);
  CHECK(report.ratio == doctest::Approx(0.30).epsilon(1e-12));
  CHECK(report.ratio_sigma == doctest::Approx(sigma_oracle(30.0, 100.0)).epsilon(1e-12));
  CHECK(report.ratio_sigma == doctest::Approx(0.0625).epsilon(2e-2));
  // Within one sigma of 1/3.
  CHECK(std::abs(report.ratio - 1.0 / 3.0) < report.ratio_sigma);
  CHECK(report.consistent_one_third);
}

TEST_CASE("zero background returns the raw peaks") {
  const auto nets = reanalysis::subtract_background(parse(kCascadeHistogram), 0.0);
  CHECK(find_net(nets, FilterConfig::Kind::parallel) == 140.0);
  CHECK(find_net(nets, FilterConfig::Kind::orthogonal) == 70.0);
}

TEST_CASE("background above every peak clamps to zero with a flag") {
  const auto nets = reanalysis::subtract_background(parse(kCascadeHistogram), 500.0);
  for (const auto& net : nets) {
    CHECK(net.net == 0.0);
    CHECK(net.clamped);
  }
}

TEST_CASE("a featureless histogram has no identifiable peak") {
  const char* flat =
      "delay_ns,counts,filter_config\n"
      "0,40,parallel\n"
      "1,41,parallel\n"
      "2,39,parallel\n"
      "3,40,parallel\n";
  CHECK_THROWS_AS(reanalysis::subtract_background(parse(flat), 10.0), validation_error);
}

TEST_CASE("single-row groups act as directly entered peak values") {
  const auto nets = reanalysis::subtract_background(
      parse("delay_ns,counts,filter_config\n0,140,parallel\n0,70,orthogonal\n"), 40.0);
  CHECK(find_net(nets, FilterConfig::Kind::parallel) == 100.0);
  CHECK(find_net(nets, FilterConfig::Kind::orthogonal) == 30.0);
}

TEST_CASE("raising the background never raises a net") {
  oracles::TestRng rng(401);
  const auto records = parse(kCascadeHistogram);
  double previous_parallel = 1e300;
  for (double background : {0.0, 10.0, 40.0, 60.0, 139.0, 200.0}) {
    const auto nets = reanalysis::subtract_background(records, background);
    const double parallel = find_net(nets, FilterConfig::Kind::parallel);
    CHECK(parallel <= previous_parallel);
    previous_parallel = parallel;
  }
  CHECK_THROWS_AS(reanalysis::subtract_background(records, -1.0), validation_error);
}

TEST_CASE("reported ratios are invariant under count rescaling") {
  for (double scale : {2.0, 7.0, 1000.0}) {
    const auto base = reanalysis::report_from_nets(100.0, 30.0);
    const auto scaled = reanalysis::report_from_nets(100.0 * scale, 30.0 * scale);
    CHECK(std::abs(base.ratio - scaled.ratio) < 1e-12);
  }
  // Through the histogram path with integer-scaled counts and background.
  std::string tripled = "delay_ns,counts,filter_config\n";
  for (const auto& record : parse(kCascadeHistogram)) {
    tripled += std::to_string(record.delay_ns) + "," + std::to_string(record.counts * 3) + "," +
               record.filter.to_string() + "\n";
  }
  const auto nets = reanalysis::subtract_background(parse(tripled), 120.0);
  const auto report = reanalysis::report_from_nets(find_net(nets, FilterConfig::Kind::parallel),
                                                   find_net(nets, FilterConfig::Kind::orthogonal));
  CHECK(std::abs(report.ratio - 0.30) < 1e-12);
}

TEST_CASE("no-polarizer rate re-split under an alternative accidental count") {
  const auto report = reanalysis::aspect_resplit(240.0, 90.0, 50.0);
  CHECK(report.net_parallel == 115.0);
  CHECK(report.net_orthogonal == 40.0);
  CHECK(report.ratio == doctest::Approx(40.0 / 115.0).epsilon(1e-12));
  CHECK(std::abs(report.ratio - 1.0 / 3.0) < report.ratio_sigma);
  CHECK(report.consistent_one_third);
}

TEST_CASE("alternative equal to claimed reproduces the published split") {
  const auto report = reanalysis::aspect_resplit(240.0, 90.0, 90.0);
  // All 150 published true coincidences pass at parallel with probability
  // one half; nothing remains at crossed analyzers.
  CHECK(report.net_parallel == 75.0);
  CHECK(report.net_orthogonal == 0.0);
  CHECK(report.ratio == 0.0);
  CHECK_FALSE(report.consistent_one_third);
}

TEST_CASE("treating none of the rate as accidental moves the whole floor") {
  const auto report = reanalysis::aspect_resplit(240.0, 90.0, 0.0);
  CHECK(report.net_parallel == 165.0);
  CHECK(report.net_orthogonal == 90.0);
  const double sigma = sigma_oracle(90.0, 165.0);
  CHECK(report.ratio_sigma == doctest::Approx(sigma).epsilon(1e-12));
  CHECK(report.consistent_one_third == (std::abs(report.ratio - 1.0 / 3.0) <= 3.0 * sigma));
}

TEST_CASE("re-split ordering preconditions") {
  CHECK_THROWS_AS(reanalysis::aspect_resplit(240.0, 90.0, 100.0), validation_error);
  CHECK_THROWS_AS(reanalysis::aspect_resplit(80.0, 90.0, 10.0), validation_error);
  CHECK_THROWS_AS(reanalysis::aspect_resplit(240.0, 90.0, -5.0), validation_error);
}

TEST_CASE("rate-model fit at the published net counts") {
  const auto fit = reanalysis::fit_ratio_model(100.0, 30.0);
  CHECK(fit.predicted_orthogonal == doctest::Approx(100.0 / 3.0).epsilon(1e-12));
  CHECK(fit.model.true_peak_rate == doctest::Approx(100.0 / 1.5).epsilon(1e-12));
  CHECK(fit.goodness_sigma ==
        doctest::Approx((30.0 - 100.0 / 3.0) / std::sqrt(30.0)).epsilon(1e-12));
  CHECK(std::abs(fit.goodness_sigma) == doctest::Approx(0.61).epsilon(2e-2));
  CHECK(fit.consistent);

  // The true part of the model predicts a 3:1 parallel/orthogonal split.
  const double parallel_rate = fit.model.true_peak_rate * 1.5;
  const double orthogonal_rate = fit.model.true_peak_rate * 0.5;
  CHECK(parallel_rate / orthogonal_rate == 3.0);
}

TEST_CASE("rate-model fit edge cases") {
  const auto exact = reanalysis::fit_ratio_model(120.0, 40.0);
  CHECK(exact.goodness_sigma == 0.0);
  CHECK(exact.consistent);

  const auto empty = reanalysis::fit_ratio_model(100.0, 0.0);
  CHECK(std::abs(empty.goodness_sigma) == doctest::Approx(5.8).epsilon(1e-2));
  CHECK_FALSE(empty.consistent);

  CHECK_THROWS_AS(reanalysis::fit_ratio_model(0.0, 10.0), validation_error);
  CHECK_THROWS_AS(reanalysis::fit_ratio_model(10.0, -1.0), validation_error);
}

}  // TEST_SUITE
