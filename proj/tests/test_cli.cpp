#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "bellsim/report.hpp"
#include "bellsim/vec3.hpp"

using namespace bellsim;
using cli::Command;
using cli::OutputFormat;
using cli::Report;
using cli::RunConfig;

namespace {

RunConfig config_of(Command command, std::map<std::string, std::string> parameters,
                    unsigned threads = 0) {
  RunConfig config;
  config.command = command;
  config.parameters = std::move(parameters);
  config.threads = threads;
  return config;
}

// Rebuild a RunConfig from a report's echoed inputs; the echo must be enough
// to reproduce the run bit for bit.
RunConfig config_from_echo(Command command, const Report& report) {
  RunConfig config;
  config.command = command;
  for (const auto& [key, value] : report.inputs.items()) {
    if (value.is_string()) {
      config.parameters[key] = value.get<std::string>();
    } else if (value.is_boolean()) {
      config.parameters[key] = value.get<bool>() ? "true" : "false";
    } else {
      config.parameters[key] = value.dump();
    }
  }
  return config;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("singlet run reports the closed form and a consistent estimate") {
  const Report report = cli::run(
      config_of(Command::singlet, {{"angle_deg", "0"}, {"mc", "1000000"}, {"seed", "7"}}));
  CHECK(report.command == "singlet");
  CHECK(report.results.at("closed_form").get<double>() == 1.0 / 6.0);
  const double mean = report.results.at("mc_mean").get<double>();
  const double stderr_mean = report.results.at("mc_stderr").get<double>();
  CHECK(std::abs(mean - 1.0 / 6.0) <= 4.0 * stderr_mean);
  CHECK(report.results.at("mc_consistent").get<bool>());
  CHECK(std::abs(report.results.at("quadrature").get<double>() - 1.0 / 6.0) < 1e-9);
  CHECK(report.seed == 7);
  CHECK(report.samples == 1'000'000);
}

TEST_CASE("cascade ratio run returns one third") {
  const Report report =
      cli::run(config_of(Command::cascade, {{"ratio", "true"}, {"mc", "200000"}}));
  CHECK(report.results.at("closed_ratio").get<double>() == 1.0 / 3.0);
  CHECK(report.results.at("ratio_consistent").get<bool>());
}

TEST_CASE("balanced-splitter audit through the front end") {
  const Report report = cli::run(config_of(
      Command::downconv,
      {{"alpha", "0.7071"}, {"beta", "0.7071"}, {"gamma", "0.7071"}, {"delta", "-0.7071"}}));
  CHECK(report.results.at("w1").get<double>() == 0.0);
  CHECK(report.results.at("w2").get<double>() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(report.results.at("unitary_sum").get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(report.results.at("unitary_splitter").get<bool>());
}

TEST_CASE("interferometer sweep emits one row per degree") {
  const Report report = cli::run(config_of(
      Command::interf,
      {{"sweep_from_deg", "0"}, {"sweep_to_deg", "180"}, {"sweep_step_deg", "1"}, {"r", "1"}}));
  REQUIRE(report.table.has_value());
  CHECK(report.table->columns == std::vector<std::string>{"phi_deg", "intensity"});
  CHECK(report.table->rows.size() == 181);
  CHECK(report.table->rows.front()[0] == 0.0);
  CHECK(report.table->rows.back()[0] == 180.0);
}

TEST_CASE("cascade sweep is monotone from 3/8 down to 1/8") {
  const Report report = cli::run(config_of(
      Command::cascade,
      {{"sweep_from_deg", "0"}, {"sweep_to_deg", "90"}, {"sweep_step_deg", "1"}}));
  REQUIRE(report.table.has_value());
  REQUIRE(report.table->rows.size() == 91);
  CHECK(report.table->rows.front()[1] == 0.375);
  CHECK(report.table->rows.back()[1] == 0.125);
  for (std::size_t i = 1; i < report.table->rows.size(); ++i) {
    CHECK(report.table->rows[i][1] <= report.table->rows[i - 1][1] + 1e-15);
  }
}

TEST_CASE("json emission round-trips every numeric field") {
  const Report report = cli::run(
      config_of(Command::singlet, {{"angle_deg", "33.7"}, {"mc", "10000"}, {"seed", "5"}}));
  const std::string text = cli::emit(report, OutputFormat::json);
  const auto parsed = nlohmann::ordered_json::parse(text);
  for (const auto& [key, value] : report.results.items()) {
    if (value.is_number_float()) {
      CHECK(parsed.at("results").at(key).get<double>() == value.get<double>());
    }
  }
  CHECK(parsed.at("provenance").at("seed").get<std::uint64_t>() == 5);
  CHECK(parsed.at("inputs").at("angle_deg").get<double>() == 33.7);
}

TEST_CASE("identical configs produce byte-identical json") {
  const auto config = config_of(Command::singlet, {{"angle_deg", "20"}, {"mc", "200000"},
                                                   {"seed", "9"}});
  const std::string first = cli::emit(cli::run(config), OutputFormat::json);
  const std::string second = cli::emit(cli::run(config), OutputFormat::json);
  CHECK(first == second);
}

TEST_CASE("thread count never changes the bytes") {
  const auto base = config_of(Command::singlet, {{"mc", "300000"}, {"seed", "3"}}, 1);
  const auto more = config_of(Command::singlet, {{"mc", "300000"}, {"seed", "3"}}, 4);
  CHECK(cli::emit(cli::run(base), OutputFormat::json) ==
        cli::emit(cli::run(more), OutputFormat::json));
}

TEST_CASE("a report reruns bit-identically from its own echo") {
  const auto config = config_of(Command::cascade, {{"angle_deg", "17.3"}, {"mc", "150000"},
                                                   {"seed", "21"}});
  const Report report = cli::run(config);
  const RunConfig echoed = config_from_echo(Command::cascade, report);
  CHECK(cli::emit(cli::run(echoed), OutputFormat::json) == cli::emit(report, OutputFormat::json));
}

TEST_CASE("angles cross the boundary in degrees and round-trip") {
  CHECK(math::to_degrees(math::to_radians(360.0)) == 360.0);
  CHECK(math::to_degrees(math::to_radians(12.34)) == 12.34);

  const Report at_zero = cli::run(config_of(Command::singlet, {{"mc", "10000"}}));
  const Report at_360 = cli::run(config_of(Command::singlet, {{"angle_deg", "360"},
                                                              {"mc", "10000"}}));
  CHECK(at_360.inputs.at("angle_deg").get<double>() == 360.0);
  CHECK(std::abs(at_zero.results.at("closed_form").get<double>() -
                 at_360.results.at("closed_form").get<double>()) < 1e-12);
}

TEST_CASE("tables and csv print nine significant digits") {
  const Report report = cli::run(config_of(Command::singlet, {{"mc", "10000"}}));
  const std::string table = cli::emit(report, OutputFormat::table);
  CHECK(table.find("closed_form = 0.166666667") != std::string::npos);
  const std::string csv = cli::emit(report, OutputFormat::csv);
  CHECK(csv.rfind("field,value\n", 0) == 0);
  CHECK(csv.find("closed_form,0.166666667") != std::string::npos);

  const Report sweep = cli::run(config_of(
      Command::cascade,
      {{"sweep_from_deg", "0"}, {"sweep_to_deg", "2"}, {"sweep_step_deg", "1"}}));
  const std::string sweep_csv = cli::emit(sweep, OutputFormat::csv);
  CHECK(sweep_csv.rfind("phi_deg,probability\n", 0) == 0);
}

TEST_CASE("validation failures name the offending parameter") {
  CHECK_THROWS_WITH_AS(cli::run(config_of(Command::singlet, {{"angel_deg", "0"}})),
                       doctest::Contains("angel_deg"), validation_error);
  CHECK_THROWS_WITH_AS(cli::run(config_of(Command::singlet, {{"mc", "ten"}})),
                       doctest::Contains("mc"), validation_error);
  CHECK_THROWS_WITH_AS(
      cli::run(config_of(Command::singlet, {{"estimator", "fancy"}})),
      doctest::Contains("estimator"), validation_error);
  CHECK_THROWS_AS(
      cli::run(config_of(Command::chsh, {{"model", "signs"}, {"scan", "16"}})),
      validation_error);
  CHECK_THROWS_AS(cli::run(config_of(Command::chsh, {{"model", "qm"}, {"mc", "1000"}})),
                  validation_error);
  CHECK_THROWS_AS(
      cli::run(config_of(Command::chsh, {{"model", "qm"}, {"scan", "16"},
                                         {"angles_deg", "0,90,45,135"}})),
      validation_error);
  CHECK_THROWS_AS(
      cli::run(config_of(Command::cascade, {{"sweep_from_deg", "0"}, {"sweep_to_deg", "90"},
                                            {"sweep_step_deg", "1"}, {"ratio", "true"}})),
      validation_error);
  CHECK_THROWS_AS(
      cli::run(config_of(Command::interf, {{"sweep_from_deg", "0"}, {"sweep_to_deg", "90"},
                                           {"sweep_step_deg", "1e-9"}})),
      validation_error);
  CHECK_THROWS_AS(
      cli::run(config_of(Command::cascade, {{"sweep_from_deg", "10"}, {"sweep_to_deg", "0"},
                                            {"sweep_step_deg", "1"}})),
      validation_error);
  CHECK_THROWS_AS(cli::run(config_of(Command::reanalyze, {})), validation_error);
  CHECK_THROWS_AS(
      cli::run(config_of(Command::reanalyze, {{"input", "x.csv"}, {"total", "1"}})),
      validation_error);
  CHECK_THROWS_AS(
      cli::run(config_of(Command::downconv, {{"alpha", "1"}, {"beta", "1"}, {"gamma", "1"},
                                             {"delta", "0"}})),
      validation_error);
  CHECK_THROWS_WITH_AS(
      cli::run(config_of(Command::downconv, {{"alpha", "1"}, {"beta", "0"}, {"gamma", "1"}})),
      doctest::Contains("delta"), validation_error);
}

TEST_CASE("chsh front end covers the three correlators") {
  const Report qm = cli::run(config_of(Command::chsh, {{"model", "qm"}}));
  CHECK(std::abs(qm.results.at("s_abs").get<double>() - 2.0 * std::sqrt(2.0)) < 1e-12);
  CHECK(qm.results.at("classification").get<std::string>() == "at-quantum-maximum");

  // Explicit axis angles; 45-degree spacing shifted by a global rotation
  // gives the same |S|.
  const Report rotated =
      cli::run(config_of(Command::chsh, {{"model", "qm"}, {"angles_deg", "10,100,55,145"}}));
  CHECK(std::abs(rotated.results.at("s_abs").get<double>() - 2.0 * std::sqrt(2.0)) < 1e-12);
  CHECK_THROWS_WITH_AS(
      cli::run(config_of(Command::chsh, {{"model", "qm"}, {"angles_deg", "0,90,45"}})),
      doctest::Contains("angles_deg"), validation_error);

  const Report lhv = cli::run(config_of(Command::chsh, {{"model", "lhv"}}));
  CHECK(std::abs(lhv.results.at("s_abs").get<double>() - 2.0 * std::sqrt(2.0) / 3.0) < 1e-12);

  const Report signs =
      cli::run(config_of(Command::chsh, {{"model", "signs"}, {"mc", "100000"}, {"seed", "2"}}));
  CHECK(signs.results.at("s_abs").get<double>() <=
        2.0 + 4.0 * signs.results.at("uncertainty").get<double>());

  const Report scan = cli::run(config_of(Command::chsh, {{"model", "qm"}, {"scan", "90"}}));
  CHECK(scan.results.at("s_abs").get<double>() >= 2.0 * std::sqrt(2.0) - 1e-2);
  CHECK(scan.results.contains("a_deg"));
}

TEST_CASE("reanalyze front end reads histograms and re-splits rates") {
  const std::string path = "cli_test_histogram.csv";
  {
    std::ofstream out(path);
    out << "delay_ns,counts,filter_config\n"
        << "0,140,parallel\n0,70,orthogonal\n";
  }
  const Report histogram = cli::run(config_of(
      Command::reanalyze, {{"input", path}, {"background", "40"}}));
  CHECK(histogram.results.at("net_parallel").get<double>() == 100.0);
  CHECK(histogram.results.at("net_orthogonal").get<double>() == 30.0);
  CHECK(histogram.results.at("ratio").get<double>() == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(histogram.results.at("consistent_one_third").get<bool>());

  const Report net_peaks = cli::run(config_of(
      Command::reanalyze, {{"input", path}, {"net_peaks", "true"}}));
  CHECK(net_peaks.results.at("net_parallel").get<double>() == 140.0);
  CHECK(net_peaks.results.at("ratio").get<double>() == 0.5);

  std::remove(path.c_str());
  CHECK_THROWS_AS(
      cli::run(config_of(Command::reanalyze, {{"input", "does_not_exist.csv"}})),
      io_error);

  const Report resplit = cli::run(config_of(
      Command::reanalyze, {{"total", "240"}, {"claimed", "90"}, {"alt", "50"}}));
  CHECK(resplit.results.at("net_parallel").get<double>() == 115.0);
  CHECK(resplit.results.at("net_orthogonal").get<double>() == 40.0);
}

TEST_CASE("writing to an impossible path raises an io error") {
  const Report report = cli::run(config_of(Command::chsh, {{"model", "qm"}}));
  CHECK_THROWS_AS(cli::emit_to(report, OutputFormat::json, "no_such_dir/report.json"), io_error);
}

TEST_CASE("command and format names parse") {
  CHECK(cli::command_from_name("interf") == Command::interf);
  CHECK_THROWS_AS(cli::command_from_name("bogus"), validation_error);
  CHECK(cli::format_from_name("csv") == OutputFormat::csv);
  CHECK_THROWS_AS(cli::format_from_name("yaml"), validation_error);
}

}  // TEST_SUITE
