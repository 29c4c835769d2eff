// bellsim - EPR/Bell coincidence experiments: closed forms, seeded Monte
// Carlo verification, CHSH evaluation, beam-splitter audits, interferometer
// sweeps, and coincidence-count re-analysis.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "bellsim/errors.hpp"
#include "bellsim/report.hpp"

namespace {

using bellsim::cli::RunConfig;

struct StringOption {
  CLI::Option* option = nullptr;
  std::string value;
  bool is_flag = false;
};

// Registers a pass-through option; raw text goes to run() for parsing so the
// report echo stays canonical.
StringOption* add_param(CLI::App* cmd, std::map<std::string, StringOption>& sink,
                        const std::string& key, const std::string& flag,
                        const std::string& help) {
  auto& slot = sink[key];
  slot.option = cmd->add_option(flag, slot.value, help);
  return &slot;
}

void add_flag_param(CLI::App* cmd, std::map<std::string, StringOption>& sink,
                    const std::string& key, const std::string& flag, const std::string& help) {
  auto& slot = sink[key];
  slot.option = cmd->add_flag(flag, help);
  slot.is_flag = true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coincidence statistics of EPR/Bell experiments: quantum and "
               "hidden-direction predictions, seeded Monte Carlo checks, CHSH "
               "values, splitter audits, and count re-analysis"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", bellsim::cli::kVersion);
  app.set_config("--config", "", "Flat key = value config file; command options use "
                                 "'command.option=value' lines. Flags override the file.");

  std::string format_name = "table";
  std::string out_path;
  unsigned threads = 0;
  app.add_option("--format", format_name, "Output format: table, json, csv")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  app.add_option("--out", out_path, "Write the report to this file instead of stdout");
  app.add_option("--threads", threads, "Sampling worker threads (0 = auto); never affects results");

  std::map<CLI::App*, std::map<std::string, StringOption>> params;

  CLI::App* singlet = app.add_subcommand(
      "singlet", "Spin-1/2 pair coincidence: closed form, quadrature, Monte Carlo");
  add_param(singlet, params[singlet], "angle_deg", "--angle-deg",
            "Angle between the analyzers (degrees)");
  add_flag_param(singlet, params[singlet], "ratio", "--ratio",
                 "Also report the parallel/antiparallel coincidence ratio (1/2)");
  add_param(singlet, params[singlet], "mc", "--mc", "Monte Carlo sample count (default 1000000)");
  add_param(singlet, params[singlet], "seed", "--seed", "RNG seed (default 0)");
  add_param(singlet, params[singlet], "estimator", "--estimator",
            "Estimator: product (mean of probability products) or bernoulli "
            "(double coincidence counting)");

  CLI::App* cascade = app.add_subcommand(
      "cascade", "Cascade-photon coincidence: closed form, quadrature, Monte Carlo");
  add_param(cascade, params[cascade], "angle_deg", "--angle-deg",
            "Relative polarizer angle (degrees)");
  add_flag_param(cascade, params[cascade], "ratio", "--ratio",
                 "Also report the orthogonal/parallel coincidence ratio (1/3)");
  add_param(cascade, params[cascade], "mc", "--mc", "Monte Carlo sample count (default 1000000)");
  add_param(cascade, params[cascade], "seed", "--seed", "RNG seed (default 0)");
  add_param(cascade, params[cascade], "estimator", "--estimator",
            "Estimator: product or bernoulli");
  add_param(cascade, params[cascade], "sweep_from_deg", "--sweep-from",
            "Sweep start angle (degrees)");
  add_param(cascade, params[cascade], "sweep_to_deg", "--sweep-to", "Sweep end angle (degrees)");
  add_param(cascade, params[cascade], "sweep_step_deg", "--sweep-step",
            "Sweep step (degrees); emits a (phi_deg, probability) table");

  CLI::App* chsh = app.add_subcommand("chsh", "CHSH value S and its classification");
  add_param(chsh, params[chsh], "model", "--model",
            "Correlator: qm (-a·b), lhv (-a·b/3), signs (sampled sign model)");
  add_param(chsh, params[chsh], "angles_deg", "--angles-deg",
            "Four planar axis angles a,a',b,b' in degrees (default 0,90,45,135)");
  add_param(chsh, params[chsh], "mc", "--mc", "Samples per correlator term (signs model)");
  add_param(chsh, params[chsh], "seed", "--seed", "RNG seed (signs model)");
  add_param(chsh, params[chsh], "scan", "--scan",
            "Grid-search |S| with this many angles per setting (qm/lhv only)");

  CLI::App* downconv = app.add_subcommand(
      "downconv", "Two-photon beam-splitter coincidence statistics and counting audit");
  add_param(downconv, params[downconv], "alpha", "--alpha",
            "Photon A -> detector 1 amplitude ('re' or 're,im')");
  add_param(downconv, params[downconv], "beta", "--beta", "Photon A -> detector 2 amplitude");
  add_param(downconv, params[downconv], "gamma", "--gamma", "Photon B -> detector 1 amplitude");
  add_param(downconv, params[downconv], "delta", "--delta", "Photon B -> detector 2 amplitude");

  CLI::App* interf = app.add_subcommand(
      "interf", "Spin-path interferometer: Bloch vector, detector intensity, visibility");
  add_param(interf, params[interf], "amp2", "--amp2", "Overall intensity scale |A|^2");
  add_param(interf, params[interf], "r", "--r", "Relative path amplitude r >= 0");
  add_param(interf, params[interf], "vartheta_deg", "--vartheta-deg",
            "Phase-shifter phase (degrees)");
  add_param(interf, params[interf], "phi_deg", "--phi-deg", "Spin-rotator angle (degrees)");
  add_param(interf, params[interf], "sweep_from_deg", "--sweep-from",
            "Sweep start for the rotator angle (degrees)");
  add_param(interf, params[interf], "sweep_to_deg", "--sweep-to", "Sweep end (degrees)");
  add_param(interf, params[interf], "sweep_step_deg", "--sweep-step",
            "Sweep step (degrees); emits a (phi_deg, intensity) table");

  CLI::App* reanalyze = app.add_subcommand(
      "reanalyze", "Re-analyze coincidence counts against the 1/3 ratio prediction");
  add_param(reanalyze, params[reanalyze], "input", "--input",
            "CSV histogram with header delay_ns,counts,filter_config");
  add_param(reanalyze, params[reanalyze], "background", "--background",
            "Flat background level subtracted from each peak");
  add_flag_param(reanalyze, params[reanalyze], "net_peaks", "--net-peaks",
                 "Treat peak values as already background-subtracted");
  add_param(reanalyze, params[reanalyze], "total", "--total",
            "No-polarizer coincidence rate (re-split mode)");
  add_param(reanalyze, params[reanalyze], "claimed", "--claimed",
            "Accidental rate claimed by the published analysis");
  add_param(reanalyze, params[reanalyze], "alt", "--alt",
            "Alternative accidental rate; the remainder becomes an angle-independent floor");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  CLI::App* chosen = app.get_subcommands().front();

  RunConfig config;
  config.threads = threads;
  try {
    config.command = bellsim::cli::command_from_name(chosen->get_name());
    config.output_format = bellsim::cli::format_from_name(format_name);
    for (auto& [key, slot] : params[chosen]) {
      if (slot.option == nullptr || slot.option->count() == 0) continue;
      config.parameters[key] = slot.is_flag ? "true" : slot.value;
    }
    const bellsim::cli::Report report = bellsim::cli::run(config);
    bellsim::cli::emit_to(report, config.output_format, out_path);
  } catch (const bellsim::validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const bellsim::io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
