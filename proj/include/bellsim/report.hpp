#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

// Command front end: runs each experiment model, Monte Carlo verification,
// CHSH evaluation, splitter audits, interferometer sweeps, and data
// re-analysis, producing structured reports and plot-ready tables.
//
// All angles cross this boundary in degrees; modules receive radians.
// Reports echo their effective inputs, seed, and sample count, and
// re-running from the echoed values reproduces every byte.

namespace bellsim::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Hidden-variable quadrature resolution used for report cross-checks.
inline constexpr int kReportQuadratureNodes = 256;

enum class Command { singlet, cascade, chsh, downconv, interf, reanalyze };

Command command_from_name(const std::string& name);
std::string to_string(Command command);

enum class OutputFormat { table, json, csv };

OutputFormat format_from_name(const std::string& name);

/// A validated invocation: the command, its textual parameters (exactly as
/// supplied; run() parses, validates, and echoes effective values), and the
/// requested serialization.
struct RunConfig {
  Command command{Command::singlet};
  std::map<std::string, std::string> parameters;
  OutputFormat output_format{OutputFormat::table};
  /// Worker threads for sampling; 0 = auto. Never affects results, so it is
  /// not echoed in reports.
  unsigned threads{0};
};

/// Rows of a parameter sweep, one row per sweep point.
struct SweepTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Report {
  std::string command;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  nlohmann::ordered_json results = nlohmann::ordered_json::object();
  std::optional<SweepTable> table;
  std::uint64_t seed{0};     // 0 when the command draws no samples
  std::uint64_t samples{0};  // per-estimate sample count; 0 when closed-form only
  std::string version{kVersion};
};

/// Dispatch a validated config to its module and assemble the report.
/// Sampled results carry standard errors and a self-check flag comparing
/// them to the closed form at 4 sigma.
Report run(const RunConfig& config);

nlohmann::ordered_json to_json(const Report& report);

/// Serialize: json is a single object with stable field names and full
/// numeric fidelity; table/csv print numbers with 9 significant digits,
/// sweeps as one row per point with a header.
std::string emit(const Report& report, OutputFormat format);

/// Write to a file, or to stdout when path is empty.
void emit_to(const Report& report, OutputFormat format, const std::string& path);

}  // namespace bellsim::cli
