#include "bellsim/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "bellsim/chsh.hpp"
#include "bellsim/downconversion.hpp"
#include "bellsim/interferometer.hpp"
#include "bellsim/models.hpp"
#include "bellsim/montecarlo.hpp"
#include "bellsim/reanalysis.hpp"
#include "bellsim/vec3.hpp"

namespace bellsim::cli {

namespace {

using nlohmann::ordered_json;

// --------------------------------------------------------------------------
// Parameter access

class Params {
 public:
  Params(const std::map<std::string, std::string>& map,
         std::initializer_list<const char*> allowed)
      : map_(map) {
    std::set<std::string> known(allowed.begin(), allowed.end());
    for (const auto& [key, value] : map_) {
      (void)value;
      if (known.find(key) == known.end()) {
        throw validation_error("unknown parameter '" + key + "'");
      }
    }
  }

  bool has(const std::string& key) const { return map_.find(key) != map_.end(); }

  double number(const std::string& key, double fallback) const {
    const auto it = map_.find(key);
    if (it == map_.end()) return fallback;
    try {
      std::size_t used = 0;
      const double v = std::stod(it->second, &used);
      if (used != it->second.size() || !std::isfinite(v)) throw std::invalid_argument(it->second);
      return v;
    } catch (const std::exception&) {
      throw validation_error("parameter '" + key + "': cannot parse '" + it->second +
                             "' as a number");
    }
  }

  std::uint64_t count(const std::string& key, std::uint64_t fallback) const {
    const auto it = map_.find(key);
    if (it == map_.end()) return fallback;
    std::uint64_t v = 0;
    const auto* first = it->second.data();
    const auto* last = first + it->second.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
      throw validation_error("parameter '" + key + "': cannot parse '" + it->second +
                             "' as a nonnegative integer");
    }
    return v;
  }

  bool flag(const std::string& key) const {
    const auto it = map_.find(key);
    if (it == map_.end()) return false;
    if (it->second == "true" || it->second == "1") return true;
    if (it->second == "false" || it->second == "0") return false;
    throw validation_error("parameter '" + key + "': expected a boolean, got '" + it->second +
                           "'");
  }

  std::string text(const std::string& key, const std::string& fallback) const {
    const auto it = map_.find(key);
    return it == map_.end() ? fallback : it->second;
  }

 private:
  const std::map<std::string, std::string>& map_;
};

math::cplx parse_complex(const Params& params, const std::string& key) {
  if (!params.has(key)) {
    throw validation_error("parameter '" + key + "' is required");
  }
  const std::string raw = params.text(key, "");
  const auto comma = raw.find(',');
  try {
    if (comma == std::string::npos) {
      std::size_t used = 0;
      const double re = std::stod(raw, &used);
      if (used != raw.size()) throw std::invalid_argument(raw);
      return math::cplx(re, 0.0);
    }
    std::size_t used = 0;
    const std::string re_text = raw.substr(0, comma);
    const std::string im_text = raw.substr(comma + 1);
    const double re = std::stod(re_text, &used);
    if (used != re_text.size()) throw std::invalid_argument(raw);
    const double im = std::stod(im_text, &used);
    if (used != im_text.size()) throw std::invalid_argument(raw);
    return math::cplx(re, im);
  } catch (const std::exception&) {
    throw validation_error("parameter '" + key + "': expected 're' or 're,im', got '" + raw +
                           "'");
  }
}

std::vector<double> parse_number_list(const Params& params, const std::string& key,
                                      const std::string& fallback, std::size_t expected) {
  const std::string raw = params.text(key, fallback);
  std::vector<double> values;
  std::stringstream stream(raw);
  std::string cell;
  while (std::getline(stream, cell, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw validation_error("parameter '" + key + "': cannot parse '" + cell + "' as a number");
    }
  }
  if (values.size() != expected) {
    throw validation_error("parameter '" + key + "': expected " + std::to_string(expected) +
                           " comma-separated numbers");
  }
  return values;
}

mc::EstimateOptions estimate_options(const Params& params, unsigned threads) {
  mc::EstimateOptions options;
  options.threads = threads;
  const std::string name = params.text("estimator", "product");
  if (name == "product") {
    options.estimator = mc::Estimator::product_mean;
  } else if (name == "bernoulli") {
    options.estimator = mc::Estimator::double_bernoulli;
  } else {
    throw validation_error("parameter 'estimator': expected 'product' or 'bernoulli', got '" +
                           name + "'");
  }
  return options;
}

struct SweepSpec {
  double from_deg, to_deg, step_deg;
};

std::optional<SweepSpec> sweep_spec(const Params& params) {
  const bool any = params.has("sweep_from_deg") || params.has("sweep_to_deg") ||
                   params.has("sweep_step_deg");
  if (!any) return std::nullopt;
  if (!(params.has("sweep_from_deg") && params.has("sweep_to_deg") &&
        params.has("sweep_step_deg"))) {
    throw validation_error("sweep needs all of sweep_from_deg, sweep_to_deg, sweep_step_deg");
  }
  SweepSpec spec{params.number("sweep_from_deg", 0.0), params.number("sweep_to_deg", 0.0),
                 params.number("sweep_step_deg", 0.0)};
  if (!(spec.step_deg > 0.0) || spec.to_deg < spec.from_deg) {
    throw validation_error("parameter 'sweep_step_deg': need step > 0 and to >= from");
  }
  return spec;
}

std::vector<double> sweep_points(const SweepSpec& spec) {
  if ((spec.to_deg - spec.from_deg) / spec.step_deg > 1e6) {
    throw validation_error("parameter 'sweep_step_deg': sweep would exceed a million rows");
  }
  std::vector<double> points;
  // Inclusive endpoint, tolerant of rounding in from + k*step.
  const double limit = spec.to_deg + 1e-9 * std::max(1.0, std::abs(spec.to_deg));
  for (std::uint64_t k = 0;; ++k) {
    const double value = spec.from_deg + static_cast<double>(k) * spec.step_deg;
    if (value > limit) break;
    points.push_back(value);
  }
  return points;
}

// Sweep mode replaces the point evaluation; reject point-only parameters so
// nothing is silently ignored.
void reject_in_sweep(const Params& params, std::initializer_list<const char*> keys) {
  for (const char* key : keys) {
    if (params.has(key)) {
      throw validation_error(std::string("parameter '") + key +
                             "' does not apply to a sweep");
    }
  }
}

bool self_check(double sampled, double reference, double sigma) {
  return std::abs(sampled - reference) <= 4.0 * sigma;
}

// --------------------------------------------------------------------------
// Command handlers

Report run_singlet(const Params& params, unsigned threads) {
  const double angle_deg = params.number("angle_deg", 0.0);
  const bool ratio_mode = params.flag("ratio");
  const std::uint64_t n = params.count("mc", 1'000'000);
  const mc::Seed seed{params.count("seed", 0)};
  const mc::EstimateOptions options = estimate_options(params, threads);

  Report report;
  report.command = "singlet";
  report.seed = seed.value;
  report.samples = n;
  report.inputs["angle_deg"] = angle_deg;
  report.inputs["ratio"] = ratio_mode;
  report.inputs["mc"] = n;
  report.inputs["seed"] = seed.value;
  report.inputs["estimator"] = params.text("estimator", "product");

  const models::AnalyzerPair pair{math::UnitVector3::planar(0.0),
                                  math::UnitVector3::planar(math::to_radians(angle_deg))};

  const double closed = models::singlet_coincidence_closed(pair);
  const double quad = mc::quadrature(
      [&pair](const mc::HiddenDirection& hidden) {
        return models::singlet_coincidence_integrand(hidden.as_direction(), pair);
      },
      mc::HiddenDomain::sphere, kReportQuadratureNodes);
  const mc::SampleStats stats = mc::estimate_probability(models::singlet_model(pair), n, seed, options);

  report.results["closed_form"] = closed;
  report.results["quadrature"] = quad;
  report.results["mc_mean"] = stats.mean;
  report.results["mc_stderr"] = stats.std_error;
  report.results["mc_consistent"] = self_check(stats.mean, closed, stats.std_error);

  if (ratio_mode) {
    const models::AnalyzerPair parallel{math::UnitVector3::z_axis(), math::UnitVector3::z_axis()};
    const models::AnalyzerPair antiparallel{math::UnitVector3::z_axis(),
                                            -math::UnitVector3::z_axis()};
    const mc::SampleStats top = mc::estimate_probability(models::singlet_model(parallel), n,
                                                         mc::derive_seed(seed, 1), options);
    const mc::SampleStats bottom = mc::estimate_probability(models::singlet_model(antiparallel), n,
                                                            mc::derive_seed(seed, 2), options);
    const mc::ValueWithError ratio = mc::ratio_with_error(top, bottom);
    const double closed_ratio = models::singlet_ratio_test();
    report.results["closed_ratio"] = closed_ratio;
    report.results["mc_ratio"] = ratio.value;
    report.results["mc_ratio_sigma"] = ratio.sigma;
    report.results["ratio_consistent"] = self_check(ratio.value, closed_ratio, ratio.sigma);
  }
  return report;
}

Report run_cascade(const Params& params, unsigned threads) {
  const double angle_deg = params.number("angle_deg", 0.0);
  const bool ratio_mode = params.flag("ratio");
  const std::uint64_t n = params.count("mc", 1'000'000);
  const mc::Seed seed{params.count("seed", 0)};
  const mc::EstimateOptions options = estimate_options(params, threads);
  const std::optional<SweepSpec> sweep = sweep_spec(params);

  Report report;
  report.command = "cascade";

  if (sweep) {
    reject_in_sweep(params, {"angle_deg", "ratio", "mc", "seed", "estimator"});
    report.inputs["sweep_from_deg"] = sweep->from_deg;
    report.inputs["sweep_to_deg"] = sweep->to_deg;
    report.inputs["sweep_step_deg"] = sweep->step_deg;
    SweepTable table;
    table.columns = {"phi_deg", "probability"};
    for (double deg : sweep_points(*sweep)) {
      const auto pair = models::PhotonAnalyzerPair::of(math::to_radians(deg));
      table.rows.push_back({deg, models::cascade_coincidence_closed(pair)});
    }
    report.table = std::move(table);
    return report;
  }

  report.seed = seed.value;
  report.samples = n;
  report.inputs["angle_deg"] = angle_deg;
  report.inputs["ratio"] = ratio_mode;
  report.inputs["mc"] = n;
  report.inputs["seed"] = seed.value;
  report.inputs["estimator"] = params.text("estimator", "product");

  const auto pair = models::PhotonAnalyzerPair::of(math::to_radians(angle_deg));
  const double closed = models::cascade_coincidence_closed(pair);
  const double quad = mc::quadrature(
      [&pair](const mc::HiddenDirection& hidden) {
        return models::cascade_coincidence_integrand(hidden.as_angle(), pair);
      },
      mc::HiddenDomain::circle, kReportQuadratureNodes);
  const mc::SampleStats stats = mc::estimate_probability(models::cascade_model(pair), n, seed, options);

  report.results["closed_form"] = closed;
  report.results["predecay"] = models::cascade_predecay_probability(pair);
  report.results["quadrature"] = quad;
  report.results["mc_mean"] = stats.mean;
  report.results["mc_stderr"] = stats.std_error;
  report.results["mc_consistent"] = self_check(stats.mean, closed, stats.std_error);

  if (ratio_mode) {
    const auto parallel = models::PhotonAnalyzerPair::of(0.0);
    const auto orthogonal = models::PhotonAnalyzerPair::of(math::kPi / 2.0);
    const mc::SampleStats top = mc::estimate_probability(models::cascade_model(orthogonal), n,
                                                         mc::derive_seed(seed, 1), options);
    const mc::SampleStats bottom = mc::estimate_probability(models::cascade_model(parallel), n,
                                                            mc::derive_seed(seed, 2), options);
    const mc::ValueWithError ratio = mc::ratio_with_error(top, bottom);
    const double closed_ratio = models::cascade_ratio_test();
    report.results["closed_ratio"] = closed_ratio;
    report.results["mc_ratio"] = ratio.value;
    report.results["mc_ratio_sigma"] = ratio.sigma;
    report.results["ratio_consistent"] = self_check(ratio.value, closed_ratio, ratio.sigma);
  }
  return report;
}

double axis_degrees(const math::UnitVector3& axis) {
  double deg = math::to_degrees(std::atan2(axis.y, axis.x));
  if (deg < 0.0) deg += 360.0;
  return deg;
}

Report run_chsh(const Params& params, unsigned threads) {
  const std::string model = params.text("model", "qm");
  const std::vector<double> angles = parse_number_list(params, "angles_deg", "0,90,45,135", 4);
  const std::uint64_t n = params.count("mc", 1'000'000);
  const mc::Seed seed{params.count("seed", 0)};
  const int scan = static_cast<int>(params.count("scan", 0));

  Report report;
  report.command = "chsh";
  report.inputs["model"] = model;

  chsh::Correlator correlator;
  bool sampled = false;
  if (model == "qm" || model == "lhv") {
    for (const char* key : {"mc", "seed"}) {
      if (params.has(key)) {
        throw validation_error(std::string("parameter '") + key +
                               "' applies only to the sampled 'signs' model");
      }
    }
  }
  if (model == "qm") {
    correlator = chsh::qm_singlet_correlator();
  } else if (model == "lhv") {
    correlator = chsh::lhv_singlet_correlator();
  } else if (model == "signs") {
    sampled = true;
    mc::EstimateOptions options;
    options.threads = threads;
    correlator = chsh::sampled_sign_correlator(n, seed, options);
  } else {
    throw validation_error("parameter 'model': expected 'qm', 'lhv' or 'signs', got '" + model +
                           "'");
  }

  chsh::ChshResult result;
  if (scan > 0) {
    if (sampled) {
      throw validation_error("parameter 'scan': grid scans need a closed-form model (qm or lhv)");
    }
    if (params.has("angles_deg")) {
      throw validation_error("parameter 'angles_deg': a grid scan chooses its own axes");
    }
    report.inputs["scan"] = scan;
    result = chsh::chsh_scan(correlator, scan);
    report.results["a_deg"] = axis_degrees(result.settings.a);
    report.results["a_prime_deg"] = axis_degrees(result.settings.a_prime);
    report.results["b_deg"] = axis_degrees(result.settings.b);
    report.results["b_prime_deg"] = axis_degrees(result.settings.b_prime);
  } else {
    report.inputs["angles_deg"] = params.text("angles_deg", "0,90,45,135");
    if (sampled) {
      report.inputs["mc"] = n;
      report.inputs["seed"] = seed.value;
      report.seed = seed.value;
      report.samples = n;
    }
    result = chsh::chsh_value(
        correlator, chsh::ChshSettings::planar(math::to_radians(angles[0]),
                                               math::to_radians(angles[1]),
                                               math::to_radians(angles[2]),
                                               math::to_radians(angles[3])));
  }

  report.results["s_value"] = result.s_value;
  report.results["s_abs"] = std::abs(result.s_value);
  report.results["term_ab"] = result.terms[0].value;
  report.results["term_ab_prime"] = result.terms[1].value;
  report.results["term_a_prime_b"] = result.terms[2].value;
  report.results["term_a_prime_b_prime"] = result.terms[3].value;
  report.results["uncertainty"] = result.uncertainty;
  report.results["classification"] = std::string(chsh::to_string(result.classification));
  return report;
}

Report run_downconv(const Params& params) {
  Report report;
  report.command = "downconv";

  const math::cplx alpha = parse_complex(params, "alpha");
  const math::cplx beta = parse_complex(params, "beta");
  const math::cplx gamma = parse_complex(params, "gamma");
  const math::cplx delta = parse_complex(params, "delta");

  report.inputs["alpha"] = params.text("alpha", "");
  report.inputs["beta"] = params.text("beta", "");
  report.inputs["gamma"] = params.text("gamma", "");
  report.inputs["delta"] = params.text("delta", "");

  // Accept inputs normalized to short decimals (e.g. 0.7071), then rescale
  // exactly so the audit identities hold to full precision.
  const double row_a = std::norm(alpha) + std::norm(beta);
  const double row_b = std::norm(gamma) + std::norm(delta);
  if (std::abs(row_a - 1.0) > 1e-3 || std::abs(row_b - 1.0) > 1e-3) {
    throw validation_error("parameters alpha..delta: |alpha|^2+|beta|^2 and |gamma|^2+|delta|^2 "
                           "must equal 1 within 1e-3");
  }
  const auto amps = downconv::SplitterAmplitudes::normalized(alpha, beta, gamma, delta);
  const downconv::CountingAudit audit = downconv::audit(amps);

  report.results["w1"] = audit.w1;
  report.results["w2"] = audit.w2;
  report.results["same_detector"] = audit.same_detector;
  report.results["unitary_sum"] = audit.unitary_sum;
  report.results["interference_defect"] = audit.interference_defect;
  report.results["unitary_splitter"] = amps.unitary_splitter();
  return report;
}

Report run_interf(const Params& params) {
  const double amp2 = params.number("amp2", 1.0);
  const double r = params.number("r", 1.0);
  const double vartheta_deg = params.number("vartheta_deg", 0.0);
  const double phi_deg = params.number("phi_deg", 0.0);
  const std::optional<SweepSpec> sweep = sweep_spec(params);

  Report report;
  report.command = "interf";
  report.inputs["amp2"] = amp2;
  report.inputs["r"] = r;
  report.inputs["vartheta_deg"] = vartheta_deg;

  const double vartheta = math::to_radians(vartheta_deg);

  if (sweep) {
    reject_in_sweep(params, {"phi_deg"});
    report.inputs["sweep_from_deg"] = sweep->from_deg;
    report.inputs["sweep_to_deg"] = sweep->to_deg;
    report.inputs["sweep_step_deg"] = sweep->step_deg;
    SweepTable table;
    table.columns = {"phi_deg", "intensity"};
    for (double deg : sweep_points(*sweep)) {
      const auto config =
          interf::InterferometerConfig::of(amp2, r, vartheta, math::to_radians(deg));
      table.rows.push_back({deg, interf::detector_intensity(config)});
    }
    report.table = std::move(table);
    return report;
  }

  report.inputs["phi_deg"] = phi_deg;
  const auto config = interf::InterferometerConfig::of(amp2, r, vartheta, math::to_radians(phi_deg));
  const interf::BlochState bloch = interf::recombined_bloch(config);
  report.results["b_x"] = bloch.b.x;
  report.results["b_y"] = bloch.b.y;
  report.results["b_z"] = bloch.b.z;
  report.results["norm_sq"] = bloch.norm_sq;
  report.results["intensity"] = interf::detector_intensity(config);
  report.results["visibility"] = interf::visibility(r, vartheta);
  return report;
}

Report run_reanalyze(const Params& params) {
  Report report;
  report.command = "reanalyze";

  const bool histogram_mode = params.has("input");
  const bool aspect_mode = params.has("total") || params.has("claimed") || params.has("alt");
  if (histogram_mode == aspect_mode) {
    throw validation_error(
        "reanalyze: provide either 'input' (+ optional 'background') or all of "
        "'total', 'claimed', 'alt'");
  }

  reanalysis::ReanalysisReport result;
  if (histogram_mode) {
    const std::string path = params.text("input", "");
    const double background = params.number("background", 0.0);
    const bool net_peaks = params.flag("net_peaks");
    if (net_peaks && params.has("background")) {
      throw validation_error("parameter 'net_peaks': peaks are already net; drop 'background'");
    }
    report.inputs["input"] = path;
    report.inputs["background"] = background;
    report.inputs["net_peaks"] = net_peaks;

    const auto records = reanalysis::load_histogram_file(path);
    const auto nets = reanalysis::subtract_background(records, net_peaks ? 0.0 : background);

    std::optional<double> net_parallel, net_orthogonal;
    for (const auto& net : nets) {
      if (net.filter.kind == reanalysis::FilterConfig::Kind::parallel) net_parallel = net.net;
      if (net.filter.kind == reanalysis::FilterConfig::Kind::orthogonal) net_orthogonal = net.net;
    }
    if (!net_parallel || !net_orthogonal) {
      throw validation_error(
          "reanalyze: histogram must contain both 'parallel' and 'orthogonal' rows");
    }
    result = reanalysis::report_from_nets(*net_parallel, *net_orthogonal);
  } else {
    if (!(params.has("total") && params.has("claimed") && params.has("alt"))) {
      throw validation_error("reanalyze: re-split needs all of 'total', 'claimed', 'alt'");
    }
    const double total = params.number("total", 0.0);
    const double claimed = params.number("claimed", 0.0);
    const double alt = params.number("alt", 0.0);
    report.inputs["total"] = total;
    report.inputs["claimed"] = claimed;
    report.inputs["alt"] = alt;
    result = reanalysis::aspect_resplit(total, claimed, alt);
  }

  report.results["net_parallel"] = result.net_parallel;
  report.results["net_orthogonal"] = result.net_orthogonal;
  report.results["ratio"] = result.ratio;
  report.results["ratio_sigma"] = result.ratio_sigma;
  report.results["consistent_one_third"] = result.consistent_one_third;
  return report;
}

// --------------------------------------------------------------------------
// Serialization

std::string format_number(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.9g", value);
  return buffer;
}

std::string format_scalar(const ordered_json& value) {
  if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<std::int64_t>());
  if (value.is_number_unsigned()) return std::to_string(value.get<std::uint64_t>());
  if (value.is_number_float()) return format_number(value.get<double>());
  return value.dump();
}

std::string emit_table(const Report& report) {
  std::ostringstream out;
  out << "command: " << report.command << "\n";
  if (!report.inputs.empty()) {
    out << "inputs:\n";
    for (const auto& [key, value] : report.inputs.items()) {
      out << "  " << key << " = " << format_scalar(value) << "\n";
    }
  }
  if (!report.results.empty()) {
    out << "results:\n";
    for (const auto& [key, value] : report.results.items()) {
      out << "  " << key << " = " << format_scalar(value) << "\n";
    }
  }
  if (report.table) {
    for (std::size_t c = 0; c < report.table->columns.size(); ++c) {
      out << (c ? "  " : "") << report.table->columns[c];
    }
    out << "\n";
    for (const auto& row : report.table->rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        out << (c ? "  " : "") << format_number(row[c]);
      }
      out << "\n";
    }
  }
  out << "provenance: seed=" << report.seed << " samples=" << report.samples
      << " version=" << report.version << "\n";
  return out.str();
}

std::string emit_csv(const Report& report) {
  std::ostringstream out;
  if (report.table) {
    for (std::size_t c = 0; c < report.table->columns.size(); ++c) {
      out << (c ? "," : "") << report.table->columns[c];
    }
    out << "\n";
    for (const auto& row : report.table->rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        out << (c ? "," : "") << format_number(row[c]);
      }
      out << "\n";
    }
    return out.str();
  }
  out << "field,value\n";
  for (const auto& [key, value] : report.results.items()) {
    out << key << "," << format_scalar(value) << "\n";
  }
  return out.str();
}

}  // namespace

Command command_from_name(const std::string& name) {
  if (name == "singlet") return Command::singlet;
  if (name == "cascade") return Command::cascade;
  if (name == "chsh") return Command::chsh;
  if (name == "downconv") return Command::downconv;
  if (name == "interf") return Command::interf;
  if (name == "reanalyze") return Command::reanalyze;
  throw validation_error("unknown command '" + name + "'");
}

std::string to_string(Command command) {
  switch (command) {
    case Command::singlet: return "singlet";
    case Command::cascade: return "cascade";
    case Command::chsh: return "chsh";
    case Command::downconv: return "downconv";
    case Command::interf: return "interf";
    case Command::reanalyze: return "reanalyze";
  }
  return "?";
}

OutputFormat format_from_name(const std::string& name) {
  if (name == "table") return OutputFormat::table;
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  throw validation_error("unknown output format '" + name + "'");
}

Report run(const RunConfig& config) {
  switch (config.command) {
    case Command::singlet: {
      const Params params(config.parameters,
                          {"angle_deg", "ratio", "mc", "seed", "estimator"});
      return run_singlet(params, config.threads);
    }
    case Command::cascade: {
      const Params params(config.parameters,
                          {"angle_deg", "ratio", "mc", "seed", "estimator", "sweep_from_deg",
                           "sweep_to_deg", "sweep_step_deg"});
      return run_cascade(params, config.threads);
    }
    case Command::chsh: {
      const Params params(config.parameters, {"model", "angles_deg", "mc", "seed", "scan"});
      return run_chsh(params, config.threads);
    }
    case Command::downconv: {
      const Params params(config.parameters, {"alpha", "beta", "gamma", "delta"});
      return run_downconv(params);
    }
    case Command::interf: {
      const Params params(config.parameters,
                          {"amp2", "r", "vartheta_deg", "phi_deg", "sweep_from_deg",
                           "sweep_to_deg", "sweep_step_deg"});
      return run_interf(params);
    }
    case Command::reanalyze: {
      const Params params(config.parameters,
                          {"input", "background", "net_peaks", "total", "claimed", "alt"});
      return run_reanalyze(params);
    }
  }
  throw validation_error("unknown command");
}

nlohmann::ordered_json to_json(const Report& report) {
  ordered_json doc = ordered_json::object();
  doc["command"] = report.command;
  doc["inputs"] = report.inputs;
  doc["results"] = report.results;
  if (report.table) {
    ordered_json table = ordered_json::object();
    table["columns"] = report.table->columns;
    table["rows"] = report.table->rows;
    doc["table"] = std::move(table);
  }
  ordered_json provenance = ordered_json::object();
  provenance["seed"] = report.seed;
  provenance["samples"] = report.samples;
  provenance["version"] = report.version;
  doc["provenance"] = std::move(provenance);
  return doc;
}

std::string emit(const Report& report, OutputFormat format) {
  switch (format) {
    case OutputFormat::json: return to_json(report).dump(2) + "\n";
    case OutputFormat::table: return emit_table(report);
    case OutputFormat::csv: return emit_csv(report);
  }
  throw validation_error("unknown output format");
}

void emit_to(const Report& report, OutputFormat format, const std::string& path) {
  const std::string text = emit(report, format);
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw io_error("cannot open output file '" + path + "'");
  out << text;
  if (!out) throw io_error("failed writing output file '" + path + "'");
}

}  // namespace bellsim::cli
