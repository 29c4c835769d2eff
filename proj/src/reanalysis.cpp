#include "bellsim/reanalysis.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

namespace bellsim::reanalysis {

namespace {

constexpr double kOneThird = 1.0 / 3.0;
constexpr double kConsistencySigmas = 3.0;

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void row_error(std::size_t row, const std::string& what) {
  throw validation_error("histogram row " + std::to_string(row) + ": " + what);
}

double ratio_sigma_from_counts(double numer, double denom) {
  // First-order propagation of sigma = sqrt(N) through numer/denom.
  const double d_numer = std::sqrt(std::max(0.0, numer)) / denom;
  const double d_denom = numer * std::sqrt(std::max(0.0, denom)) / (denom * denom);
  return std::sqrt(d_numer * d_numer + d_denom * d_denom);
}

}  // namespace

FilterConfig FilterConfig::parse(const std::string& token) {
  const std::string t = trim(token);
  if (t == "parallel") return FilterConfig{Kind::parallel, 0.0};
  if (t == "orthogonal") return FilterConfig{Kind::orthogonal, 0.0};
  if (t == "nopol") return FilterConfig{Kind::no_polarizers, 0.0};
  if (t.rfind("deg:", 0) == 0) {
    const std::string num = t.substr(4);
    try {
      std::size_t used = 0;
      const double deg = std::stod(num, &used);
      if (used != num.size() || !std::isfinite(deg)) throw std::invalid_argument(num);
      return FilterConfig{Kind::angle, math::to_radians(deg)};
    } catch (const std::exception&) {
      throw validation_error("unknown filter_config '" + t + "'");
    }
  }
  throw validation_error("unknown filter_config '" + t + "'");
}

std::string FilterConfig::to_string() const {
  switch (kind) {
    case Kind::parallel: return "parallel";
    case Kind::orthogonal: return "orthogonal";
    case Kind::no_polarizers: return "nopol";
    case Kind::angle: {
      std::ostringstream out;
      out << "deg:" << math::to_degrees(angle_rad);
      return out.str();
    }
  }
  return "?";
}

std::vector<CoincidenceRecord> load_histogram(std::istream& in) {
  std::vector<CoincidenceRecord> records;
  std::string line;
  std::size_t row = 0;

  if (!std::getline(in, line)) return records;  // empty input: empty table
  ++row;
  // Tolerate a UTF-8 byte-order mark on the header.
  if (line.size() >= 3 && line[0] == '\xef' && line[1] == '\xbb' && line[2] == '\xbf') {
    line = line.substr(3);
  }
  if (trim(line) != "delay_ns,counts,filter_config") {
    row_error(row, "expected header 'delay_ns,counts,filter_config'");
  }

  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;

    std::string cells[3];
    std::size_t cell = 0;
    std::string current;
    for (char c : line) {
      if (c == ',') {
        if (cell >= 2) row_error(row, "too many columns");
        cells[cell++] = current;
        current.clear();
      } else {
        current.push_back(c);
      }
    }
    if (cell != 2) row_error(row, "expected 3 comma-separated columns");
    cells[2] = current;

    CoincidenceRecord record;
    try {
      std::size_t used = 0;
      record.delay_ns = std::stod(trim(cells[0]), &used);
      if (used != trim(cells[0]).size()) throw std::invalid_argument(cells[0]);
    } catch (const std::exception&) {
      row_error(row, "cannot parse delay_ns '" + trim(cells[0]) + "'");
    }
    if (!std::isfinite(record.delay_ns)) row_error(row, "delay_ns must be finite");

    const std::string count_text = trim(cells[1]);
    if (!count_text.empty() && count_text[0] == '-') {
      row_error(row, "counts must be nonnegative, got '" + count_text + "'");
    }
    {
      std::uint64_t value = 0;
      const auto* first = count_text.data();
      const auto* last = first + count_text.size();
      const auto [ptr, ec] = std::from_chars(first, last, value);
      if (ec != std::errc() || ptr != last) {
        row_error(row, "cannot parse counts '" + count_text + "' as a nonnegative integer");
      }
      record.counts = value;
    }

    try {
      record.filter = FilterConfig::parse(cells[2]);
    } catch (const validation_error& e) {
      row_error(row, e.what());
    }
    records.push_back(record);
  }
  return records;
}

std::vector<CoincidenceRecord> load_histogram_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open histogram file '" + path + "'");
  return load_histogram(in);
}

std::vector<NetPeak> subtract_background(const std::vector<CoincidenceRecord>& records,
                                         double background_level) {
  if (!(background_level >= 0.0)) {
    throw validation_error("subtract_background: background level must be >= 0");
  }

  // Group by filter configuration, preserving first-seen order.
  std::vector<FilterConfig> order;
  std::vector<std::vector<std::uint64_t>> groups;
  for (const auto& record : records) {
    auto it = std::find(order.begin(), order.end(), record.filter);
    if (it == order.end()) {
      order.push_back(record.filter);
      groups.emplace_back();
      it = std::prev(order.end());
    }
    groups[static_cast<std::size_t>(it - order.begin())].push_back(record.counts);
  }

  std::vector<NetPeak> nets;
  for (std::size_t g = 0; g < order.size(); ++g) {
    const auto& bins = groups[g];
    const double peak = static_cast<double>(*std::max_element(bins.begin(), bins.end()));
    if (bins.size() > 1) {
      const double low = static_cast<double>(*std::min_element(bins.begin(), bins.end()));
      if (peak - low <= 2.0 * std::sqrt(std::max(peak, 1.0))) {
        throw validation_error("subtract_background: no identifiable peak for filter '" +
                               order[g].to_string() + "' (all bins equal within Poisson noise)");
      }
    }
    NetPeak net;
    net.filter = order[g];
    net.raw_peak = peak;
    net.net = peak - background_level;
    if (net.net < 0.0) {
      net.net = 0.0;
      net.clamped = true;
    }
    nets.push_back(net);
  }
  return nets;
}

ReanalysisReport report_from_nets(double net_parallel, double net_orthogonal) {
  if (!(net_parallel > 0.0)) {
    throw validation_error("reanalysis: parallel net count must be positive");
  }
  if (net_orthogonal < 0.0) {
    throw validation_error("reanalysis: orthogonal net count must be >= 0");
  }
  ReanalysisReport report;
  report.net_parallel = net_parallel;
  report.net_orthogonal = net_orthogonal;
  report.ratio = net_orthogonal / net_parallel;
  report.ratio_sigma = ratio_sigma_from_counts(net_orthogonal, net_parallel);
  report.consistent_one_third =
      std::abs(report.ratio - kOneThird) <= kConsistencySigmas * report.ratio_sigma;
  return report;
}

ReanalysisReport aspect_resplit(double total_no_polarizers, double claimed_accidental,
                                double alternative_accidental) {
  if (!(alternative_accidental >= 0.0) || alternative_accidental > claimed_accidental ||
      claimed_accidental > total_no_polarizers) {
    throw validation_error(
        "aspect_resplit: need 0 <= alternative <= claimed <= total coincidence rates");
  }
  const double floor = claimed_accidental - alternative_accidental;
  const double published_true = total_no_polarizers - claimed_accidental;
  const double net_parallel = 0.5 * published_true + floor;
  const double net_orthogonal = floor;
  return report_from_nets(net_parallel, net_orthogonal);
}

RateModelFit fit_ratio_model(double net_parallel, double net_orthogonal) {
  if (!(net_parallel > 0.0)) {
    throw validation_error("fit_ratio_model: parallel net count must be positive");
  }
  if (net_orthogonal < 0.0) {
    throw validation_error("fit_ratio_model: orthogonal net count must be >= 0");
  }
  RateModelFit fit;
  fit.model.true_peak_rate = net_parallel / 1.5;
  fit.predicted_orthogonal = net_parallel / 3.0;
  const double sigma =
      net_orthogonal > 0.0 ? std::sqrt(net_orthogonal) : std::sqrt(fit.predicted_orthogonal);
  fit.goodness_sigma = (net_orthogonal - fit.predicted_orthogonal) / sigma;
  fit.consistent = std::abs(fit.goodness_sigma) <= kConsistencySigmas;
  return fit;
}

}  // namespace bellsim::reanalysis
