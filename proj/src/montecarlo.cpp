#include "bellsim/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

namespace bellsim::mc {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// splitmix64 output function; bijective finalizer of the stream state.
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kShardSize = 1u << 16;

struct Partial {
  double sum = 0.0;
  double sum_sq = 0.0;
};

// Runs value_of_event over [0, n) in fixed-size shards; shard partials are
// independent of the execution plan and get reduced pairwise in shard order.
template <typename EventFn>
SampleStats run_estimate(std::uint64_t n, Seed seed, unsigned threads, const EventFn& value_of_event) {
  const std::uint64_t shard_count = (n + kShardSize - 1) / kShardSize;
  std::vector<Partial> partials(shard_count);

  const CounterRng rng{seed};

  auto run_shard = [&](std::uint64_t s) {
    const std::uint64_t begin = s * kShardSize;
    const std::uint64_t end = std::min(n, begin + kShardSize);
    Partial p;
    for (std::uint64_t e = begin; e < end; ++e) {
      const double v = value_of_event(rng, e);
      p.sum += v;
      p.sum_sq += v * v;
    }
    partials[s] = p;
  };

  unsigned want = threads != 0 ? threads : std::thread::hardware_concurrency();
  if (want == 0) want = 1;
  const unsigned worker_count =
      static_cast<unsigned>(std::min<std::uint64_t>(want, shard_count));

  if (worker_count <= 1) {
    for (std::uint64_t s = 0; s < shard_count; ++s) run_shard(s);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::exception_ptr> errors(worker_count);
    std::vector<std::thread> workers;
    workers.reserve(worker_count);
    for (unsigned w = 0; w < worker_count; ++w) {
      workers.emplace_back([&, w] {
        try {
          for (std::uint64_t s = next.fetch_add(1); s < shard_count; s = next.fetch_add(1)) {
            run_shard(s);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : workers) t.join();
    for (const auto& err : errors) {
      if (err) std::rethrow_exception(err);
    }
  }

  std::vector<double> sums(shard_count), sums_sq(shard_count);
  for (std::uint64_t s = 0; s < shard_count; ++s) {
    sums[s] = partials[s].sum;
    sums_sq[s] = partials[s].sum_sq;
  }
  const double total = pairwise_sum(sums);
  const double total_sq = pairwise_sum(sums_sq);

  SampleStats stats;
  stats.n = n;
  stats.seed = seed;
  stats.mean = total / static_cast<double>(n);
  if (n > 1) {
    const double nn = static_cast<double>(n);
    const double var = std::max(0.0, (total_sq - nn * stats.mean * stats.mean) / (nn - 1.0));
    stats.std_error = std::sqrt(var / nn);
  }
  return stats;
}

void require_min_samples(std::uint64_t n) {
  if (n < 100) {
    throw validation_error("estimate: sample count must be at least 100, got " + std::to_string(n));
  }
}

}  // namespace

std::uint64_t CounterRng::bits(std::uint64_t index) const {
  return mix64(seed_ + (index + 1) * kGolden);
}

math::UnitVector3 sample_sphere(const CounterRng& rng, std::uint64_t event_index) {
  const std::uint64_t base = event_index * kDrawSlotsPerEvent;
  const double z = 2.0 * rng.uniform(base) - 1.0;
  const double phi = 2.0 * math::kPi * rng.uniform(base + 1);
  const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
  return math::UnitVector3::of(rho * std::cos(phi), rho * std::sin(phi), z);
}

double sample_circle_angle(const CounterRng& rng, std::uint64_t event_index) {
  return 2.0 * math::kPi * rng.uniform(event_index * kDrawSlotsPerEvent);
}

HiddenDirection HiddenDirection::angle(double radians) {
  double a = std::fmod(radians, 2.0 * math::kPi);
  if (a < 0.0) a += 2.0 * math::kPi;
  return HiddenDirection(a);
}

const math::UnitVector3& HiddenDirection::as_direction() const {
  if (!is_direction()) throw validation_error("HiddenDirection: holds an angle, not a direction");
  return std::get<math::UnitVector3>(value_);
}

double HiddenDirection::as_angle() const {
  if (is_direction()) throw validation_error("HiddenDirection: holds a direction, not an angle");
  return std::get<double>(value_);
}

HiddenDirection sample_hidden(const CounterRng& rng, HiddenDomain domain,
                              std::uint64_t event_index) {
  if (domain == HiddenDomain::sphere) {
    return HiddenDirection::direction(sample_sphere(rng, event_index));
  }
  return HiddenDirection::angle(sample_circle_angle(rng, event_index));
}

SampleStats estimate_probability(const CoincidenceModel& model, std::uint64_t n, Seed seed,
                                 EstimateOptions options) {
  require_min_samples(n);
  if (!model.sides) throw validation_error("estimate_probability: model has no side-probability function");

  const bool bernoulli = options.estimator == Estimator::double_bernoulli;
  auto value_of_event = [&model, bernoulli](const CounterRng& rng, std::uint64_t e) {
    const HiddenDirection hidden = sample_hidden(rng, model.domain, e);
    const auto [w_right, w_left] = model.sides(hidden);
    if (!(w_right >= 0.0 && w_right <= 1.0) || !(w_left >= 0.0 && w_left <= 1.0)) {
      throw validation_error("estimate_probability: side probability outside [0, 1]");
    }
    if (!bernoulli) return w_right * w_left;
    const std::uint64_t base = e * kDrawSlotsPerEvent;
    const bool right = rng.uniform(base + 2) < w_right;
    const bool left = rng.uniform(base + 3) < w_left;
    return (right && left) ? 1.0 : 0.0;
  };
  return run_estimate(n, seed, options.threads, value_of_event);
}

SampleStats estimate_correlator(const OutcomeModel& model, std::uint64_t n, Seed seed,
                                EstimateOptions options) {
  require_min_samples(n);
  if (!model.right || !model.left) {
    throw validation_error("estimate_correlator: model needs both outcome functions");
  }

  auto value_of_event = [&model](const CounterRng& rng, std::uint64_t e) {
    const HiddenDirection hidden = sample_hidden(rng, model.domain, e);
    const int a = model.right(hidden);
    const int b = model.left(hidden);
    if ((a != 1 && a != -1) || (b != 1 && b != -1)) {
      throw validation_error("estimate_correlator: outcome functions must return +1 or -1");
    }
    return static_cast<double>(a * b);
  };
  return run_estimate(n, seed, options.threads, value_of_event);
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  const int mid = (n + 1) / 2;
  for (int i = 0; i < mid; ++i) {
    // Chebyshev estimate of the i-th root, then Newton iterations.
    double x = std::cos(math::kPi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      dp = static_cast<double>(n) * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const std::size_t lo = static_cast<std::size_t>(i);
    const std::size_t hi = static_cast<std::size_t>(n - 1 - i);
    nodes[lo] = -x;
    nodes[hi] = x;
    weights[lo] = weights[hi] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

double quadrature(const std::function<double(const HiddenDirection&)>& integrand,
                  HiddenDomain domain, int resolution) {
  if (resolution < 64) {
    throw validation_error("quadrature: resolution must be at least 64 nodes per dimension");
  }
  if (!integrand) throw validation_error("quadrature: missing integrand");

  if (domain == HiddenDomain::circle) {
    std::vector<double> values(static_cast<std::size_t>(resolution));
    for (int j = 0; j < resolution; ++j) {
      const double a = 2.0 * math::kPi * (static_cast<double>(j) + 0.5) /
                       static_cast<double>(resolution);
      values[static_cast<std::size_t>(j)] = integrand(HiddenDirection::angle(a));
    }
    return pairwise_sum(values) / static_cast<double>(resolution);
  }

  std::vector<double> nodes, weights;
  gauss_legendre(resolution, nodes, weights);
  std::vector<double> band(static_cast<std::size_t>(resolution));
  std::vector<double> ring(static_cast<std::size_t>(resolution));
  for (int i = 0; i < resolution; ++i) {
    const double z = nodes[static_cast<std::size_t>(i)];
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    for (int j = 0; j < resolution; ++j) {
      const double phi = 2.0 * math::kPi * (static_cast<double>(j) + 0.5) /
                         static_cast<double>(resolution);
      const auto dir = math::UnitVector3::normalized(rho * std::cos(phi), rho * std::sin(phi), z);
      ring[static_cast<std::size_t>(j)] = integrand(HiddenDirection::direction(dir));
    }
    band[static_cast<std::size_t>(i)] =
        weights[static_cast<std::size_t>(i)] * pairwise_sum(ring) / static_cast<double>(resolution);
  }
  // GL weights integrate dz over [-1, 1]; dividing by 2 yields the mean.
  return pairwise_sum(band) / 2.0;
}

ValueWithError ratio_with_error(const SampleStats& numer, const SampleStats& denom) {
  if (denom.mean == 0.0) {
    throw validation_error("ratio_with_error: denominator mean is zero");
  }
  const double r = numer.mean / denom.mean;
  const double dn = numer.std_error / denom.mean;
  const double dd = numer.mean * denom.std_error / (denom.mean * denom.mean);
  return ValueWithError{r, std::sqrt(dn * dn + dd * dd)};
}

double pairwise_sum(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  std::vector<double> level = values;
  while (level.size() > 1) {
    std::vector<double> next((level.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) next[i / 2] = level[i] + level[i + 1];
    if (level.size() % 2 == 1) next.back() = level.back();
    level = std::move(next);
  }
  return level.front();
}

Seed derive_seed(Seed base, std::uint64_t tag) {
  return Seed{mix64(base.value ^ mix64(tag))};
}

std::uint64_t hash_doubles(std::initializer_list<double> values) {
  std::uint64_t h = 0x6a09e667f3bcc909ULL;
  for (double v : values) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(v));
    __builtin_memcpy(&bits, &v, sizeof(bits));
    h = mix64(h ^ bits) + kGolden;
  }
  return h;
}

}  // namespace bellsim::mc
