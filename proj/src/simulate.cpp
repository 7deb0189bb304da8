#include "mtc/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "mtc/distributions.hpp"
#include "mtc/error.hpp"
#include "mtc/parallel.hpp"

namespace mtc {

namespace {

// Fixed work unit: substream i always produces the same draws, whatever the
// worker count.
constexpr std::int64_t chunk_size = 1 << 14;

std::size_t chunk_count(std::int64_t n) {
  return static_cast<std::size_t>((n + chunk_size - 1) / chunk_size);
}

std::int64_t chunk_len(std::int64_t n, std::size_t k) {
  return std::min<std::int64_t>(chunk_size, n - static_cast<std::int64_t>(k) * chunk_size);
}

// Draws n values, chunk k from substream k, concatenated in chunk order.
std::vector<double> draw(std::int64_t n, std::uint64_t seed, int threads,
                         const std::function<double(Rng&)>& one) {
  const Rng root(seed);
  std::vector<double> out(static_cast<std::size_t>(n));
  parallel_for(chunk_count(n), resolve_threads(threads), [&](std::size_t k) {
    Rng rng = root.split(k);
    std::size_t base = k * chunk_size;
    for (std::int64_t i = 0; i < chunk_len(n, k); ++i) out[base + i] = one(rng);
  });
  return out;
}

void moments(const std::vector<double>& v, double& mean, double& var) {
  if (v.empty()) {
    mean = var = std::nan("");
    return;
  }
  double m = 0.0, s = 0.0;
  std::int64_t k = 0;
  for (double x : v) {
    ++k;
    double d = x - m;
    m += d / k;
    s += d * (x - m);
  }
  mean = m;
  var = k > 1 ? s / (k - 1) : 0.0;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

void require_n(std::int64_t n, const char* routine) {
  if (n < 1) throw DomainError(std::string(routine) + ": n must be >= 1");
}

}  // namespace

std::vector<Outcome> simulate_channel_use(const ChannelParams& params, double t_x, Rng& rng) {
  params.validate();
  if (!(t_x >= 0.0 && t_x <= params.tau_x)) {
    throw DomainError("simulate_channel_use: t_x must lie in [0, tau_x]");
  }
  const LevyLaw law{0.0, params.c};
  std::vector<Outcome> out(static_cast<std::size_t>(params.M));
  for (auto& o : out) {
    double t = levy_sample(law, rng);
    if (t <= params.tau_n) {
      o.arrived = true;
      o.time = t_x + t;
    }
  }
  return out;
}

std::vector<std::vector<Outcome>> simulate_sequence(const ChannelParams& params,
                                                    const std::vector<double>& t_x, Rng& rng) {
  std::vector<std::vector<Outcome>> uses;
  uses.reserve(t_x.size());
  const double period = params.tau_x + params.tau_n;
  for (std::size_t k = 0; k < t_x.size(); ++k) {
    auto use = simulate_channel_use(params, t_x[k], rng);
    for (auto& o : use) {
      if (o.arrived) o.time += static_cast<double>(k) * period;
    }
    uses.push_back(std::move(use));
  }
  return uses;
}

double ks_statistic(std::vector<double>& samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw DomainError("ks_statistic: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double F = cdf(samples[i]);
    d = std::max({d, (i + 1) / n - F, F - i / n});
  }
  return d;
}

double ks_critical_value(std::int64_t n, double alpha) {
  if (n < 1 || !(alpha > 0.0 && alpha < 1.0)) throw DomainError("ks_critical_value: bad arguments");
  return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(static_cast<double>(n));
}

McReport levy_validate(double c, std::int64_t n, std::uint64_t seed, int threads) {
  require_n(n, "levy_validate");
  const LevyLaw law{0.0, c};
  law.validate();
  auto x = draw(n, seed, threads, [&](Rng& r) { return levy_sample(law, r); });
  McReport rep;
  rep.n_samples = n;
  rep.seed = seed;
  moments(x, rep.empirical_mean, rep.empirical_var);
  rep.arrival_fraction =
      static_cast<double>(std::count_if(x.begin(), x.end(), [&](double t) { return t <= c; })) / n;
  rep.target_arrival_probability = levy_cdf(law, c);
  rep.ks_statistic = ks_statistic(x, [&](double t) { return levy_cdf(law, t); });
  rep.notes = "levy sampler vs levy cdf; arrival_fraction is P(X <= c)";
  return rep;
}

McReport first_arrival_validate(double c, double tau_n, std::int64_t M, std::int64_t n,
                                std::uint64_t seed, int threads, MinSampling mode) {
  require_n(n, "first_arrival_validate");
  const GumbelLaw g = gumbel_from_min_levy(c, M);
  auto x = draw(n, seed, threads, [&](Rng& r) {
    return mode == MinSampling::order_statistic ? min_levy_sample(c, M, r)
                                                : min_levy_sample_bruteforce(c, M, r);
  });
  McReport rep;
  rep.n_samples = n;
  rep.seed = seed;
  moments(x, rep.empirical_mean, rep.empirical_var);
  rep.arrival_fraction =
      static_cast<double>(std::count_if(x.begin(), x.end(), [&](double t) { return t <= tau_n; })) /
      n;
  rep.target_arrival_probability = min_levy_cdf(c, M, tau_n);
  rep.ks_statistic = ks_statistic(x, [&](double t) { return gumbel_cdf(g, t); });
  rep.ks_exact_law = ks_statistic(x, [&](double t) { return min_levy_cdf(c, M, t); });
  std::ostringstream os;
  os.precision(10);
  os << "min of M levy times vs gumbel(alpha=" << g.alpha << ", beta=" << g.beta << "); "
     << (mode == MinSampling::order_statistic ? "order-statistic" : "brute-force") << " sampling";
  rep.notes = os.str();
  return rep;
}

McReport average_receiver_validate(double c, double tau_n, std::int64_t M, std::int64_t n,
                                   std::uint64_t seed, int threads, AverageSampling mode) {
  require_n(n, "average_receiver_validate");
  if (M < 1) throw DomainError("average_receiver_validate: M must be >= 1");
  const TruncatedLevyLaw tl{c, tau_n};
  tl.validate();
  const LevyLaw law{0.0, c};
  const double F = levy_cdf(law, tau_n);
  const double mean = trunc_levy_mean(tl);
  const double ref_var = trunc_levy_var(tl) / (static_cast<double>(M) * F);
  const double sd = std::sqrt(ref_var);

  struct Trial {
    double deviation;
    std::int64_t arrived;
  };
  const Rng root(seed);
  std::vector<Trial> trials(static_cast<std::size_t>(n));
  parallel_for(chunk_count(n), resolve_threads(threads), [&](std::size_t k) {
    Rng rng = root.split(k);
    std::size_t base = k * chunk_size;
    for (std::int64_t i = 0; i < chunk_len(n, k); ++i) {
      double sum = 0.0;
      std::int64_t j = 0;
      if (mode == AverageSampling::binomial) {
        j = std::binomial_distribution<std::int64_t>(M, F)(rng);
        for (std::int64_t q = 0; q < j; ++q) sum += trunc_levy_sample(tl, rng);
      } else {
        for (std::int64_t q = 0; q < M; ++q) {
          double t = levy_sample(law, rng);
          if (t <= tau_n) {
            sum += t;
            ++j;
          }
        }
      }
      trials[base + i] = {j > 0 ? sum / j - mean : std::nan(""), j};
    }
  });

  McReport rep;
  rep.n_samples = n;
  rep.seed = seed;
  rep.reference_var = ref_var;
  rep.target_arrival_probability = F;
  std::vector<double> dev;
  dev.reserve(trials.size());
  double arrived = 0.0;
  for (const auto& t : trials) {
    arrived += static_cast<double>(t.arrived);
    if (t.arrived == 0) {
      ++rep.dropped;
    } else {
      dev.push_back(t.deviation);
    }
  }
  rep.arrival_fraction = arrived / (static_cast<double>(n) * static_cast<double>(M));
  if (dev.empty()) throw NumericError("average_receiver_validate", "every trial was dropped");
  moments(dev, rep.empirical_mean, rep.empirical_var);
  for (double& d : dev) d /= sd;
  rep.ks_statistic = ks_statistic(dev, normal_cdf);
  rep.notes = std::string("standardized average arrival vs N(0,1); ") +
              (mode == AverageSampling::binomial ? "binomial count" : "brute-force") +
              " sampling; dropped trials had no arrival";
  return rep;
}

MiEstimate estimate_mi_single(const ChannelParams& params, std::int64_t n, int bins,
                              std::uint64_t seed, int threads, MiChannel channel) {
  params.validate();
  require_n(n, "estimate_mi_single");
  const LevyLaw law{0.0, params.c};
  const double tau_x = params.tau_x;

  struct Pair {
    double x;
    double y;
  };
  const Rng root(seed);
  std::vector<std::vector<Pair>> per_chunk(chunk_count(n));
  parallel_for(per_chunk.size(), resolve_threads(threads), [&](std::size_t k) {
    Rng rng = root.split(k);
    auto& out = per_chunk[k];
    for (std::int64_t i = 0; i < chunk_len(n, k); ++i) {
      double x = tau_x * rng.uniform();
      double t = levy_sample(law, rng);
      double shift = channel == MiChannel::coupled ? x : tau_x * rng.uniform();
      if (t <= params.tau_n) out.push_back({x, shift + t});
    }
  });
  std::vector<Pair> pairs;
  for (auto& v : per_chunk) pairs.insert(pairs.end(), v.begin(), v.end());

  MiEstimate est;
  est.n_samples = n;
  est.seed = seed;
  est.n_arrived = static_cast<std::int64_t>(pairs.size());
  est.arrival_fraction = static_cast<double>(pairs.size()) / static_cast<double>(n);
  if (pairs.empty()) throw NumericError("estimate_mi_single", "no arrivals, histogram is empty");
  const std::size_t N = pairs.size();
  int B = bins > 0 ? bins : std::min(256, static_cast<int>(std::cbrt(static_cast<double>(N))));
  B = std::max(B, 2);
  est.bins = B;

  // equal-width input bins, equal-mass output bins
  std::vector<std::size_t> order(N);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return pairs[a].y < pairs[b].y; });
  std::vector<double> joint(static_cast<std::size_t>(B) * B, 0.0);
  std::vector<double> px(B, 0.0), py(B, 0.0);
  for (std::size_t r = 0; r < N; ++r) {
    const Pair& p = pairs[order[r]];
    int iy = static_cast<int>(r * static_cast<std::size_t>(B) / N);
    int ix = tau_x > 0.0 ? std::min(B - 1, static_cast<int>(p.x / tau_x * B)) : 0;
    joint[static_cast<std::size_t>(ix) * B + iy] += 1.0;
    px[ix] += 1.0;
    py[iy] += 1.0;
  }
  const double total = static_cast<double>(N);
  double mi = 0.0;
  for (int i = 0; i < B; ++i) {
    for (int j = 0; j < B; ++j) {
      double nij = joint[static_cast<std::size_t>(i) * B + j];
      if (nij > 0.0) mi += nij / total * std::log2(nij * total / (px[i] * py[j]));
    }
  }
  mi = std::max(mi, 0.0);
  est.bits_per_channel_use = mi * est.arrival_fraction;
  est.bits_per_sec = est.bits_per_channel_use / (params.tau_x + params.tau_n);
  return est;
}

}  // namespace mtc
