#ifndef MTC_SIMULATE_HPP
#define MTC_SIMULATE_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "mtc/bounds.hpp"
#include "mtc/rng.hpp"

namespace mtc {

// One particle of a channel use: an arrival time or an erasure.
struct Outcome {
  bool arrived = false;
  double time = 0.0;
};

// M particles released at t_x; each arrives at t_x + T_n if T_n <= tau_n.
std::vector<Outcome> simulate_channel_use(const ChannelParams& params, double t_x, Rng& rng);

// Consecutive channel uses; use k starts at k (tau_x + tau_n) and arrival
// times are absolute.
std::vector<std::vector<Outcome>> simulate_sequence(const ChannelParams& params,
                                                    const std::vector<double>& t_x, Rng& rng);

struct McReport {
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
  double ks_statistic = 0.0;
  // KS distance to the exact finite-M law, where one exists.
  double ks_exact_law = std::numeric_limits<double>::quiet_NaN();
  double empirical_mean = 0.0;
  double empirical_var = 0.0;
  double reference_var = std::numeric_limits<double>::quiet_NaN();
  double arrival_fraction = 0.0;
  double target_arrival_probability = std::numeric_limits<double>::quiet_NaN();
  std::int64_t dropped = 0;
  std::string notes;
};

struct MiEstimate {
  double bits_per_channel_use = 0.0;
  double bits_per_sec = 0.0;
  std::int64_t n_samples = 0;
  std::int64_t n_arrived = 0;
  int bins = 0;
  double arrival_fraction = 0.0;
  std::uint64_t seed = 0;
  std::string input_law = "uniform[0,tau_x]";
};

enum class MinSampling { order_statistic, brute_force };
enum class AverageSampling { binomial, brute_force };
enum class MiChannel { coupled, independent };

// One-sample Kolmogorov-Smirnov distance; sorts `samples` in place.
double ks_statistic(std::vector<double>& samples, const std::function<double(double)>& cdf);

// Asymptotic critical value of the one-sample KS distance at level alpha.
double ks_critical_value(std::int64_t n, double alpha);

// Levy(0, c) sampler against its cdf; arrival_fraction is P(X <= c).
McReport levy_validate(double c, std::int64_t n, std::uint64_t seed, int threads = 0);

// Minimum of M Levy times against the limiting Gumbel law.
McReport first_arrival_validate(double c, double tau_n, std::int64_t M, std::int64_t n,
                                std::uint64_t seed, int threads = 0,
                                MinSampling mode = MinSampling::order_statistic);

// Centered and standardized average of the arrived times against N(0, 1).
McReport average_receiver_validate(double c, double tau_n, std::int64_t M, std::int64_t n,
                                   std::uint64_t seed, int threads = 0,
                                   AverageSampling mode = AverageSampling::binomial);

// Plug-in histogram estimate of I(Tx; Y) per second for uniform input on
// [0, tau_x] and M = 1. bins = 0 picks floor(cbrt(arrived)) capped at 256.
MiEstimate estimate_mi_single(const ChannelParams& params, std::int64_t n, int bins,
                              std::uint64_t seed, int threads = 0,
                              MiChannel channel = MiChannel::coupled);

}  // namespace mtc

#endif
