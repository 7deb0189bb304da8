#ifndef MTC_DISTRIBUTIONS_HPP
#define MTC_DISTRIBUTIONS_HPP

#include <cstdint>

#include "mtc/rng.hpp"

namespace mtc {

// Levy law L(mu, c): first-passage time of 1-D Brownian motion.
struct LevyLaw {
  double mu = 0.0;
  double c = 1.0;

  void validate() const;
};

// Levy(0, c) conditioned on X <= tau.
struct TruncatedLevyLaw {
  double c = 1.0;
  double tau = 1.0;

  void validate() const;
};

// Gumbel law in the minimum convention: F(x) = 1 - exp(-exp((x - alpha) / beta)).
struct GumbelLaw {
  double alpha = 0.0;
  double beta = 1.0;

  void validate() const;
};

double levy_pdf(const LevyLaw& law, double x);
double levy_cdf(const LevyLaw& law, double x);
// x with levy_cdf(x) = p, p in (0, 1).
double levy_quantile(const LevyLaw& law, double p);
// Differential entropy in bits.
double levy_entropy(const LevyLaw& law);
double levy_sample(const LevyLaw& law, Rng& rng);

double trunc_levy_pdf(const TruncatedLevyLaw& law, double x);
double trunc_levy_cdf(const TruncatedLevyLaw& law, double x);
double trunc_levy_mean(const TruncatedLevyLaw& law);
double trunc_levy_m2(const TruncatedLevyLaw& law);
double trunc_levy_var(const TruncatedLevyLaw& law);
// Moments written with 1F1; cancel badly once c/(2 tau) is large.
double trunc_levy_mean_hypergeometric(const TruncatedLevyLaw& law);
double trunc_levy_m2_hypergeometric(const TruncatedLevyLaw& law);
double trunc_levy_sample(const TruncatedLevyLaw& law, Rng& rng);

double gumbel_pdf(const GumbelLaw& law, double x);
double gumbel_cdf(const GumbelLaw& law, double x);
double gumbel_entropy(const GumbelLaw& law);

// Limit law of the minimum of M iid Levy(0, c) times.
GumbelLaw gumbel_from_min_levy(double c, std::int64_t M);

// Exact cdf of the minimum of M iid Levy(0, c) times: 1 - (1 - F(x))^M.
double min_levy_cdf(double c, std::int64_t M, double x);
// Draw of the minimum by order-statistic inversion (one uniform per draw).
double min_levy_sample(double c, std::int64_t M, Rng& rng);
// Draw of the minimum by drawing all M times.
double min_levy_sample_bruteforce(double c, std::int64_t M, Rng& rng);

// 1 - (1 - p)^M without cancellation.
double at_least_one_probability(double p, std::int64_t M);

}  // namespace mtc

#endif
