#include "mtc/distributions.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mtc/error.hpp"
#include "mtc/special_fn.hpp"

namespace mtc {

namespace {

constexpr double pi = 3.14159265358979323846;
constexpr double half_log_pi = 0.57236494292470008707;

// ln F(tau) for Levy(0, c): F = Gamma(1/2, c/(2 tau)) / sqrt(pi).
double log_levy_cdf0(double c, double tau) {
  return special::log_upper_incomplete_gamma(0.5, c / (2.0 * tau)) - half_log_pi;
}

double log_levy_pdf0(double c, double x) {
  return 0.5 * std::log(c / (2.0 * pi)) - 1.5 * std::log(x) - c / (2.0 * x);
}

}  // namespace

void LevyLaw::validate() const {
  if (!(c > 0.0) || !std::isfinite(c) || !std::isfinite(mu)) {
    throw DomainError("LevyLaw: c must be positive and finite");
  }
}

void TruncatedLevyLaw::validate() const {
  if (!(c > 0.0) || !std::isfinite(c) || !(tau > 0.0) || !std::isfinite(tau)) {
    throw DomainError("TruncatedLevyLaw: c and tau must be positive and finite");
  }
}

void GumbelLaw::validate() const {
  if (!(beta > 0.0) || !std::isfinite(beta) || !std::isfinite(alpha)) {
    throw DomainError("GumbelLaw: beta must be positive and finite");
  }
}

double levy_pdf(const LevyLaw& law, double x) {
  law.validate();
  double y = x - law.mu;
  if (!(y > 0.0)) return 0.0;
  return std::exp(log_levy_pdf0(law.c, y));
}

double levy_cdf(const LevyLaw& law, double x) {
  law.validate();
  double y = x - law.mu;
  if (!(y > 0.0)) return 0.0;
  return special::erfc(std::sqrt(law.c / (2.0 * y)));
}

double levy_quantile(const LevyLaw& law, double p) {
  law.validate();
  if (!(p > 0.0 && p < 1.0)) throw DomainError("levy_quantile: p must lie in (0, 1)");
  double z = special::erfcinv(p);
  return law.mu + law.c / (2.0 * z * z);
}

double levy_entropy(const LevyLaw& law) {
  law.validate();
  return 0.5 * (std::log2(16.0 * law.c * law.c * pi * std::exp(1.0)) +
                3.0 * special::euler_gamma * special::log2e);
}

double levy_sample(const LevyLaw& law, Rng& rng) {
  double z = rng.normal();
  return law.mu + law.c / (z * z);
}

double trunc_levy_pdf(const TruncatedLevyLaw& law, double x) {
  law.validate();
  if (!(x > 0.0) || x > law.tau) return 0.0;
  return std::exp(log_levy_pdf0(law.c, x) - log_levy_cdf0(law.c, law.tau));
}

double trunc_levy_cdf(const TruncatedLevyLaw& law, double x) {
  law.validate();
  if (!(x > 0.0)) return 0.0;
  if (x >= law.tau) return 1.0;
  return std::exp(log_levy_cdf0(law.c, x) - log_levy_cdf0(law.c, law.tau));
}

double trunc_levy_mean(const TruncatedLevyLaw& law) {
  law.validate();
  double a = law.c / (2.0 * law.tau);
  return 0.5 * law.c *
         std::exp(special::log_upper_incomplete_gamma(-0.5, a) -
                  special::log_upper_incomplete_gamma(0.5, a));
}

double trunc_levy_m2(const TruncatedLevyLaw& law) {
  law.validate();
  double a = law.c / (2.0 * law.tau);
  return 0.25 * law.c * law.c *
         std::exp(special::log_upper_incomplete_gamma(-1.5, a) -
                  special::log_upper_incomplete_gamma(0.5, a));
}

double trunc_levy_var(const TruncatedLevyLaw& law) {
  double m = trunc_levy_mean(law);
  return trunc_levy_m2(law) - m * m;
}

double trunc_levy_mean_hypergeometric(const TruncatedLevyLaw& law) {
  law.validate();
  double c = law.c, tau = law.tau;
  double F = special::erfc(std::sqrt(c / (2.0 * tau)));
  return (std::sqrt(2.0 * c * tau / pi) * special::hyp1f1(-0.5, 0.5, -c / (2.0 * tau)) - c) / F;
}

double trunc_levy_m2_hypergeometric(const TruncatedLevyLaw& law) {
  law.validate();
  double c = law.c, tau = law.tau;
  double F = special::erfc(std::sqrt(c / (2.0 * tau)));
  return (std::sqrt(2.0 * c * tau * tau * tau / pi) *
              special::hyp1f1(-1.5, -0.5, -c / (2.0 * tau)) +
          c * c) /
         (3.0 * F);
}

double trunc_levy_sample(const TruncatedLevyLaw& law, Rng& rng) {
  // X = c / Z^2 with Z restricted to the normal tail |Z| >= b.
  const double b = std::sqrt(law.c / law.tau);
  double z;
  if (b < 1.0) {
    do {
      z = rng.normal();
    } while (std::fabs(z) < b);
  } else {
    // Marsaglia's tail method.
    for (;;) {
      double x = std::sqrt(b * b - 2.0 * std::log(rng.uniform()));
      if (rng.uniform() * x < b) {
        z = x;
        break;
      }
    }
  }
  return std::min(law.c / (z * z), law.tau);
}

double gumbel_pdf(const GumbelLaw& law, double x) {
  law.validate();
  double u = (x - law.alpha) / law.beta;
  return std::exp(u - std::exp(u)) / law.beta;
}

double gumbel_cdf(const GumbelLaw& law, double x) {
  law.validate();
  double u = (x - law.alpha) / law.beta;
  return -std::expm1(-std::exp(u));
}

double gumbel_entropy(const GumbelLaw& law) {
  law.validate();
  return std::log2(law.beta) + special::log2e * (1.0 + special::euler_gamma);
}

GumbelLaw gumbel_from_min_levy(double c, std::int64_t M) {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("gumbel_from_min_levy: c must be > 0");
  if (M < 2) throw DomainError("gumbel_from_min_levy: M must be >= 2, got " + std::to_string(M));
  const double m = static_cast<double>(M);
  double z1 = special::erfcinv(1.0 / m);
  double z2 = special::erfcinv(1.0 / (m * std::exp(1.0)));
  GumbelLaw law;
  law.alpha = c / (2.0 * z1 * z1);
  law.beta = law.alpha - c / (2.0 * z2 * z2);
  return law;
}

double at_least_one_probability(double p, std::int64_t M) {
  if (p >= 1.0) return 1.0;
  if (p <= 0.0) return 0.0;
  return -std::expm1(static_cast<double>(M) * std::log1p(-p));
}

double min_levy_cdf(double c, std::int64_t M, double x) {
  if (M < 1) throw DomainError("min_levy_cdf: M must be >= 1");
  return at_least_one_probability(levy_cdf(LevyLaw{0.0, c}, x), M);
}

double min_levy_sample(double c, std::int64_t M, Rng& rng) {
  double p = -std::expm1(std::log1p(-rng.uniform()) / static_cast<double>(M));
  if (!(p > 0.0)) p = std::numeric_limits<double>::min();
  double z = special::erfcinv(p);
  return c / (2.0 * z * z);
}

double min_levy_sample_bruteforce(double c, std::int64_t M, Rng& rng) {
  const LevyLaw law{0.0, c};
  double best = std::numeric_limits<double>::infinity();
  for (std::int64_t i = 0; i < M; ++i) best = std::min(best, levy_sample(law, rng));
  return best;
}

}  // namespace mtc
