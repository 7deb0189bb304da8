#include "mtc/entropy.hpp"

#include <cmath>
#include <sstream>

#include "mtc/error.hpp"
#include "mtc/special_fn.hpp"

namespace mtc {

namespace {

constexpr double pi = 3.14159265358979323846;
constexpr double half_log_pi = 0.57236494292470008707;
using special::euler_gamma;
using special::log2e;

void require_levy_args(double c, double tau, const char* routine) {
  if (!(c > 0.0) || !std::isfinite(c) || !(tau > 0.0) || !std::isfinite(tau)) {
    throw DomainError(std::string(routine) + ": c and tau must be positive and finite");
  }
}

std::string tag(const char* law, double p1, double p2, double tau) {
  std::ostringstream os;
  os.precision(17);
  os << law << "(" << p1 << "," << p2 << ")|x<=" << tau;
  return os.str();
}

}  // namespace

double levy_conditional_entropy(double c, double tau) {
  require_levy_args(c, tau, "levy_conditional_entropy");
  const double a = c / (2.0 * tau);
  const double log_g = special::log_upper_incomplete_gamma(0.5, a);
  const double dlog_g = special::log_upper_incomplete_gamma_dparam(0.5, a);
  const double k = 0.5 * std::log2(2.0 * pi / c) + 1.5 * std::log2(c / 2.0) + 0.5 * log2e;
  return k - 1.5 * log2e * dlog_g + log2e * std::exp(0.5 * std::log(a) - a - log_g) +
         log2e * (log_g - half_log_pi);
}

double partial_entropy_levy(double c, double tau) {
  require_levy_args(c, tau, "partial_entropy_levy");
  const double a = c / (2.0 * tau);
  const double log_F = special::log_upper_incomplete_gamma(0.5, a) - half_log_pi;
  const double F = std::exp(log_F);
  if (F == 0.0) return 0.0;
  return F * (levy_conditional_entropy(c, tau) - log2e * log_F);
}

double partial_entropy_levy_hypergeometric(double c, double tau) {
  require_levy_args(c, tau, "partial_entropy_levy_hypergeometric");
  const double F = special::erfc(std::sqrt(c / (2.0 * tau)));
  const double f = levy_pdf(LevyLaw{0.0, c}, tau);
  const double g = special::hyp2f2_g(c, tau);
  return 0.5 * std::log2(2.0 * pi / c) * F +
         1.5 * ((F - 1.0) * std::log2(tau) - 4.0 * std::sqrt(c / (2.0 * pi * tau)) * g * log2e +
                std::log2(c / 2.0) + euler_gamma * log2e + 2.0) +
         log2e * (0.5 * F + tau * f);
}

double conditional_entropy(double eta, double F_tau) {
  if (!(F_tau > 0.0 && F_tau <= 1.0)) {
    throw DomainError("conditional_entropy: F_tau must lie in (0, 1]");
  }
  return eta / F_tau + std::log2(F_tau);
}

double partial_entropy_gumbel(const GumbelLaw& law, double tau) {
  law.validate();
  const double a = (tau - law.alpha) / law.beta;
  const double w = std::exp(a);
  const double F = -std::expm1(-w);
  double nats;
  if (w > 700.0) {
    nats = 1.0 + euler_gamma;
  } else if (w <= 1.0) {
    nats = (a - 1.0) * std::expm1(-w) - w * std::exp(-w) + special::expint_Ein(w);
  } else {
    nats = 1.0 + euler_gamma + (a - 1.0) * std::exp(-w) - w * std::exp(-w) -
           special::expint_Ei(-w);
  }
  return F * std::log2(law.beta) + log2e * nats;
}

double gumbel_conditional_entropy(const GumbelLaw& law, double tau) {
  law.validate();
  const double F = -std::expm1(-std::exp((tau - law.alpha) / law.beta));
  if (F < 1e-280) return std::log2(law.beta) + log2e;
  return conditional_entropy(partial_entropy_gumbel(law, tau), F);
}

double gaussian_entropy_avg_noise(double c, double tau_n, std::int64_t M) {
  require_levy_args(c, tau_n, "gaussian_entropy_avg_noise");
  if (M < 1) throw DomainError("gaussian_entropy_avg_noise: M must be >= 1");
  const double var = trunc_levy_var(TruncatedLevyLaw{c, tau_n});
  const double log2_F =
      log2e * (special::log_upper_incomplete_gamma(0.5, c / (2.0 * tau_n)) - half_log_pi);
  return 0.5 * (std::log2(2.0 * pi * std::exp(1.0)) + std::log2(var) -
                std::log2(static_cast<double>(M)) - log2_F);
}

EntropyValue truncated_entropy(const LevyLaw& law, double tau) {
  law.validate();
  return {levy_conditional_entropy(law.c, tau - law.mu), tag("levy", law.mu, law.c, tau)};
}

EntropyValue truncated_entropy(const GumbelLaw& law, double tau) {
  return {gumbel_conditional_entropy(law, tau), tag("gumbel", law.alpha, law.beta, tau)};
}

}  // namespace mtc
