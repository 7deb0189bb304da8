#ifndef MTC_ENTROPY_HPP
#define MTC_ENTROPY_HPP

#include <cstdint>
#include <string>

#include "mtc/distributions.hpp"

namespace mtc {

// All entropies are differential entropies in bits.

struct EntropyValue {
  double bits = 0.0;
  std::string law_tag;
};

// eta(X, tau) = -int_0^tau f log2 f for X ~ Levy(0, c).
double partial_entropy_levy(double c, double tau);

// The same quantity through the closed form with 2F2; loses accuracy once
// c/(2 tau) is large.
double partial_entropy_levy_hypergeometric(double c, double tau);

// h(X | X <= tau) = eta / F + log2 F.
double conditional_entropy(double eta, double F_tau);

// h(X | X <= tau) for Levy(0, c), evaluated in log space so that it stays
// finite when F(tau) underflows.
double levy_conditional_entropy(double c, double tau);

// eta(X, tau) = -int_{-inf}^tau f log2 f for a Gumbel law.
double partial_entropy_gumbel(const GumbelLaw& law, double tau);

double gumbel_conditional_entropy(const GumbelLaw& law, double tau);

// Entropy of the Gaussian limit of the average-receiver noise.
double gaussian_entropy_avg_noise(double c, double tau_n, std::int64_t M);

EntropyValue truncated_entropy(const LevyLaw& law, double tau);
EntropyValue truncated_entropy(const GumbelLaw& law, double tau);

}  // namespace mtc

#endif
