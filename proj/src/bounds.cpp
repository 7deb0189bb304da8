#include "mtc/bounds.hpp"

#include <cmath>
#include <limits>

#include <boost/math/tools/roots.hpp>

#include "mtc/distributions.hpp"
#include "mtc/entropy.hpp"
#include "mtc/error.hpp"
#include "mtc/optimize.hpp"
#include "mtc/special_fn.hpp"

namespace mtc {

namespace {

using special::log2e;

constexpr std::int64_t asymptotic_min_M = 1000;

double levy_F(double c, double tau_n) { return levy_cdf(LevyLaw{0.0, c}, tau_n); }

// Conditional noise entropy h(T | T <= tau_n) for the receiver family.
double noise_entropy(BoundKind kind, const ChannelParams& p) {
  switch (kind) {
    case BoundKind::single_lb:
    case BoundKind::single_ub:
    case BoundKind::diversity_ub:
      return levy_conditional_entropy(p.c, p.tau_n);
    case BoundKind::fa_lb:
    case BoundKind::fa_ub:
      return gumbel_conditional_entropy(gumbel_from_min_levy(p.c, p.M), p.tau_n);
    case BoundKind::avg_lb:
    case BoundKind::avg_ub:
      return gaussian_entropy_avg_noise(p.c, p.tau_n, p.M);
  }
  throw DomainError("unknown bound kind");
}

}  // namespace

void ChannelParams::validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("c must be positive and finite");
  if (!(tau_n > 0.0) || !std::isfinite(tau_n)) {
    throw DomainError("tau_n must be positive and finite");
  }
  if (!(tau_x >= 0.0) || !std::isfinite(tau_x)) {
    throw DomainError("tau_x must be non-negative and finite");
  }
  if (M < 1) throw DomainError("M must be >= 1");
}

std::string_view to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::single_lb: return "single_lb";
    case BoundKind::single_ub: return "single_ub";
    case BoundKind::diversity_ub: return "diversity_ub";
    case BoundKind::fa_lb: return "fa_lb";
    case BoundKind::fa_ub: return "fa_ub";
    case BoundKind::avg_lb: return "avg_lb";
    case BoundKind::avg_ub: return "avg_ub";
  }
  return "unknown";
}

BoundKind parse_bound_kind(std::string_view name) {
  for (BoundKind k : all_bound_kinds) {
    if (to_string(k) == name) return k;
  }
  throw DomainError("unknown bound kind '" + std::string(name) + "'");
}

bool is_lower_bound(BoundKind kind) {
  return kind == BoundKind::single_lb || kind == BoundKind::fa_lb || kind == BoundKind::avg_lb;
}

double lb_gain(double tau_x, double h_cond) {
  if (tau_x == 0.0) return 0.0;
  double t = 2.0 * (std::log(tau_x) - h_cond / log2e);
  double ln_gain = t > 35.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
  return 0.5 * log2e * ln_gain;
}

double m_function(double tau_x, double h_cond) {
  if (!(tau_x >= 0.0)) throw DomainError("m_function: tau_x must be >= 0");
  return h_cond + lb_gain(tau_x, h_cond);
}

double bound_numerator(BoundKind kind, const ChannelParams& params) {
  params.validate();
  double h = noise_entropy(kind, params);
  if (is_lower_bound(kind)) return lb_gain(params.tau_x, h);
  return std::log2(params.tau_x + params.tau_n) - h;
}

double bound_arrival_factor(BoundKind kind, const ChannelParams& params) {
  params.validate();
  switch (kind) {
    case BoundKind::single_lb:
    case BoundKind::single_ub:
      return levy_F(params.c, params.tau_n);
    case BoundKind::diversity_ub:
      return static_cast<double>(params.M) * levy_F(params.c, params.tau_n);
    case BoundKind::fa_lb:
    case BoundKind::fa_ub:
      return at_least_one_probability(levy_F(params.c, params.tau_n), params.M);
    case BoundKind::avg_lb:
    case BoundKind::avg_ub:
      return 1.0;
  }
  throw DomainError("unknown bound kind");
}

double bound_at(BoundKind kind, const ChannelParams& params) {
  double factor = bound_arrival_factor(kind, params);
  if (factor == 0.0) return 0.0;
  double num = bound_numerator(kind, params);
  if (!(num > 0.0)) return 0.0;
  return num * factor / (params.tau_x + params.tau_n);
}

BoundResult evaluate_bound(BoundKind kind, const ChannelParams& params) {
  BoundResult r;
  r.kind = kind;
  r.argmax_tau_x = params.tau_x;
  r.argmax_tau_n = params.tau_n;
  r.bits_per_sec = bound_at(kind, params);
  double factor = bound_arrival_factor(kind, params);
  r.clamped = factor > 0.0 && bound_numerator(kind, params) < 0.0;
  bool asymptotic = kind == BoundKind::fa_lb || kind == BoundKind::fa_ub ||
                    kind == BoundKind::avg_lb || kind == BoundKind::avg_ub;
  if (asymptotic && params.M < asymptotic_min_M) {
    r.warnings.push_back("M < 1000: large-M approximation may be inaccurate");
  }
  bool averaging = kind == BoundKind::avg_lb || kind == BoundKind::avg_ub;
  if (averaging && static_cast<double>(params.M) * levy_F(params.c, params.tau_n) < 1.0) {
    r.warnings.push_back("expected arrivals M F < 1: Gaussian noise model does not apply");
  }
  if (r.clamped) r.warnings.push_back("negative numerator clamped to 0");
  return r;
}

double single_lb_at(const ChannelParams& params) {
  ChannelParams p = params;
  p.M = 1;
  return bound_at(BoundKind::single_lb, p);
}

double single_ub_at(const ChannelParams& params) {
  ChannelParams p = params;
  p.M = 1;
  return bound_at(BoundKind::single_ub, p);
}

double diversity_ub_at(const ChannelParams& params) { return bound_at(BoundKind::diversity_ub, params); }
double fa_lb_at(const ChannelParams& params) { return bound_at(BoundKind::fa_lb, params); }
double fa_ub_at(const ChannelParams& params) { return bound_at(BoundKind::fa_ub, params); }
double avg_lb_at(const ChannelParams& params) { return bound_at(BoundKind::avg_lb, params); }
double avg_ub_at(const ChannelParams& params) { return bound_at(BoundKind::avg_ub, params); }

ExplicitUpperBound single_ub_explicit(double c, double tau_n) {
  ChannelParams{c, 0.0, tau_n, 1}.validate();
  const double h = levy_conditional_entropy(c, tau_n);
  const double F = levy_F(c, tau_n);
  ExplicitUpperBound r;
  // (log2 T - h) / T peaks at T = e 2^h
  r.epsilon = std::exp(1.0) * std::exp2(h);
  if (r.epsilon > tau_n) {
    r.tau_x_star = r.epsilon - tau_n;
    r.value = log2e * F / r.epsilon;
  } else {
    r.tau_x_star = 0.0;
    r.value = std::max(0.0, (std::log2(tau_n) - h) * F / tau_n);
  }
  return r;
}

double lb_stationarity_residual(double c, double tau_n, double tau_x) {
  const double h = levy_conditional_entropy(c, tau_n);
  const double s = std::exp2(2.0 * h) + tau_x * tau_x;
  return h * s + log2e * tau_x * (tau_x + tau_n) - 0.5 * s * std::log2(s);
}

StationaryPoint single_lb_stationary_tau_x(double c, double tau_n) {
  ChannelParams{c, 0.0, tau_n, 1}.validate();
  const double h = levy_conditional_entropy(c, tau_n);
  const double A = std::exp2(2.0 * h);
  auto phi = [&](double x) {
    double s = A + x * x;
    return h * s + log2e * x * (x + tau_n) - 0.5 * s * std::log2(s);
  };
  const double scale = std::max(c, tau_n);
  double prev_x = 0.0;
  double prev_v = 0.0;
  for (int k = -72; k <= 64; ++k) {
    double x = scale * std::pow(10.0, k / 8.0);
    double v = phi(x);
    if (k > -72 && prev_v > 0.0 && v < 0.0) {
      boost::uintmax_t iters = 200;
      auto bracket = boost::math::tools::toms748_solve(
          phi, prev_x, x, prev_v, v, boost::math::tools::eps_tolerance<double>(52), iters);
      StationaryPoint sp;
      double lo = bracket.first, hi = bracket.second;
      sp.tau_x = std::fabs(phi(lo)) <= std::fabs(phi(hi)) ? lo : hi;
      sp.residual = phi(sp.tau_x);
      return sp;
    }
    prev_x = x;
    prev_v = v;
  }
  SearchSpec spec = default_tau_x_spec(c);
  auto best = maximize_1d(
      [&](double x) { return single_lb_at(ChannelParams{c, x, tau_n, 1}); }, spec);
  StationaryPoint sp;
  sp.tau_x = best.x_star;
  sp.residual = phi(best.x_star);
  sp.fallback = true;
  return sp;
}

double binomial_weight(double p, std::int64_t M, std::int64_t j) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("binomial_weight: p must lie in [0, 1]");
  if (M < 0 || j < 0 || j > M) return 0.0;
  if (p == 0.0) return j == 0 ? 1.0 : 0.0;
  if (p == 1.0) return j == M ? 1.0 : 0.0;
  const double m = static_cast<double>(M), k = static_cast<double>(j);
  double log_v = std::lgamma(m + 1.0) - std::lgamma(k + 1.0) - std::lgamma(m - k + 1.0) +
                 k * std::log(p) + (m - k) * std::log1p(-p);
  return std::exp(log_v);
}

double binomial_weighted_count(double p, std::int64_t M) {
  double sum = 0.0;
  for (std::int64_t j = 1; j <= M; ++j) sum += static_cast<double>(j) * binomial_weight(p, M, j);
  return sum;
}

}  // namespace mtc
