#ifndef MTC_BOUNDS_HPP
#define MTC_BOUNDS_HPP

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mtc {

// Times in seconds. M is the number of particles released per channel use.
struct ChannelParams {
  double c = 1.0;
  double tau_x = 0.0;
  double tau_n = 1.0;
  std::int64_t M = 1;

  void validate() const;
};

enum class BoundKind { single_lb, single_ub, diversity_ub, fa_lb, fa_ub, avg_lb, avg_ub };

inline constexpr std::array<BoundKind, 7> all_bound_kinds = {
    BoundKind::single_lb, BoundKind::single_ub, BoundKind::diversity_ub, BoundKind::fa_lb,
    BoundKind::fa_ub,     BoundKind::avg_lb,    BoundKind::avg_ub};

std::string_view to_string(BoundKind kind);
// Throws DomainError on an unknown name.
BoundKind parse_bound_kind(std::string_view name);
bool is_lower_bound(BoundKind kind);

struct BoundResult {
  double bits_per_sec = 0.0;
  double argmax_tau_x = 0.0;
  double argmax_tau_n = 0.0;
  BoundKind kind = BoundKind::single_lb;
  int optimizer_iterations = 0;
  // Numerator was negative and the rate was clamped to 0.
  bool clamped = false;
  bool boundary_hit = false;
  std::vector<std::string> warnings;
};

// 0.5 log2(tau_x^2 + 2^(2 h)).
double m_function(double tau_x, double h_cond);

// m_function(tau_x, h) - h, accurate when tau_x is tiny against 2^h.
double lb_gain(double tau_x, double h_cond);

// Single-particle bounds; params.M is ignored.
double single_lb_at(const ChannelParams& params);
double single_ub_at(const ChannelParams& params);

double diversity_ub_at(const ChannelParams& params);
double fa_lb_at(const ChannelParams& params);
double fa_ub_at(const ChannelParams& params);
double avg_lb_at(const ChannelParams& params);
double avg_ub_at(const ChannelParams& params);

// Numerator of the bound in bits per channel use, before clamping and
// before the arrival-probability factor.
double bound_numerator(BoundKind kind, const ChannelParams& params);

// Probability factor multiplying the numerator (M F for diversity, 1 for the
// average receiver).
double bound_arrival_factor(BoundKind kind, const ChannelParams& params);

// Clamped bound value in bits per second.
double bound_at(BoundKind kind, const ChannelParams& params);

// Bound value with clamp flag and regime warnings.
BoundResult evaluate_bound(BoundKind kind, const ChannelParams& params);

struct ExplicitUpperBound {
  double value = 0.0;
  double tau_x_star = 0.0;
  double epsilon = 0.0;
};

// Closed-form maximizer of the single-particle upper bound over tau_x.
ExplicitUpperBound single_ub_explicit(double c, double tau_n);

// Derivative condition of the single-particle lower bound in tau_x, scaled by
// (tau_x^2 + 4^h); zero at interior maxima.
double lb_stationarity_residual(double c, double tau_n, double tau_x);

struct StationaryPoint {
  double tau_x = 0.0;
  double residual = 0.0;
  // No sign change was found and the point came from direct maximization.
  bool fallback = false;
};

StationaryPoint single_lb_stationary_tau_x(double c, double tau_n);

// v(p, M, j) = C(M, j) p^j (1 - p)^(M - j).
double binomial_weight(double p, std::int64_t M, std::int64_t j);
// sum_{j=1}^{M} j v(p, M, j).
double binomial_weighted_count(double p, std::int64_t M);

}  // namespace mtc

#endif
