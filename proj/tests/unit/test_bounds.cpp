#include <doctest.h>

#include <cmath>
#include <vector>

#include "mtc/bounds.hpp"
#include "mtc/distributions.hpp"
#include "mtc/entropy.hpp"
#include "mtc/error.hpp"
#include "mtc/optimize.hpp"
#include "oracles.hpp"

using namespace mtc;

namespace {

// h(Tn | Tn <= tau) straight from the renormalized-density integral.
double h_levy(double c, double tau) { return oracle::levy_conditional_entropy(c, tau); }

double ub_direct(double c, double tx, double tn) {
  double F = oracle::levy_cdf(c, tn);
  return std::max(0.0, (std::log2(tx + tn) - h_levy(c, tn)) * F / (tx + tn));
}

double lb_direct(double c, double tx, double tn) {
  double h = h_levy(c, tn);
  double F = oracle::levy_cdf(c, tn);
  return std::max(0.0, (0.5 * std::log2(tx * tx + std::pow(2.0, 2 * h)) - h) * F / (tx + tn));
}

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("channel parameter validation") {
  CHECK_NOTHROW(ChannelParams{1.0, 0.0, 1.0, 1}.validate());
  CHECK_THROWS_AS(ChannelParams({0.0, 1.0, 1.0, 1}).validate(), DomainError);
  CHECK_THROWS_AS(ChannelParams({1.0, -1.0, 1.0, 1}).validate(), DomainError);
  CHECK_THROWS_AS(ChannelParams({1.0, 1.0, 0.0, 1}).validate(), DomainError);
  CHECK_THROWS_AS(ChannelParams({1.0, 1.0, 1.0, 0}).validate(), DomainError);
  CHECK_THROWS_AS(single_lb_at(ChannelParams{1.0, 1.0, -2.0, 1}), DomainError);
}

TEST_CASE("bound kind names round-trip") {
  for (BoundKind k : all_bound_kinds) CHECK(parse_bound_kind(to_string(k)) == k);
  CHECK(to_string(BoundKind::fa_lb) == "fa_lb");
  CHECK(is_lower_bound(BoundKind::avg_lb));
  CHECK_FALSE(is_lower_bound(BoundKind::diversity_ub));
  CHECK_THROWS_AS(parse_bound_kind("nope"), DomainError);
}

TEST_CASE("m function") {
  CHECK(m_function(0.0, 1.7) == 1.7);
  CHECK(m_function(std::pow(2.0, 1.7), 1.7) == doctest::Approx(2.2).epsilon(1e-14));
  CHECK(m_function(1e6, 2.0) == doctest::Approx(std::log2(1e6)).epsilon(1e-10));
  for (double h : {-20.0, -3.0, 0.0, 4.0}) {
    for (double tx : {1e-9, 1e-3, 0.5, 10.0, 1e5}) {
      double m = m_function(tx, h);
      CHECK(m >= std::max(std::log2(tx), h) - 1e-14 * std::fabs(h));
      CHECK(m == doctest::Approx(0.5 * std::log2(tx * tx + std::pow(2.0, 2 * h))).epsilon(1e-13));
      double ratio = tx / std::pow(2.0, h);
      CHECK(lb_gain(tx, h) == doctest::Approx(0.5 * std::log2(1.0 + ratio * ratio)).epsilon(1e-12));
    }
  }
  // gain stays resolvable when tau_x is tiny next to 2^h
  CHECK(lb_gain(1e-12, 3.0) == doctest::Approx(0.5 * oracle::log2e * 1e-24 / 64.0).epsilon(1e-10));
  CHECK_THROWS_AS(m_function(-1.0, 0.0), DomainError);
}

TEST_CASE("single-particle bounds against direct composition") {
  for (double c : {0.1, 1.0, 8.0}) {
    for (double tn : {0.05, 0.5, 5.0}) {
      for (double tx : {0.0, 0.03, 0.3, 3.0, 30.0}) {
        ChannelParams p{c, tx, tn, 1};
        CAPTURE(c);
        CAPTURE(tn);
        CAPTURE(tx);
        double lb = single_lb_at(p), ub = single_ub_at(p);
        CHECK(std::fabs(lb - lb_direct(c, tx, tn)) <= 1e-7 * lb + 1e-12);
        CHECK(std::fabs(ub - ub_direct(c, tx, tn)) <= 1e-7 * ub + 1e-12);
        CHECK(lb <= ub + 1e-15);
        CHECK(lb >= 0.0);
      }
    }
  }
  CHECK(single_lb_at(ChannelParams{1.0, 0.0, 1.0, 1}) == 0.0);
}

TEST_CASE("single-particle bounds at the tabulated optimizers") {
  double lb01 = single_lb_at(ChannelParams{0.1, 0.17, 0.06, 1});
  CHECK(lb01 > 0.0);
  CHECK(lb01 == doctest::Approx(1.56745).epsilon(1e-4));
  CHECK(single_lb_at(ChannelParams{1.0, 1.63, 0.59, 1}) > 0.0);
  CHECK(single_ub_at(ChannelParams{0.1, 0.06, 0.05, 1}) > 0.0);
  CHECK(single_ub_at(ChannelParams{0.1, 0.17, 0.06, 1}) == doctest::Approx(1.88978).epsilon(1e-4));
  // M is ignored
  CHECK(single_ub_at(ChannelParams{0.1, 0.06, 0.05, 50}) == single_ub_at(ChannelParams{0.1, 0.06, 0.05, 1}));
}

TEST_CASE("clamp on negative numerators") {
  // h(Tn | Tn <= tau_n) <= log2 tau_n keeps the single-particle numerator non-negative
  for (double tn : {1e-3, 0.05, 0.5, 5.0}) {
    CHECK(bound_numerator(BoundKind::single_ub, ChannelParams{1.0, 0.0, tn, 1}) >= 0.0);
  }
  ChannelParams p{1.0, 0.001, 0.05, 1000};
  REQUIRE(std::log2(0.051) < gaussian_entropy_avg_noise(1.0, 0.05, 1000));
  CHECK(bound_numerator(BoundKind::avg_ub, p) < 0.0);
  CHECK(avg_ub_at(p) == 0.0);
  BoundResult r = evaluate_bound(BoundKind::avg_ub, p);
  CHECK(r.clamped);
  CHECK(r.bits_per_sec == 0.0);
  CHECK_FALSE(r.warnings.empty());
  for (double c : {0.1, 1.0}) {
    for (double tx : {0.01, 0.1, 1.0}) {
      for (double tn : {0.01, 0.1, 1.0}) {
        for (BoundKind k : all_bound_kinds) {
          ChannelParams q{c, tx, tn, 100000};
          double num = bound_numerator(k, q);
          if (num >= 0.0) {
            CHECK(bound_at(k, q) == doctest::Approx(num * bound_arrival_factor(k, q) / (tx + tn)));
            CHECK_FALSE(evaluate_bound(k, q).clamped);
          } else {
            CHECK(bound_at(k, q) == 0.0);
          }
        }
      }
    }
  }
}

TEST_CASE("upper and lower bounds converge for large tau_x") {
  for (double c : {0.1, 1.0}) {
    double tn = 0.5;
    double h = levy_conditional_entropy(c, tn);
    double tx = 1e6 * std::pow(2.0, h);
    ChannelParams p{c, tx, tn, 1};
    double ratio = bound_numerator(BoundKind::single_ub, p) / bound_numerator(BoundKind::single_lb, p);
    CHECK(std::fabs(ratio - 1.0) < 1e-3);
    CHECK(single_ub_at(p) / single_lb_at(p) == doctest::Approx(ratio));
  }
}

TEST_CASE("explicit maximizer of the single-particle upper bound") {
  for (double c : {0.1, 1.0, 8.0}) {
    for (double tn : {0.02 * c, 0.3 * c, 0.54 * c, 5.0 * c, 50.0 * c}) {
      ExplicitUpperBound e = single_ub_explicit(c, tn);
      double h = levy_conditional_entropy(c, tn);
      CHECK(e.epsilon == doctest::Approx(std::exp(1.0) * std::pow(2.0, h)));
      CHECK(e.value == doctest::Approx(single_ub_at(ChannelParams{c, e.tau_x_star, tn, 1})).epsilon(1e-12));
      double F = oracle::levy_cdf(c, tn);
      if (e.epsilon > tn) {
        CHECK(e.tau_x_star == doctest::Approx(e.epsilon - tn));
        CHECK(e.value == doctest::Approx(oracle::log2e * F / e.epsilon));
      } else {
        CHECK(e.tau_x_star == 0.0);
        CHECK(e.value == doctest::Approx(std::max(0.0, (std::log2(tn) - h) * F / tn)));
      }
      // no tau_x beats the closed form
      for (double tx = 1e-6; tx < 1e3 * c; tx *= 1.2) {
        CHECK(single_ub_at(ChannelParams{c, tx, tn, 1}) <= e.value * (1 + 1e-12));
      }
    }
  }
  CHECK(single_ub_explicit(1.0, 0.54).tau_x_star == doctest::Approx(0.65).epsilon(0.02));
}

TEST_CASE("stationary point of the single-particle lower bound") {
  struct Case {
    double c, tn, expect, tol;
  };
  for (Case k : {Case{0.1, 0.06, 0.17, 0.005}, Case{8.0, 4.72, 13.04, 0.01}, Case{1.0, 0.59, 1.63, 0.005}}) {
    StationaryPoint sp = single_lb_stationary_tau_x(k.c, k.tn);
    CAPTURE(k.c);
    CHECK_FALSE(sp.fallback);
    CHECK(std::fabs(sp.residual) < 1e-9);
    CHECK(std::fabs(lb_stationarity_residual(k.c, k.tn, sp.tau_x)) < 1e-9);
    CHECK(sp.tau_x == doctest::Approx(k.expect).epsilon(k.tol));
    auto best = maximize_1d([&](double x) { return single_lb_at(ChannelParams{k.c, x, k.tn, 1}); },
                            default_tau_x_spec(k.c));
    CHECK(sp.tau_x == doctest::Approx(best.x_star).epsilon(1e-4));
  }
  CHECK(single_lb_stationary_tau_x(0.1, 0.06).tau_x == doctest::Approx(0.166139).epsilon(1e-5));
  CHECK(single_lb_stationary_tau_x(8.0, 4.72).tau_x == doctest::Approx(13.0386).epsilon(1e-5));
}

TEST_CASE("diversity bound") {
  ChannelParams p{1.0, 0.4, 0.7, 1};
  CHECK(diversity_ub_at(p) == doctest::Approx(single_ub_at(p)).epsilon(1e-15));
  ChannelParams p10 = p;
  p10.M = 10;
  CHECK(bound_numerator(BoundKind::diversity_ub, p10) * bound_arrival_factor(BoundKind::diversity_ub, p10) ==
        doctest::Approx(10.0 * bound_numerator(BoundKind::single_ub, p) * bound_arrival_factor(BoundKind::single_ub, p)));
  CHECK(diversity_ub_at(p10) == doctest::Approx(10.0 * single_ub_at(p)));
  CHECK(binomial_weighted_count(0.3, 7) == doctest::Approx(2.1).epsilon(1e-14));
  double total = 0.0;
  for (int j = 0; j <= 7; ++j) total += binomial_weight(0.3, 7, j);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
  // C(7,3) 0.3^3 0.7^4 = 35 * 27/1000 * 2401/10000
  CHECK(binomial_weight(0.3, 7, 3) == doctest::Approx(35.0 * 0.027 * 0.2401).epsilon(1e-14));
  CHECK(binomial_weight(0.0, 5, 0) == 1.0);
  CHECK(binomial_weight(1.0, 5, 5) == 1.0);
  CHECK(binomial_weight(0.5, 5, 6) == 0.0);
}

TEST_CASE("first-arrival bounds") {
  ChannelParams p{1.0, 0.037, 0.073, 1000000};
  double lb = fa_lb_at(p), ub = fa_ub_at(p);
  CHECK(lb > 0.0);
  CHECK(ub > 0.0);
  CHECK(lb <= ub);
  GumbelLaw g = gumbel_from_min_levy(1.0, 1000000);
  double F = 1.0 - std::pow(1.0 - oracle::levy_cdf(1.0, 0.073), 1e6);
  double hc = gumbel_conditional_entropy(g, 0.073);
  CHECK(ub == doctest::Approx((std::log2(0.11) - hc) * F / 0.11).epsilon(1e-10));
  CHECK(bound_arrival_factor(BoundKind::fa_ub, p) == doctest::Approx(F).epsilon(1e-12));
  ChannelParams z = p;
  z.tau_x = 0.0;
  CHECK(fa_lb_at(z) == 0.0);
  double prev = 0.0;
  for (std::int64_t M : {100, 1000, 10000, 1000000, 100000000}) {
    ChannelParams q{1.0, 0.037, 0.2, M};
    double f = bound_arrival_factor(BoundKind::fa_lb, q);
    CHECK(f >= prev);
    prev = f;
  }
  CHECK(prev == doctest::Approx(1.0));
  CHECK_THROWS_AS(fa_lb_at(ChannelParams{1.0, 0.1, 0.1, 1}), DomainError);
  BoundResult small = evaluate_bound(BoundKind::fa_lb, ChannelParams{1.0, 0.5, 2.0, 100});
  CHECK_FALSE(small.warnings.empty());
  CHECK(evaluate_bound(BoundKind::fa_lb, ChannelParams{1.0, 0.5, 2.0, 5000}).warnings.empty());
}

TEST_CASE("average-receiver bounds") {
  ChannelParams p{1.0, 0.037, 0.073, 1000000};
  double lb = avg_lb_at(p), ub = avg_ub_at(p);
  CHECK(lb > 0.0);
  CHECK(lb <= ub);
  CHECK(lb > fa_lb_at(p));
  CHECK(bound_arrival_factor(BoundKind::avg_lb, p) == 1.0);
  double h = gaussian_entropy_avg_noise(1.0, 0.073, 1000000);
  CHECK(ub == doctest::Approx((std::log2(0.11) - h) / 0.11).epsilon(1e-13));
  ChannelParams z = p;
  z.tau_x = 0.0;
  CHECK(bound_numerator(BoundKind::avg_lb, z) == 0.0);
  ChannelParams p4 = p;
  p4.M = 4000000;
  CHECK(bound_numerator(BoundKind::avg_ub, p4) - bound_numerator(BoundKind::avg_ub, p) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_FALSE(evaluate_bound(BoundKind::avg_ub, ChannelParams{1.0, 0.1, 0.1, 10}).warnings.empty());
  BoundResult sparse = evaluate_bound(BoundKind::avg_lb, ChannelParams{1.0, 1.0, 0.01, 1000000});
  REQUIRE(sparse.warnings.size() == 1);
  CHECK(sparse.warnings[0].find("M F < 1") != std::string::npos);
}

TEST_CASE("lower bounds never exceed upper bounds") {
  for (double c : {0.1, 1.0, 8.0}) {
    for (double tx : {0.01, 0.1, 1.0, 10.0}) {
      for (double tn : {0.01, 0.1, 1.0, 10.0}) {
        ChannelParams p{c, tx * c, tn * c, 1};
        CHECK(single_lb_at(p) <= single_ub_at(p) + 1e-15);
        for (std::int64_t M : {1000, 1000000}) {
          p.M = M;
          CHECK(fa_lb_at(p) <= fa_ub_at(p) + 1e-15);
          if (static_cast<double>(M) * oracle::levy_cdf(c, p.tau_n) >= 1.0) {
            CHECK(avg_lb_at(p) <= avg_ub_at(p) + 1e-15);
          }
        }
      }
    }
  }
}

TEST_CASE("large-M scaling of the first-arrival and average numerators") {
  const double c = 1.0, tx = 1.0, tn = 0.5;
  std::vector<double> xs, ys;
  for (double M : {1e4, 1e6, 1e8}) {
    xs.push_back(std::log(std::log(M)));
    ys.push_back(bound_numerator(BoundKind::fa_lb, ChannelParams{c, tx, tn, static_cast<std::int64_t>(M)}));
  }
  double mx = (xs[0] + xs[1] + xs[2]) / 3, my = (ys[0] + ys[1] + ys[2]) / 3, sxy = 0, sxx = 0;
  for (int i = 0; i < 3; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  double c1 = sxy / sxx, c0 = my - c1 * mx;
  CHECK(c1 > 0.0);
  double range = ys[2] - ys[0];
  for (int i = 0; i < 3; ++i) CHECK(std::fabs(ys[i] - (c0 + c1 * xs[i])) < 0.05 * range);

  // ln(c/2) - 2 ln ln(M/2) tracks ln beta of the limiting Gumbel law
  GumbelLaw g = gumbel_from_min_levy(c, 100000000);
  double approx = std::log(c / 2) - 2 * std::log(std::log(1e8 / 2));
  double exact_ln_beta = gumbel_entropy(g) / oracle::log2e - (1 + oracle::euler_gamma);
  CHECK(std::fabs(approx - exact_ln_beta) < 0.2);

  double prev = bound_numerator(BoundKind::avg_lb, ChannelParams{c, tx, tn, 10000});
  for (double M = 1e5; M <= 1e9; M *= 10) {
    double v = bound_numerator(BoundKind::avg_lb, ChannelParams{c, tx, tn, static_cast<std::int64_t>(M)});
    CHECK(v - prev == doctest::Approx(0.5 * std::log2(10.0)).epsilon(0.05 / (0.5 * std::log2(10.0))));
    prev = v;
  }
}

}  // TEST_SUITE
