#ifndef MTC_SPECIAL_FN_HPP
#define MTC_SPECIAL_FN_HPP

namespace mtc::special {

inline constexpr double euler_gamma = 0.57721566490153286061;
inline constexpr double log2e = 1.44269504088896340736;

// Convergence controls shared by every series and iterative routine.
struct SeriesControl {
  int max_terms = 500;
  double rel_tol = 1e-12;
  double abs_tol = 1e-300;

  void validate() const;
};

double erfc(double x);

// Inverse of erfc on (0, 2).
double erfcinv(double p);

// Gamma(s, x) = int_x^inf y^(s-1) e^(-y) dy for s > 0, x >= 0.
double upper_incomplete_gamma(double s, double x, const SeriesControl& ctl = {});

// ln Gamma(s, x). Any real s is accepted when x > 0 (s > 0 when x = 0).
// Stays finite where Gamma(s, x) itself underflows.
double log_upper_incomplete_gamma(double s, double x, const SeriesControl& ctl = {});

// d/ds Gamma(s, x).
double upper_incomplete_gamma_dparam(double s, double x, const SeriesControl& ctl = {});

// d/ds ln Gamma(s, x), the ratio Gamma'(s, x) / Gamma(s, x).
double log_upper_incomplete_gamma_dparam(double s, double x, const SeriesControl& ctl = {});

// 2F2(1/2, 1/2; 3/2, 3/2; -c/(2 tau)).
double hyp2f2_g(double c, double tau, const SeriesControl& ctl = {});

// Kummer confluent hypergeometric function 1F1(a; b; z).
double hyp1f1(double a, double b, double z, const SeriesControl& ctl = {});

// Exponential integral Ei(x), x != 0.
double expint_Ei(double x);

// Entire exponential integral Ein(w) = sum_{k>=1} (-1)^(k+1) w^k / (k k!).
double expint_Ein(double w, const SeriesControl& ctl = {});

}  // namespace mtc::special

#endif
