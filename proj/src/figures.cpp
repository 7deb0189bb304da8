#include <cmath>

#include "mtc/error.hpp"
#include "mtc/optimize.hpp"
#include "mtc/parallel.hpp"
#include "mtc/sweep.hpp"

namespace mtc {

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0 && lo < hi) || n < 2) throw DomainError("log_grid: needs 0 < lo < hi, n >= 2");
  std::vector<double> v(n);
  const double a = std::log10(lo), b = std::log10(hi);
  for (int i = 0; i < n; ++i) v[i] = std::pow(10.0, a + (b - a) * i / (n - 1));
  v.front() = lo;
  v.back() = hi;
  return v;
}

std::vector<double> table1_c_values() { return {0.1, 0.5, 1.0, 2.0, 4.0, 8.0}; }

SweepTable run_table1(int threads) {
  const auto cs = table1_c_values();
  SweepTable t;
  t.header = {"c_s", "tau_x_lb_s", "tau_n_lb_s", "tau_x_ub_s", "tau_n_ub_s"};
  t.rows.resize(cs.size());
  parallel_for(cs.size(), resolve_threads(threads), [&](std::size_t i) {
    BoundResult lb = optimize_joint(BoundKind::single_lb, cs[i], 1);
    BoundResult ub = optimize_joint(BoundKind::single_ub, cs[i], 1);
    t.rows[i] = {cs[i], lb.argmax_tau_x, lb.argmax_tau_n, ub.argmax_tau_x, ub.argmax_tau_n};
  });
  return t;
}

SweepSpec figure_spec(int id) {
  using K = BoundKind;
  SweepSpec s;
  switch (id) {
    case 4:
      s.bound_kinds = {K::single_lb, K::single_ub};
      s.c_values = {0.1};
      s.tau_x = std::vector<double>{1.0, 5.0, 10.0};
      s.tau_n = log_grid(1e-2, 1e2, 81);
      break;
    case 5:
      s.bound_kinds = {K::single_lb, K::single_ub};
      s.c_values = {0.1};
      s.tau_x = log_grid(1e-2, 1e2, 81);
      s.tau_n = std::vector<double>{1.0, 5.0, 10.0};
      break;
    case 6:
      s.bound_kinds = {K::single_lb, K::single_ub};
      s.c_values = log_grid(0.1, 10.0, 21);
      break;
    case 7:
    case 9:
      s.bound_kinds = id == 7 ? std::vector<K>{K::fa_lb, K::fa_ub} : std::vector<K>{K::avg_lb, K::avg_ub};
      s.c_values = {1.0};
      s.M_values = {1000000};
      s.tau_x = std::vector<double>{0.02, 0.037, 0.073};
      s.tau_n = log_grid(1e-3, 1.0, 61);
      break;
    case 8:
    case 10:
      s.bound_kinds = id == 8 ? std::vector<K>{K::fa_lb, K::fa_ub} : std::vector<K>{K::avg_lb, K::avg_ub};
      s.c_values = {1.0};
      s.M_values = {1000000};
      s.tau_x = log_grid(1e-3, 1.0, 61);
      s.tau_n = std::vector<double>{0.049, 0.073, 0.5};
      break;
    case 11:
    case 12: {
      s.bound_kinds = {K::fa_lb, K::fa_ub, K::avg_lb, K::avg_ub};
      s.c_values = {id == 11 ? 0.1 : 1.0};
      s.M_values.clear();
      for (double m : log_grid(1e2, 1e8, 13)) s.M_values.push_back(std::llround(m));
      break;
    }
    default:
      throw DomainError("figure id must be between 4 and 12, got " + std::to_string(id));
  }
  return s;
}

}  // namespace mtc
