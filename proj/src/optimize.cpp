#include "mtc/optimize.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "mtc/error.hpp"

namespace mtc {

namespace {

constexpr double inv_phi = 0.61803398874989484820;

struct Axis {
  const SearchSpec& spec;

  double lo() const { return to_u(spec.lo); }
  double hi() const { return to_u(spec.hi); }
  double to_u(double x) const { return spec.scale == GridScale::logarithmic ? std::log(x) : x; }
  double to_x(double u) const {
    if (spec.scale != GridScale::logarithmic) return u;
    // keep the end points exact
    if (u == lo()) return spec.lo;
    if (u == hi()) return spec.hi;
    return std::exp(u);
  }
  double node(int i) const {
    if (i == 0) return lo();
    if (i == spec.coarse_points - 1) return hi();
    return lo() + (hi() - lo()) * i / (spec.coarse_points - 1);
  }
  double cell() const { return (hi() - lo()) / (spec.coarse_points - 1); }
};

double checked(double v, const char* routine, double x, double y = std::nan("")) {
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os.precision(17);
    os << "objective is not finite at x=" << x;
    if (!std::isnan(y)) os << ", y=" << y;
    throw NumericError(routine, os.str());
  }
  return v;
}

struct GoldenResult {
  double u = 0.0;
  double f = 0.0;
  int iterations = 0;
  int evaluations = 0;
};

// Golden-section maximization of g over [a, b] in the grid coordinate.
template <class G>
GoldenResult golden_max(const G& g, double a, double b, double tol) {
  GoldenResult r;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = g(c), fd = g(d);
  r.evaluations = 2;
  while (b - a > tol && r.iterations < 500) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = g(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = g(d);
    }
    ++r.evaluations;
    ++r.iterations;
  }
  if (fc >= fd) {
    r.u = c;
    r.f = fc;
  } else {
    r.u = d;
    r.f = fd;
  }
  return r;
}

}  // namespace

void SearchSpec::validate() const {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw DomainError("SearchSpec: requires finite lo < hi");
  }
  if (coarse_points < 8) throw DomainError("SearchSpec: coarse_points must be >= 8");
  if (!(refine_tol > 0.0)) throw DomainError("SearchSpec: refine_tol must be > 0");
  if (scale == GridScale::logarithmic && !(lo > 0.0)) {
    throw DomainError("SearchSpec: logarithmic grid needs lo > 0");
  }
}

SearchSpec make_search_spec(double lo, double hi, GridScale scale, int coarse_points) {
  SearchSpec s;
  s.lo = lo;
  s.hi = hi;
  s.scale = scale;
  s.coarse_points = coarse_points;
  double width = scale == GridScale::logarithmic ? std::log(hi) - std::log(lo) : hi - lo;
  s.refine_tol = 1e-7 * width;
  s.validate();
  return s;
}

SearchSpec default_tau_x_spec(double c) {
  return make_search_spec(1e-4 * c, 1e3 * c, GridScale::logarithmic);
}

SearchSpec default_tau_n_spec(double c) {
  return make_search_spec(1e-4 * c, 1e2 * c, GridScale::logarithmic);
}

Maximum1d maximize_1d(const std::function<double(double)>& f, const SearchSpec& spec) {
  spec.validate();
  Axis ax{spec};
  auto g = [&](double u) {
    double x = ax.to_x(u);
    return checked(f(x), "maximize_1d", x);
  };
  Maximum1d r;
  int best = 0;
  double best_f = -INFINITY;
  for (int i = 0; i < spec.coarse_points; ++i) {
    double v = g(ax.node(i));
    ++r.evaluations;
    if (v > best_f) {
      best_f = v;
      best = i;
    }
  }
  double a = ax.node(std::max(best - 1, 0));
  double b = ax.node(std::min(best + 1, spec.coarse_points - 1));
  GoldenResult gr = golden_max(g, a, b, spec.refine_tol);
  r.evaluations += gr.evaluations;
  r.iterations = gr.iterations;
  double u_star = ax.node(best);
  r.f_star = best_f;
  if (gr.f > best_f) {
    u_star = gr.u;
    r.f_star = gr.f;
  }
  r.x_star = ax.to_x(u_star);
  r.boundary_hit = u_star - ax.lo() <= spec.refine_tol || ax.hi() - u_star <= spec.refine_tol;
  return r;
}

Maximum2d maximize_2d(const std::function<double(double, double)>& f, const SearchSpec& spec_x,
                      const SearchSpec& spec_y) {
  spec_x.validate();
  spec_y.validate();
  Axis ax{spec_x}, ay{spec_y};
  auto g = [&](double u, double v) {
    double x = ax.to_x(u), y = ay.to_x(v);
    return checked(f(x, y), "maximize_2d", x, y);
  };
  Maximum2d r;
  int bi = 0, bj = 0;
  double best_f = -INFINITY;
  for (int i = 0; i < spec_x.coarse_points; ++i) {
    for (int j = 0; j < spec_y.coarse_points; ++j) {
      double v = g(ax.node(i), ay.node(j));
      ++r.evaluations;
      if (v > best_f) {
        best_f = v;
        bi = i;
        bj = j;
      }
    }
  }
  double u = ax.node(bi), v = ay.node(bj), fu = best_f;
  const double dx = ax.cell(), dy = ay.cell();
  for (int sweep = 0; sweep < 2000; ++sweep) {
    ++r.iterations;
    double u_prev = u, v_prev = v;
    GoldenResult gx = golden_max([&](double t) { return g(t, v); }, std::max(ax.lo(), u - dx),
                                 std::min(ax.hi(), u + dx), spec_x.refine_tol);
    r.evaluations += gx.evaluations;
    if (gx.f > fu) {
      u = gx.u;
      fu = gx.f;
    }
    GoldenResult gy = golden_max([&](double t) { return g(u, t); }, std::max(ay.lo(), v - dy),
                                 std::min(ay.hi(), v + dy), spec_y.refine_tol);
    r.evaluations += gy.evaluations;
    if (gy.f > fu) {
      v = gy.u;
      fu = gy.f;
    }
    if (std::fabs(u - u_prev) < spec_x.refine_tol && std::fabs(v - v_prev) < spec_y.refine_tol) {
      break;
    }
  }
  r.x_star = ax.to_x(u);
  r.y_star = ay.to_x(v);
  r.f_star = fu;
  r.boundary_hit_x = u - ax.lo() <= spec_x.refine_tol || ax.hi() - u <= spec_x.refine_tol;
  r.boundary_hit_y = v - ay.lo() <= spec_y.refine_tol || ay.hi() - v <= spec_y.refine_tol;
  return r;
}

BoundResult optimize_tau_x(BoundKind kind, const ChannelParams& params, const SearchSpec& spec) {
  params.validate();
  auto m = maximize_1d(
      [&](double x) {
        ChannelParams p = params;
        p.tau_x = x;
        return bound_at(kind, p);
      },
      spec);
  ChannelParams at = params;
  at.tau_x = m.x_star;
  BoundResult r = evaluate_bound(kind, at);
  r.optimizer_iterations = m.iterations;
  r.boundary_hit = m.boundary_hit;
  if (m.boundary_hit) r.warnings.push_back("maximizer on the tau_x search boundary");
  return r;
}

BoundResult optimize_tau_x(BoundKind kind, const ChannelParams& params) {
  return optimize_tau_x(kind, params, default_tau_x_spec(params.c));
}

BoundResult optimize_tau_n(BoundKind kind, const ChannelParams& params, const SearchSpec& spec) {
  params.validate();
  auto m = maximize_1d(
      [&](double y) {
        ChannelParams p = params;
        p.tau_n = y;
        return bound_at(kind, p);
      },
      spec);
  ChannelParams at = params;
  at.tau_n = m.x_star;
  BoundResult r = evaluate_bound(kind, at);
  r.optimizer_iterations = m.iterations;
  r.boundary_hit = m.boundary_hit;
  if (m.boundary_hit) r.warnings.push_back("maximizer on the tau_n search boundary");
  return r;
}

BoundResult optimize_tau_n(BoundKind kind, const ChannelParams& params) {
  return optimize_tau_n(kind, params, default_tau_n_spec(params.c));
}

BoundResult optimize_joint(BoundKind kind, double c, std::int64_t M, const SearchSpec& spec_x,
                           const SearchSpec& spec_n) {
  ChannelParams base{c, 0.0, spec_n.hi, M};
  base.validate();
  auto m = maximize_2d(
      [&](double x, double y) {
        ChannelParams p = base;
        p.tau_x = x;
        p.tau_n = y;
        return bound_at(kind, p);
      },
      spec_x, spec_n);
  ChannelParams at = base;
  at.tau_x = m.x_star;
  at.tau_n = m.y_star;
  BoundResult r = evaluate_bound(kind, at);
  r.optimizer_iterations = m.iterations;
  r.boundary_hit = m.boundary_hit_x || m.boundary_hit_y;
  if (m.boundary_hit_x) r.warnings.push_back("maximizer on the tau_x search boundary");
  if (m.boundary_hit_y) r.warnings.push_back("maximizer on the tau_n search boundary");
  return r;
}

BoundResult optimize_joint(BoundKind kind, double c, std::int64_t M) {
  return optimize_joint(kind, c, M, default_tau_x_spec(c), default_tau_n_spec(c));
}

}  // namespace mtc
