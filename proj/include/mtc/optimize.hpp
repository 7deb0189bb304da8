#ifndef MTC_OPTIMIZE_HPP
#define MTC_OPTIMIZE_HPP

#include <cstdint>
#include <functional>

#include "mtc/bounds.hpp"

namespace mtc {

enum class GridScale { linear, logarithmic };

// Search interval. refine_tol is measured in the grid coordinate: x itself for
// a linear grid, ln x for a logarithmic one.
struct SearchSpec {
  double lo = 0.0;
  double hi = 1.0;
  int coarse_points = 64;
  double refine_tol = 1e-7;
  GridScale scale = GridScale::linear;

  void validate() const;
};

SearchSpec make_search_spec(double lo, double hi, GridScale scale, int coarse_points = 64);

SearchSpec default_tau_x_spec(double c);
SearchSpec default_tau_n_spec(double c);

struct Maximum1d {
  double x_star = 0.0;
  double f_star = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool boundary_hit = false;
};

struct Maximum2d {
  double x_star = 0.0;
  double y_star = 0.0;
  double f_star = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool boundary_hit_x = false;
  bool boundary_hit_y = false;
};

// Coarse grid scan followed by golden-section refinement of the best cell.
Maximum1d maximize_1d(const std::function<double(double)>& f, const SearchSpec& spec);

// Coarse product grid followed by coordinate-wise golden refinement.
Maximum2d maximize_2d(const std::function<double(double, double)>& f, const SearchSpec& spec_x,
                      const SearchSpec& spec_y);

// Bound maximized over tau_x at the given (c, tau_n, M).
BoundResult optimize_tau_x(BoundKind kind, const ChannelParams& params, const SearchSpec& spec);
BoundResult optimize_tau_x(BoundKind kind, const ChannelParams& params);

// Bound maximized over tau_n at the given (c, tau_x, M).
BoundResult optimize_tau_n(BoundKind kind, const ChannelParams& params, const SearchSpec& spec);
BoundResult optimize_tau_n(BoundKind kind, const ChannelParams& params);

// Bound maximized jointly over (tau_x, tau_n).
BoundResult optimize_joint(BoundKind kind, double c, std::int64_t M, const SearchSpec& spec_x,
                           const SearchSpec& spec_n);
BoundResult optimize_joint(BoundKind kind, double c, std::int64_t M);

}  // namespace mtc

#endif
