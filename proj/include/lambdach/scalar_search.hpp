#pragma once

#include <cmath>
#include <utility>

namespace lambdach {

struct ScalarOptimum {
  double x = 0.0;
  double value = 0.0;
  int iterations = 0;
};

/// Golden-section search for the maximum of a unimodal f on [lo, hi].
/// Stops once the bracket is narrower than x_tol or after max_iter steps.
template <class F>
ScalarOptimum golden_section_maximize(F&& f, double lo, double hi, double x_tol, int max_iter = 200) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  int it = 0;
  for (; it < max_iter && (hi - lo) > x_tol; ++it) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return fc >= fd ? ScalarOptimum{c, fc, it} : ScalarOptimum{d, fd, it};
}

/// Bisection for the boundary of the set where `inside(x)` holds, given
/// inside(lo) != inside(hi). Returns the final bracket midpoint once the
/// bracket is narrower than x_tol or after max_iter halvings.
template <class Pred>
double bisect_boundary(Pred&& inside, double lo, double hi, double x_tol, int max_iter = 200) {
  const bool inside_lo = inside(lo);
  for (int it = 0; it < max_iter && (hi - lo) > x_tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (inside(mid) == inside_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace lambdach
