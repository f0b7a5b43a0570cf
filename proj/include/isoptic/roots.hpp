#pragma once

#include <cmath>

namespace isoptic::detail {

// Bisection on a bracket [lo, hi] where g changes sign (either direction).
// Runs until the midpoint is no longer representable between the ends.
template <class F>
double bisect_root(F&& g, double lo, double hi, int max_iter = 400) {
  double glo = g(lo);
  if (glo == 0.0) return lo;
  if (g(hi) == 0.0) return hi;
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if (std::signbit(gm) == std::signbit(glo)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace isoptic::detail
