#pragma once

#include <cmath>
#include <limits>

#include "gumbelscale/errors.hpp"

namespace gumbelscale {

struct InverseOptions {
  double rel_tol = 1e-12;
  int max_iterations = 200;
  // Upper limit on bracket doublings when the search interval is unbounded.
  int max_expansions = 2100;
  // Infimum of h's range; q below it is rejected.
  double range_inf = -std::numeric_limits<double>::infinity();
};

// h^{<-}(q) = inf{x in [lo, hi] : h(x) >= q} for non-decreasing h, by
// monotone bisection. hi may be +infinity, in which case the bracket is
// grown geometrically from max(lo, 1). The returned value always satisfies
// h(x) >= q; it exceeds the true infimum by at most rel_tol * |x|.
//
// Throws DomainError if q lies above every value h takes on the search
// interval and `range_sup` (the supremum of h's range) does not admit q;
// when q == range_sup is unattained the infimum of the empty set, +inf, is
// returned.
template <class F>
double generalized_inverse(const F& h, double q, double lo, double hi,
                           double range_sup =
                               std::numeric_limits<double>::infinity(),
                           InverseOptions options = {}) {
  if (!std::isfinite(q)) throw DomainError("generalized_inverse: q not finite");
  if (!(lo < hi)) throw DomainError("generalized_inverse: empty interval");
  if (q > range_sup || q < options.range_inf) {
    throw DomainError("generalized_inverse: q outside the closure of the range");
  }
  if (h(lo) >= q) return lo;

  if (std::isinf(hi)) {
    double probe = std::max(1.0, lo > 0.0 ? 2.0 * lo : 1.0);
    int expansions = 0;
    while (!(h(probe) >= q)) {
      lo = probe;
      probe *= 2.0;
      if (++expansions > options.max_expansions || std::isinf(probe)) {
        if (q == range_sup) return std::numeric_limits<double>::infinity();
        throw DomainError(
            "generalized_inverse: q not attained on the search interval");
      }
    }
    hi = probe;
  } else if (!(h(hi) >= q)) {
    if (q == range_sup) return std::numeric_limits<double>::infinity();
    throw DomainError("generalized_inverse: q not attained on [lo, hi]");
  }

  // Invariant: h(lo) < q <= h(hi).
  for (int it = 0; it < options.max_iterations; ++it) {
    const double width = hi - lo;
    const double scale = std::max(std::abs(hi), std::abs(lo));
    if (width <= options.rel_tol * scale ||
        width <= std::numeric_limits<double>::denorm_min()) {
      break;
    }
    const double mid = lo + 0.5 * width;
    if (mid <= lo || mid >= hi) break;
    if (h(mid) >= q) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace gumbelscale
