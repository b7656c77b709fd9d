#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "irp/errors.hpp"

namespace irp::detail {

struct RootEval {
  double value = 0.0;
  double slope = 0.0;
};

struct RootResult {
  double root = 0.0;
  int evaluations = 0;
};

// Safeguarded Newton for f(x) = 0 where f is convex and increasing on the
// branch containing the root. Points with f < 0 or f' <= 0 lie left of the
// root. Until a two-sided bracket exists the search steps outward with a
// doubling stride; afterwards Newton steps that leave the bracket are
// replaced by bisection.
template <typename Fn>
RootResult solve_monotone(Fn&& f, double guess, double scale, double tol, const char* what,
                          int max_evaluations = 100) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  double lo = -inf;
  double hi = inf;
  double stride = scale > 0.0 ? scale : 1.0;
  double x = guess;
  for (int it = 1; it <= max_evaluations; ++it) {
    const RootEval r = f(x);
    if (std::isfinite(r.value) && std::abs(r.value) <= tol) {
      if (r.slope > 0.0) {
        // One extra Newton correction is free and removes most of the
        // residual left by the stopping test.
        const double polished = x - r.value / r.slope;
        if (std::isfinite(polished) && (polished > lo || lo == -inf) &&
            (polished < hi || hi == inf)) {
          x = polished;
        }
      }
      return {x, it};
    }
    const bool left = std::isfinite(r.value) && (r.value < 0.0 || r.slope <= 0.0);
    if (left) {
      lo = x;
    } else {
      hi = x;
    }

    double next = std::numeric_limits<double>::quiet_NaN();
    if (std::isfinite(r.value) && r.slope > 0.0) next = x - r.value / r.slope;
    const bool bracketed = std::isfinite(lo) && std::isfinite(hi);
    if (bracketed) {
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi))) {
        return {0.5 * (lo + hi), it};
      }
    } else if (std::isfinite(lo)) {
      if (!(next > lo) || next - lo > stride) {
        next = lo + stride;
        stride *= 2.0;
      }
    } else {
      if (!(next < hi) || hi - next > stride) {
        next = hi - stride;
        stride *= 2.0;
      }
    }
    x = next;
  }
  throw InversionFailure(std::string(what) + ": no convergence after " +
                         std::to_string(max_evaluations) + " iterations");
}

}  // namespace irp::detail
