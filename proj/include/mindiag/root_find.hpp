#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "mindiag/errors.hpp"

namespace mindiag {

struct RootOptions {
  double x_tol = 1e-12;
  int max_iter = 200;
};

// Bracketed root of a continuous function: bisection safeguarded secant /
// inverse quadratic steps (Brent). Requires fn(a) and fn(b) of opposite sign
// (or one of them zero). Throws NumericError without a bracket or when the
// iteration cap is hit.
template <class F>
double find_root(F&& fn, double a, double b, RootOptions opts = {}) {
  double fa = fn(a);
  double fb = fn(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (!(std::isfinite(fa) && std::isfinite(fb)) || (fa > 0) == (fb > 0)) {
    throw NumericError("find_root: interval [" + std::to_string(a) + ", " +
                       std::to_string(b) + "] does not bracket a root");
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int iter = 0; iter < opts.max_iter; ++iter) {
    if ((fb > 0) == (fc > 0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol = 2.0 * eps * std::abs(b) + 0.5 * opts.x_tol;
    const double m = 0.5 * (c - b);
    if (std::abs(m) <= tol || fb == 0.0) return b;
    if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = m;
        e = m;
      }
    } else {
      d = m;
      e = m;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol) ? d : (m > 0 ? tol : -tol);
    fb = fn(b);
    if (!std::isfinite(fb)) throw NumericError("find_root: non-finite function value");
  }
  throw NumericError("find_root: no convergence after " + std::to_string(opts.max_iter) +
                     " iterations");
}

// Minimizes a unimodal function on [a, b] by golden-section search.
// Returns (argmin, min value).
template <class F>
std::pair<double, double> golden_min(F&& fn, double a, double b, int iterations = 60) {
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = fn(x1), f2 = fn(x2);
  for (int i = 0; i < iterations; ++i) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = fn(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = fn(x2);
    }
  }
  return f1 < f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

}  // namespace mindiag
