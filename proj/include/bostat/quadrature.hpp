#pragma once
// Adaptive Simpson quadrature: recursive bisection with the classical
// |S_halves - S_whole|/15 Richardson error control.

#include <cmath>

namespace bostat {

namespace detail {

template <typename F>
double simpson_recurse(F& f, double a, double m, double b, double fa,
                       double fm, double fb, double whole, double tol,
                       int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_recurse(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_recurse(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Integral of f over [a, b] to absolute tolerance roughly tol.
template <typename F>
double adaptive_simpson(F&& f, double a, double b, double tol,
                        int max_depth = 60) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_recurse(f, a, m, b, fa, fm, fb, whole, tol,
                                 max_depth);
}

}  // namespace bostat
