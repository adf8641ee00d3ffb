#pragma once

#include <functional>

namespace savanna {

/// Adaptive composite Simpson integration of f on [a,b] to the given absolute
/// tolerance, bisecting intervals up to max_depth. Throws QuadratureError if
/// the depth limit is hit before the local error estimate falls below the
/// tolerance share of an interval.
double integrate_adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol, int max_depth = 40);

/// Root of f on a bracketing interval [a,b] with f(a) and f(b) of opposite
/// sign (or zero at an endpoint). Bisection refined by a secant step each
/// iteration; converges to |b-a| <= x_tol. Throws BracketError if the input
/// does not bracket.
double find_root_bracketed(const std::function<double(double)>& f, double a, double b,
                           double x_tol, int max_iter = 200);

}  // namespace savanna
