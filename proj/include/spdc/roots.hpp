#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace spdc::roots {

struct Bracket {
  double lo;
  double hi;  // lo == hi when a sample hit the root exactly
};

struct Root {
  double x;
  double fx;
  int iterations;
};

// Uniform pre-scan of f on [lo, hi] with `points` samples; one bracket per sign change.
template <class F>
std::vector<Bracket> sign_changes(F&& f, double lo, double hi, int points) {
  std::vector<Bracket> out;
  double x_prev = lo;
  double f_prev = f(lo);
  if (f_prev == 0.0) out.push_back({lo, lo});
  for (int j = 1; j < points; ++j) {
    const double x = lo + (hi - lo) * j / (points - 1);
    const double fx = f(x);
    if (fx == 0.0) {
      out.push_back({x, x});
    } else if (f_prev != 0.0 && std::signbit(fx) != std::signbit(f_prev)) {
      out.push_back({x_prev, x});
    }
    x_prev = x;
    f_prev = fx;
  }
  return out;
}

// Bisection safeguarding secant (false-position) steps. Stops when |f| <= ftol
// or the bracket is narrower than xtol. Requires f(a) and f(b) of opposite sign.
template <class F>
Root bisect_secant(F&& f, double a, double b, double ftol, double xtol, int max_iter = 200) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return {a, fa, 0};
  if (fb == 0.0) return {b, fb, 0};
  double x = 0.5 * (a + b);
  double fx = fa;
  double last_width = std::abs(b - a);
  int it = 0;
  for (; it < max_iter; ++it) {
    // secant through the bracket endpoints, rejected if it lands outside or stalls
    double trial = b - fb * (b - a) / (fb - fa);
    const bool stalled = it > 0 && std::abs(b - a) > 0.5 * last_width;
    if (!(trial > std::min(a, b) && trial < std::max(a, b)) || stalled)
      trial = 0.5 * (a + b);
    last_width = std::abs(b - a);
    x = trial;
    fx = f(x);
    if (std::abs(fx) <= ftol) break;
    if (std::signbit(fx) == std::signbit(fa)) {
      a = x;
      fa = fx;
    } else {
      b = x;
      fb = fx;
    }
    if (std::abs(b - a) <= xtol) {
      if (std::abs(fa) < std::abs(fx)) { x = a; fx = fa; }
      if (std::abs(fb) < std::abs(fx)) { x = b; fx = fb; }
      break;
    }
  }
  return {x, fx, it + 1};
}

}  // namespace spdc::roots
