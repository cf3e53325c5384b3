#pragma once

// Independent reference formulas used by the tests. Nothing here calls into
// the library, so agreement is evidence rather than tautology.

#include <cmath>
#include <cstdint>

namespace oracle {

inline double arc(double a, double b) {
  double d = std::fmod(std::fabs(a - b), 1.0);
  return std::min(d, 1.0 - d);
}

inline double frac(long double x) {
  long double f = x - std::floor(x);
  return static_cast<double>(f >= 1.0L ? 0.0L : f);
}

/// frac(n * alpha) computed by repeated addition, exact enough for |n| <= 1e5.
inline double rotate(double angle, std::int64_t n, double alpha) {
  long double a = angle;
  const long double step = n >= 0 ? alpha : -alpha;
  for (std::int64_t i = 0; i < std::llabs(n); ++i) {
    a += step;
    a -= std::floor(a);
  }
  return static_cast<double>(a);
}

/// Ring n of the circle stack.
inline double ring_radius(int n) { return 2.0 - std::ldexp(1.0, -n); }

}  // namespace oracle
