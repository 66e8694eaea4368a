#pragma once

// Closed-form trigonometry shared by the holonomy and curve modules.

#include <algorithm>
#include <cmath>

namespace tsys::trig {

// acosh with arguments just below 1 clamped (symmetric points)
inline double acosh_c(double v) {
  if (v < 1 && v > 1 - 1e-12) v = 1;
  return std::acosh(v);
}

// cosh(h/2) for the torus piece: cosh^2 = (z + x - 1)/(x - 1),
// x = cosh^2(l1/2), z = cosh^2(lX/2)
inline double half_height(double l1, double lX) {
  double r = std::cosh(lX / 2) / std::sinh(l1 / 2);
  return std::sqrt(1 + r * r);
}

// length of the orientable curve crossing gamma1 once with twist t:
// cosh(l/2) = cosh(t l1/2) cosh(h/2). t = theta1 gives gamma2.
inline double twisted_length(double t, double l1, double lX) {
  return 2 * acosh_c(std::cosh(t * l1 / 2) * half_height(l1, lX));
}

// duality: cosh(l/2) = sinh(l'/2) sinh(lX/2)
inline double dual_length(double l, double lX) {
  return 2 * std::asinh(std::cosh(l / 2) / std::sinh(lX / 2));
}
inline double orientable_from_dual(double ld, double lX) {
  return 2 * acosh_c(std::sinh(ld / 2) * std::sinh(lX / 2));
}

// signed twist from the lengths of gamma1, gamma2 (twist t) and
// gamma3 (twist t - 1)
inline double twist_from_lengths(double l1, double l2, double l3, double lX) {
  double H = half_height(l1, lX);
  double c2 = std::cosh(l2 / 2) / H, c3 = std::cosh(l3 / 2) / H;
  return 2 / l1 * std::asinh((c2 * std::cosh(l1 / 2) - c3) / std::sinh(l1 / 2));
}

// common perpendicular between boundaries i, j of a pair of pants with
// boundary half-lengths ni, nj, nk (right-angled hexagon)
inline double seam(double ni, double nj, double nk) {
  return acosh_c((std::cosh(ni) * std::cosh(nj) + std::cosh(nk)) / (std::sinh(ni) * std::sinh(nj)));
}

}  // namespace tsys::trig
