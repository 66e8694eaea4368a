#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "tsys/curves.hpp"
#include "tsys/types.hpp"

namespace testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 r(20240611);
  return r;
}

inline double uni(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng()); }

inline double close_rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// a generic point of the fundamental domain, off its walls
inline tsys::SurfacePoint point_in_domain() {
  for (;;) {
    tsys::SurfacePoint p{uni(0.01, 0.49), uni(0.2, 4), uni(0.2, 4)};
    if (p.l1 < tsys::gamma2_length(p) - 1e-3) return p;
  }
}

}  // namespace testing
