#pragma once

#include <utility>
#include <vector>

#include "tsys/types.hpp"

namespace tsys {

// 2 cosh(l/2) of Orientable(s), by trace recursion down the Farey tree
// from the marked basis. Positive in our normalization.
double orientable_trace(const Slope& s, const SurfacePoint& p);

double length(const GeodesicClass& g, const SurfacePoint& p);

// gamma2 by the twist-length formula:
// cosh^2(l2/2) = cosh^2(theta1 l1/2) (z + x - 1)/(x - 1)
double gamma2_length(const SurfacePoint& p);
// the same quantity as printed in the eutaxy argument,
// cosh(l2/2) = cosh(theta1 l1/2) cosh(lX/2)/sinh(l1/2); drops a term
double gamma2_length_variant(const SurfacePoint& p);

int intersection_number(const GeodesicClass& a, const GeodesicClass& b);

std::int64_t slope_det(const Slope& a, const Slope& b);
inline bool farey_neighbors(const Slope& a, const Slope& b) {
  auto d = slope_det(a, b);
  return d == 1 || d == -1;
}

using Candidate = std::pair<GeodesicClass, double>;

// all simple closed geodesics of length <= max_len, sorted by length
std::vector<Candidate> candidate_geodesics(double max_len, const SurfacePoint& p);

// orientable slopes with length <= max_len (unsorted)
std::vector<std::pair<Slope, double>> short_slopes(double max_len, const SurfacePoint& p);

}  // namespace tsys
