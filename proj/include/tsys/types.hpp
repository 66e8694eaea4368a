#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace tsys {

// Twist-length coordinates: twist theta1 along gamma1 (full turn = 1),
// length l1 of gamma1, length lX of the ovale.
struct SurfacePoint {
  double theta1 = 0, l1 = 1, lX = 1;
  bool valid() const { return l1 > 0 && lX > 0; }
};

// Glide lengths of three disjoint one-sided geodesics; cutting along
// them leaves a pair of pants with boundary lengths 2*n_i.
struct PantsCoords {
  double n1 = 1, n2 = 1, n3 = 1;
  bool valid() const { return n1 > 0 && n2 > 0 && n3 > 0; }
};

// Primitive (p, q) mod sign, with q > 0 or (1, 0).
// Abelianizes to q[A] + p[B]: 0/1 is gamma1, 1/0 gamma2,
// -1/1 gamma3, 1/1 gamma4.
struct Slope {
  std::int64_t p = 0, q = 1;

  Slope() = default;
  Slope(std::int64_t p_, std::int64_t q_);  // normalizes; throws if not primitive

  std::string str() const { return std::to_string(p) + "/" + std::to_string(q); }
  auto operator<=>(const Slope&) const = default;
};

struct GeodesicClass {
  enum Tag { Ovale, Orientable, Dual } tag = Ovale;
  Slope slope;

  static GeodesicClass ovale() { return {Ovale, {}}; }
  static GeodesicClass orientable(Slope s) { return {Orientable, s}; }
  static GeodesicClass dual(Slope s) { return {Dual, s}; }

  bool one_sided() const { return tag != Orientable; }
  std::string str() const;
  // the ovale compares equal regardless of the stored slope
  bool operator==(const GeodesicClass& o) const {
    return tag == o.tag && (tag == Ovale || slope == o.slope);
  }
  bool operator<(const GeodesicClass& o) const {
    if (tag != o.tag) return tag < o.tag;
    return tag != Ovale && slope < o.slope;
  }
};

}  // namespace tsys
