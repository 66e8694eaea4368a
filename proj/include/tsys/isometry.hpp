#pragma once

#include <array>
#include <string>

namespace tsys {

// 2x2 real matrix with det = +1 (orientation preserving) or -1 (reversing).
// det -1 acts by z -> (a conj(z) + b)/(c conj(z) + d).
struct Isometry {
  double a = 1, b = 0, c = 0, d = 1;
  int orient = 1;  // exact sign of det, immune to cancellation in long words

  Isometry() = default;
  Isometry(double a_, double b_, double c_, double d_);

  static Isometry identity() { return {}; }
  // normalize to det = +-1 exactly; throws if det is ~0
  static Isometry normalized(double a, double b, double c, double d);

  double det() const { return a * d - b * c; }
  double trace() const { return a + d; }
  bool orientation_preserving() const { return orient > 0; }
  Isometry inverse() const;
  bool approx_equal(const Isometry& o, double tol) const;  // modulo +-I
};

Isometry compose(const Isometry& g, const Isometry& h);
inline Isometry operator*(const Isometry& g, const Isometry& h) { return compose(g, h); }

enum class Kind { Identity, Hyperbolic, Parabolic, Elliptic, GlideReflection, Reflection };

struct IsometryKind {
  Kind kind;
  double length = 0;  // translation or glide length; 0 if none
};

std::string to_string(Kind k);

IsometryKind classify(const Isometry& g, double tol = 1e-9);

// h with det h = -1, h^2 = g (mod sign), same axis
Isometry glide_sqrt(const Isometry& g);

// attracting/repelling endpoints on the boundary R u {inf}
// (inf returned as +-HUGE_VAL)
std::array<double, 2> fixed_points(const Isometry& g);

double axis_distance(const Isometry& g, const Isometry& h);

// distance between geodesics with endpoints {x1,x2} and {y1,y2}, all finite
double geodesic_distance(double x1, double x2, double y1, double y2);

}  // namespace tsys
