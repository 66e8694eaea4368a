#include "tsys/isometry.hpp"

#include <cmath>
#include <stdexcept>

namespace tsys {

namespace {

using Vec2 = std::array<double, 2>;

double cross(const Vec2& u, const Vec2& v) { return u[0] * v[1] - u[1] * v[0]; }

// eigenvectors of a real matrix with distinct real eigenvalues, as
// homogeneous boundary points (z = v0/v1)
std::array<Vec2, 2> eigenvectors(const Isometry& g) {
  double tr = g.trace(), det = g.orient;
  double disc = tr * tr - 4 * det;
  if (disc <= 0) throw std::domain_error("isometry has no real axis");
  double s = std::sqrt(disc);
  // stable pair of eigenvalues
  double l1 = tr >= 0 ? (tr + s) / 2 : (tr - s) / 2;
  double l2 = det / l1;
  std::array<Vec2, 2> out;
  double lam[2] = {l1, l2};
  for (int i = 0; i < 2; ++i) {
    Vec2 u{g.b, lam[i] - g.a}, w{lam[i] - g.d, g.c};
    out[i] = std::hypot(u[0], u[1]) >= std::hypot(w[0], w[1]) ? u : w;
  }
  return out;
}

double distance_homogeneous(const Vec2& x1, const Vec2& x2, const Vec2& y1, const Vec2& y2) {
  double num = cross(y1, x1) * cross(y2, x2);
  double den = cross(y1, x2) * cross(y2, x1);
  if (den == 0) throw std::domain_error("geodesics share an endpoint");
  double r = num / den;
  if (!(r > 0)) throw std::domain_error("geodesics cross");
  if (r > 1) r = 1 / r;
  if (1 - r < 1e-14) throw std::domain_error("geodesics coincide");
  return 2 * std::atanh(std::sqrt(r));
}

}  // namespace

Isometry::Isometry(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {
  double dt = det();
  double scale = std::max(1.0, a * a + b * b + c * c + d * d);
  if (std::abs(std::abs(dt) - 1) > 1e-9 * scale)
    throw std::invalid_argument("isometry determinant must be +-1");
  double k = 1 / std::sqrt(std::abs(dt));
  a *= k, b *= k, c *= k, d *= k;
  orient = dt > 0 ? 1 : -1;
}

Isometry Isometry::normalized(double a, double b, double c, double d) {
  double dt = a * d - b * c;
  if (!(std::abs(dt) > 1e-300)) throw std::invalid_argument("singular matrix");
  double k = 1 / std::sqrt(std::abs(dt));
  Isometry g;
  g.a = a * k, g.b = b * k, g.c = c * k, g.d = d * k;
  g.orient = dt > 0 ? 1 : -1;
  return g;
}

Isometry Isometry::inverse() const {
  Isometry g;
  g.a = d * orient, g.b = -b * orient, g.c = -c * orient, g.d = a * orient;
  g.orient = orient;
  return g;
}

bool Isometry::approx_equal(const Isometry& o, double tol) const {
  auto close = [&](double s) {
    return orient == o.orient && std::abs(a - s * o.a) <= tol && std::abs(b - s * o.b) <= tol &&
           std::abs(c - s * o.c) <= tol && std::abs(d - s * o.d) <= tol;
  };
  return close(1) || close(-1);
}

Isometry compose(const Isometry& g, const Isometry& h) {
  // det is multiplicative; recomputing it from large entries would only
  // add cancellation error, so no renormalization here
  Isometry m;
  m.a = g.a * h.a + g.b * h.c, m.b = g.a * h.b + g.b * h.d;
  m.c = g.c * h.a + g.d * h.c, m.d = g.c * h.b + g.d * h.d;
  m.orient = g.orient * h.orient;
  return m;
}

std::string to_string(Kind k) {
  switch (k) {
    case Kind::Identity: return "identity";
    case Kind::Hyperbolic: return "hyperbolic";
    case Kind::Parabolic: return "parabolic";
    case Kind::Elliptic: return "elliptic";
    case Kind::GlideReflection: return "glide";
    case Kind::Reflection: return "reflection";
  }
  return "?";
}

IsometryKind classify(const Isometry& g, double tol) {
  double tr = g.trace();
  if (g.orient > 0) {
    double t = std::abs(tr);
    if (std::abs(t - 2) <= tol) {
      bool id = std::abs(g.b) <= tol && std::abs(g.c) <= tol && std::abs(g.a - g.d) <= tol;
      return {id ? Kind::Identity : Kind::Parabolic, 0};
    }
    if (t < 2) return {Kind::Elliptic, 0};
    return {Kind::Hyperbolic, 2 * std::acosh(t / 2)};
  }
  if (std::abs(tr) <= tol) return {Kind::Reflection, 0};
  // cosh(l) = (tr^2+2)/2, i.e. sinh(l/2) = |tr|/2
  return {Kind::GlideReflection, 2 * std::asinh(std::abs(tr) / 2)};
}

Isometry glide_sqrt(const Isometry& g) {
  if (classify(g).kind != Kind::Hyperbolic)
    throw std::domain_error("glide_sqrt needs a hyperbolic isometry");
  // Cayley-Hamilton for det h = -1: h^2 = tr(h) h + I
  double s = g.trace() > 0 ? 1 : -1;
  double tau = std::sqrt(s * g.trace() - 2);
  return Isometry::normalized((s * g.a - 1) / tau, s * g.b / tau, s * g.c / tau,
                              (s * g.d - 1) / tau);
}

std::array<double, 2> fixed_points(const Isometry& g) {
  auto v = eigenvectors(g);
  std::array<double, 2> out;
  for (int i = 0; i < 2; ++i)
    out[i] = v[i][1] == 0 ? (v[i][0] > 0 ? HUGE_VAL : -HUGE_VAL) : v[i][0] / v[i][1];
  return out;
}

double axis_distance(const Isometry& g, const Isometry& h) {
  auto kg = classify(g).kind, kh = classify(h).kind;
  auto ok = [](Kind k) { return k == Kind::Hyperbolic || k == Kind::GlideReflection; };
  if (!ok(kg) || !ok(kh)) throw std::domain_error("axis_distance needs axial isometries");
  auto x = eigenvectors(g), y = eigenvectors(h);
  return distance_homogeneous(x[0], x[1], y[0], y[1]);
}

double geodesic_distance(double x1, double x2, double y1, double y2) {
  return distance_homogeneous({x1, 1}, {x2, 1}, {y1, 1}, {y2, 1});
}

}  // namespace tsys
