#include "tsys/systole.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tsys/curves.hpp"
#include "tsys/holonomy.hpp"
#include "tsys/hyptrig.hpp"
#include "tsys/optimize.hpp"

namespace tsys {

namespace {

using G = GeodesicClass;
const Slope S1(0, 1), S2(1, 0), S3(-1, 1), S4(1, 1);

bool tie(double a, double b, double eps) {
  return std::abs(a - b) <= eps * std::max({1.0, std::abs(a), std::abs(b)});
}

// lengths of the marked curves at a point of D
struct Marked {
  double l1, d1, lX, l2, d2, l3, d3, l4, d4;
  explicit Marked(const SurfacePoint& q) {
    l1 = q.l1, lX = q.lX;
    l2 = trig::twisted_length(q.theta1, q.l1, q.lX);
    l3 = trig::twisted_length(q.theta1 - 1, q.l1, q.lX);
    l4 = trig::twisted_length(q.theta1 + 1, q.l1, q.lX);
    d1 = trig::dual_length(l1, lX), d2 = trig::dual_length(l2, lX);
    d3 = trig::dual_length(l3, lX), d4 = trig::dual_length(l4, lX);
  }
};

using Weighted = std::vector<std::pair<G, double>>;

SystoleResult pick_min(const Weighted& c, const MappingClass& g, double eps) {
  SystoleResult r;
  r.value = std::numeric_limits<double>::infinity();
  for (auto& [cls, l] : c) r.value = std::min(r.value, l);
  MappingClass gi = g.inverse();
  for (auto& [cls, l] : c)
    if (tie(l, r.value, eps)) {
      G back = cls;
      if (cls.tag != G::Ovale) back.slope = act_on_slope(gi, cls.slope);
      if (std::find(r.classes.begin(), r.classes.end(), back) == r.classes.end()) r.classes.push_back(back);
    }
  std::sort(r.classes.begin(), r.classes.end());
  return r;
}

}  // namespace

std::string to_string(CellId c) {
  static const char* names[] = {"C1",    "C2",   "C3",   "F12",  "F2",   "F23",   "F3",   "F13",  "A123", "A23",
                                "F1_0",  "F2_0", "F3_0", "A12_0", "A2_0", "A3_0", "A13_0", "F1_h", "F2_h", "F3_h",
                                "A12_h", "A2_h", "A23_h", "A3_h", "A13_h", "S123", "XP",   "XH"};
  return names[static_cast<int>(c)];
}

const std::vector<CellId>& all_cells() {
  static const std::vector<CellId> v = [] {
    std::vector<CellId> out;
    for (int i = 0; i <= static_cast<int>(CellId::XH); ++i) out.push_back(static_cast<CellId>(i));
    return out;
  }();
  return v;
}

std::optional<CellId> cell_from_string(const std::string& s) {
  for (CellId c : all_cells())
    if (to_string(c) == s) return c;
  return std::nullopt;
}

std::vector<GeodesicClass> cell_systoles(CellId c) {
  G o1 = G::orientable(S1), o2 = G::orientable(S2), d1 = G::dual(S1), d2 = G::dual(S2), d3 = G::dual(S3),
    X = G::ovale();
  std::vector<G> v;
  switch (c) {
    case CellId::C1: case CellId::F1_0: case CellId::F1_h: v = {o1}; break;
    case CellId::C2: case CellId::F2_0: case CellId::F2_h: v = {d1}; break;
    case CellId::C3: case CellId::F3: case CellId::F3_0: case CellId::F3_h:
    case CellId::A3_0: case CellId::A3_h: v = {X}; break;
    case CellId::F12: case CellId::A12_0: case CellId::A12_h: v = {o1, d1}; break;
    case CellId::F2: case CellId::A2_0: v = {d1, d2}; break;
    case CellId::F23: case CellId::A23_h: v = {d1, X}; break;
    // the printed table gives gamma'1, gammaX for A13 on theta1 = 1/2; the
    // locus is l1 = lX, so gamma1 is meant
    case CellId::F13: case CellId::A13_0: case CellId::A13_h: v = {o1, X}; break;
    case CellId::A123: case CellId::S123: v = {o1, d1, X}; break;
    case CellId::A23: v = {d1, d2, X}; break;
    case CellId::A2_h: v = {d1, d2, d3}; break;
    case CellId::XP: v = {o1, d1, o2, d2, X}; break;
    case CellId::XH: v = {d1, d2, d3, X}; break;
  }
  std::sort(v.begin(), v.end());
  return v;
}

CellId classify_cell(const SurfacePoint& p, double eps) {
  if (!in_domain(p, eps)) throw std::domain_error("classify_cell: point not in D");
  Marked m(p);
  double lo = std::min({m.l1, m.d1, m.lX});
  bool s1 = tie(m.l1, lo, eps), sd = tie(m.d1, lo, eps), sx = tie(m.lX, lo, eps);
  bool wall = tie(m.l1, m.l2, eps);
  bool on0 = p.theta1 <= eps, onh = std::abs(p.theta1 - 0.5) <= eps;
  int key = (s1 ? 1 : 0) | (sd ? 2 : 0) | (sx ? 4 : 0);
  using C = CellId;
  // some combinations are empty (e.g. gamma1 alone on l1 = l2); numerical
  // near-misses fall back to the neighbouring non-wall cell
  if (on0) {
    if (key == 7) return C::XP;
    if (wall && key == 2) return C::A2_0;
    if (wall && key == 4) return C::A3_0;
    switch (key) {
      case 1: return C::F1_0;
      case 2: return C::F2_0;
      case 4: return C::F3_0;
      case 3: return C::A12_0;
      case 5: return C::A13_0;
      default: return m.d1 < m.lX ? C::F2_0 : C::F3_0;  // F23 does not reach theta1 = 0
    }
  }
  if (onh) {
    if (wall && key == 6) return C::XH;
    if (wall && key == 2) return C::A2_h;
    if (wall && key == 4) return C::A3_h;
    switch (key) {
      case 1: return C::F1_h;
      case 2: return C::F2_h;
      case 4: return C::F3_h;
      case 3: return C::A12_h;
      case 6: return C::A23_h;
      case 5: return C::A13_h;
      default: return C::S123;
    }
  }
  if (wall && key == 2) return C::F2;
  if (wall && key == 4) return C::F3;
  if (wall && key == 6) return C::A23;
  switch (key) {
    case 1: return C::C1;
    case 2: return C::C2;
    case 4: return C::C3;
    case 3: return C::F12;
    case 6: return C::F23;
    case 5: return C::F13;
    default: return C::A123;
  }
}

SystoleResult systole(const SurfacePoint& p, double eps) {
  Reduction r = reduce(p, eps);
  Marked m(r.point);
  return pick_min({{G::orientable(S1), m.l1},
                   {G::dual(S1), m.d1},
                   {G::ovale(), m.lX},
                   {G::orientable(S2), m.l2},
                   {G::dual(S2), m.d2},
                   {G::orientable(S3), m.l3},
                   {G::dual(S3), m.d3},
                   {G::orientable(S4), m.l4},
                   {G::dual(S4), m.d4}},
                  r.g, eps);
}

SystoleResult orientable_systole(const SurfacePoint& p, double eps) {
  Reduction r = reduce(p, eps);
  Marked m(r.point);
  return pick_min({{G::orientable(S1), m.l1},
                   {G::orientable(S2), m.l2},
                   {G::orientable(S3), m.l3},
                   {G::ovale(), 2 * m.lX},
                   {G::dual(S1), 2 * m.d1},
                   {G::dual(S2), 2 * m.d2},
                   {G::dual(S3), 2 * m.d3}},
                  r.g, eps);
}

SystoleResult nonorientable_systole(const SurfacePoint& p, double eps) {
  Reduction r = reduce(p, eps);
  Marked m(r.point);
  return pick_min({{G::ovale(), m.lX}, {G::dual(S1), m.d1}, {G::dual(S2), m.d2}, {G::dual(S3), m.d3},
                   {G::dual(S4), m.d4}},
                  r.g, eps);
}

double k_systole(const SurfacePoint& p, int k) {
  if (k != 2 && k != 3) throw std::invalid_argument("k_systole: k must be 2 or 3");
  SurfacePoint q = reduce(p).point;
  Marked m(q);
  // a known system bounds the answer, so the catalog below it is complete
  double U = k == 2 ? std::max(m.l1, m.d1) : std::max({m.d1, m.d2, m.d3});
  auto c = candidate_geodesics(U * (1 + 1e-12) + 1e-12, q);
  // the ovale and every orientable curve meet all but one dual, so
  // 3-systems are dual triples
  if (k == 3) std::erase_if(c, [](const Candidate& x) { return x.first.tag != G::Dual; });
  double best = U;
  size_t n = c.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      if (c[i].first == c[j].first || intersection_number(c[i].first, c[j].first) != 0) continue;
      if (k == 2) {
        best = std::min(best, std::max(c[i].second, c[j].second));
        continue;
      }
      for (size_t l = j + 1; l < n; ++l) {
        if (c[l].first == c[i].first || c[l].first == c[j].first) continue;
        if (intersection_number(c[i].first, c[l].first) || intersection_number(c[j].first, c[l].first)) continue;
        best = std::min(best, std::max({c[i].second, c[j].second, c[l].second}));
      }
    }
  return best;
}

SurfacePoint hexagonal_point() {
  double X = (3 + std::sqrt(17.0)) / 4;
  return {0.5, 2 * std::acosh(X), 2 * std::asinh(std::sqrt(X))};
}

SurfacePoint pentagonal_point() {
  double phi = (1 + std::sqrt(5.0)) / 2;
  double l = 2 * std::acosh(phi);
  return {0, l, l};
}

// ---- cell representatives ---------------------------------------------

namespace {

// In x = cosh^2(l1/2), z = cosh^2(lX/2) at fixed theta1 every wall of D's
// decomposition is a graph z = f(x).
enum class Locus { L1X, LdX, L1d, Wall };

double locus_z(Locus k, double theta, double x) {
  switch (k) {
    case Locus::L1X: return x;
    case Locus::LdX: return 1 + std::sqrt(x);
    case Locus::L1d: return 1 + x / (x - 1);
    case Locus::Wall: {
      double c = std::cosh(theta * std::acosh(std::sqrt(x)));
      return x * (x - 1) / (c * c) - x + 1;
    }
  }
  return NAN;
}

SurfacePoint from_xz(double theta, double x, double z) {
  return {theta, 2 * std::acosh(std::sqrt(x)), 2 * std::acosh(std::sqrt(z))};
}

bool lands_in(CellId c, const SurfacePoint& p) {
  try {
    return p.valid() && std::isfinite(p.l1) && std::isfinite(p.lX) && classify_cell(p) == c;
  } catch (const std::domain_error&) {
    return false;
  }
}

struct Recipe {
  double theta;
  std::vector<Locus> on;
};

Recipe recipe(CellId c) {
  using C = CellId;
  using L = Locus;
  const double mid = 0.25;
  switch (c) {
    case C::C1: case C::C2: case C::C3: return {mid, {}};
    case C::F12: return {mid, {L::L1d}};
    case C::F13: return {mid, {L::L1X}};
    case C::F23: return {mid, {L::LdX}};
    case C::F2: case C::F3: return {mid, {L::Wall}};
    case C::A123: return {mid, {L::L1X, L::LdX}};
    case C::A23: return {mid, {L::LdX, L::Wall}};
    case C::F1_0: case C::F2_0: case C::F3_0: return {0, {}};
    case C::A12_0: return {0, {L::L1d}};
    case C::A13_0: return {0, {L::L1X}};
    case C::A2_0: case C::A3_0: return {0, {L::Wall}};
    case C::XP: return {0, {L::L1X, L::LdX}};
    case C::F1_h: case C::F2_h: case C::F3_h: return {0.5, {}};
    case C::A12_h: return {0.5, {L::L1d}};
    case C::A13_h: return {0.5, {L::L1X}};
    case C::A23_h: return {0.5, {L::LdX}};
    case C::A2_h: case C::A3_h: return {0.5, {L::Wall}};
    case C::S123: return {0.5, {L::L1X, L::LdX}};
    case C::XH: return {0.5, {L::LdX, L::Wall}};
  }
  throw std::invalid_argument("unknown cell");
}

}  // namespace

SurfacePoint cell_representative(CellId c) {
  Recipe r = recipe(c);
  // log-spaced x; xs[i] - 1 from 1e-2 to 1e3
  std::vector<double> xs;
  for (int i = 0; i <= 400; ++i) xs.push_back(1 + std::pow(10.0, -2 + 5.0 * i / 400));
  if (r.on.size() == 2) {
    auto gap = [&](double x) { return locus_z(r.on[0], r.theta, x) - locus_z(r.on[1], r.theta, x); };
    for (size_t i = 0; i + 1 < xs.size(); ++i) {
      double a = gap(xs[i]), b = gap(xs[i + 1]);
      if (!(std::isfinite(a) && std::isfinite(b)) || (a > 0) == (b > 0)) continue;
      double x = opt::brent_root(gap, xs[i], xs[i + 1], 1e-15);
      SurfacePoint p = from_xz(r.theta, x, locus_z(r.on[0], r.theta, x));
      if (lands_in(c, p)) return p;
    }
    throw std::runtime_error("no representative for " + to_string(c));
  }
  // longest run of hits along the locus (or along each column), take its middle
  auto best_on_line = [&](const std::function<SurfacePoint(size_t)>& at, size_t n, size_t& len) {
    size_t run = 0, best = 0, end = 0;
    for (size_t i = 0; i < n; ++i) {
      run = lands_in(c, at(i)) ? run + 1 : 0;
      if (run > best) best = run, end = i;
    }
    len = best;
    return best ? at(end + 1 - (best + 1) / 2) : SurfacePoint{};
  };
  size_t len = 0;
  if (r.on.size() == 1) {
    SurfacePoint p =
        best_on_line([&](size_t i) { return from_xz(r.theta, xs[i], locus_z(r.on[0], r.theta, xs[i])); },
                     xs.size(), len);
    if (len) return p;
    throw std::runtime_error("no representative for " + to_string(c));
  }
  // open cell: deepest hit of a product scan, judged along both axes
  SurfacePoint bestp;
  size_t bestlen = 0;
  for (size_t i = 0; i < xs.size(); i += 8) {
    size_t lz = 0;
    SurfacePoint p = best_on_line([&](size_t j) { return from_xz(r.theta, xs[i], xs[j]); }, xs.size(), lz);
    if (!lz) continue;
    size_t lx = 0;
    double z = std::pow(std::cosh(p.lX / 2), 2);
    best_on_line([&](size_t j) { return from_xz(r.theta, xs[j], z); }, xs.size(), lx);
    if (std::min(lz, lx) > bestlen) bestlen = std::min(lz, lx), bestp = p;
  }
  if (bestlen) return bestp;
  throw std::runtime_error("no representative for " + to_string(c));
}

// ---- slices -------------------------------------------------------------

namespace {

// the curves living in the bordered piece of each slice
std::vector<G> slice_classes(const SliceSpec& s, const SurfacePoint& p) {
  std::vector<G> out;
  if (s.kind == SliceSpec::Torus) return out;  // handled by reduction
  if (s.kind == SliceSpec::ProjectivePlane) return {G::dual(S3), G::dual(S4)};
  // one-holed Klein bottle: gamma1 and the duals of the neighbours of 0/1
  out.push_back(G::orientable(S1));
  auto k0 = static_cast<std::int64_t>(std::llround(-p.theta1));
  for (std::int64_t k = k0 - 2; k <= k0 + 2; ++k) out.push_back(G::dual(Slope(1, k)));
  return out;
}

double klein_lx_min(double b1) { return 2 * std::asinh(1 / std::sinh(b1 / 4)); }

SurfacePoint klein_point(double b1, double theta, double u) {
  double lX = klein_lx_min(b1) + std::exp(u);
  return {theta, trig::orientable_from_dual(b1 / 2, lX), lX};
}

SurfacePoint torus_point(double b1, double theta, double u) { return {theta, std::exp(u), b1 / 2}; }

// Equalize the near-active lengths: with d parameters and d+1 active
// curves the maximum of their minimum is where all d+1 agree.
opt::Vec polish(const std::function<SurfacePoint(const opt::Vec&)>& point, const std::vector<G>& active,
                opt::Vec x) {
  if (active.size() != x.size() + 1) return x;
  auto F = [&](const opt::Vec& y) {
    SurfacePoint p = point(y);
    opt::Vec r;
    if (!p.valid() || !std::isfinite(p.l1)) return opt::Vec(y.size(), NAN);
    double l0 = length(active[0], p);
    for (size_t i = 1; i < active.size(); ++i) r.push_back(length(active[i], p) - l0);
    return r;
  };
  opt::Vec y = x;
  if (opt::solve_system(F, y)) return y;
  return x;
}

std::vector<G> near_active(const std::vector<std::pair<G, double>>& c, double lo, double tol) {
  std::vector<G> out;
  for (auto& [g, l] : c)
    if (l <= lo + tol) out.push_back(g);
  return out;
}

}  // namespace

double slice_objective(const SliceSpec& s, const SurfacePoint& p) {
  if (s.kind == SliceSpec::Torus) return reduce(p).point.l1;
  double lo = std::numeric_limits<double>::infinity();
  for (auto& g : slice_classes(s, p)) lo = std::min(lo, length(g, p));
  return lo;
}

SliceResult slice_extremum(const SliceSpec& s) {
  if (!(s.b1 > 0) || (s.kind == SliceSpec::ProjectivePlane && !(s.b2 > 0)))
    throw std::invalid_argument("slice lengths must be positive");
  SliceResult out;
  if (s.kind == SliceSpec::ProjectivePlane) {
    double n1 = s.b1 / 2, n2 = s.b2 / 2;
    auto at = [&](double n3) { return pants_to_fn({n1, n2, n3}); };
    std::function<double(double)> f = [&](double v) {
      double n3 = std::exp(v);
      return -std::min(n3, length(G::dual(S4), at(n3)));
    };
    // coarse scan in log n3, then Brent, then the equality l'3 = l'4
    double bv = 0, bf = 1e300;
    for (double v = -8; v <= 6; v += 0.25)
      if (f(v) < bf) bf = f(v), bv = v;
    double v = opt::brent_min(f, bv - 0.25, bv, bv + 0.25, 1e-10);
    std::function<double(double)> g = [&](double w) { return std::exp(w) - length(G::dual(S4), at(std::exp(w))); };
    if (g(v - 0.25) < 0 && g(v + 0.25) > 0) v = opt::brent_root(g, v - 0.25, v + 0.25);
    out.point = at(std::exp(v));
    out.systole = -f(v);
    out.formula_opt = std::cosh(out.systole);
    out.formula_pred = std::cosh(s.b1 / 2) + std::cosh(s.b2 / 2) + 1;
    out.closed_form = std::acosh(out.formula_pred);
    return out;
  }

  std::function<SurfacePoint(const opt::Vec&)> point;
  if (s.kind == SliceSpec::Torus)
    point = [&](const opt::Vec& x) { return torus_point(s.b1, x[0], x[1]); };
  else
    point = [&](const opt::Vec& x) { return klein_point(s.b1, x[0], x[1]); };
  auto f = [&](const opt::Vec& x) {
    // box keeps the search near D, away from absurd twists
    if (!(x[0] > -1 && x[0] < 1.5 && x[1] > -8 && x[1] < 3)) return 1e300;
    SurfacePoint p = point(x);
    if (!p.valid() || !std::isfinite(p.l1)) return 1e300;
    try {
      return -slice_objective(s, p);
    } catch (const std::domain_error&) {
      return 1e300;
    }
  };
  // multistart Nelder-Mead from the best cells of a coarse grid
  std::vector<std::pair<double, opt::Vec>> grid;
  for (double th = 0; th <= 0.5 + 1e-12; th += 0.05)
    for (double u = -6; u <= 4; u += 0.25) grid.push_back({f({th, u}), {th, u}});
  std::sort(grid.begin(), grid.end(), [](auto& a, auto& b) { return a.first < b.first; });
  opt::Vec best = grid[0].second;
  double fbest = grid[0].first;
  for (size_t i = 0; i < std::min<size_t>(4, grid.size()); ++i) {
    opt::Vec x = grid[i].second;
    for (int round = 0; round < 3; ++round) x = opt::nelder_mead(f, x, {0.02, 0.1}, 1e-13);
    if (f(x) < fbest) fbest = f(x), best = x;
  }
  if (s.kind == SliceSpec::Torus) {
    // polish in the reduced marking, where the basis is short
    SurfacePoint q = reduce(point(best)).point;
    best = {q.theta1, std::log(q.l1)};
  }
  SurfacePoint p = point(best);
  double lo = -fbest;
  std::vector<std::pair<G, double>> lens;
  if (s.kind == SliceSpec::Torus) {
    for (auto& [sl, l] : short_slopes(lo + 1e-2, p)) lens.push_back({G::orientable(sl), l});
  } else {
    for (auto& g : slice_classes(s, p)) lens.push_back({g, length(g, p)});
  }
  opt::Vec y = polish(point, near_active(lens, lo, 1e-3), best);
  if (f(y) <= fbest + 1e-12) best = y, fbest = f(y);
  out.point = point(best);
  out.systole = -fbest;
  if (s.kind == SliceSpec::Torus) {
    out.formula_opt = std::cosh(out.systole / 2);
    out.formula_pred = std::cosh(s.b1 / 6) + 0.5;
    out.closed_form = 2 * std::acosh(out.formula_pred);
  } else {
    out.formula_opt = std::cosh(out.systole);
    out.formula_pred = std::cosh(s.b1 / 4) + 1;
    out.closed_form = std::acosh(out.formula_pred);
  }
  return out;
}

TwoSystoleMax two_systole_maximizer() {
  auto point = [](const opt::Vec& x) { return SurfacePoint{0.5, std::exp(x[0]), std::exp(x[1])}; };
  auto f = [&](const opt::Vec& x) { return -k_systole(point(x), 2); };
  opt::Vec best;
  double fb = 1e300;
  for (double u = -1.5; u <= 2; u += 0.125)
    for (double v = -1.5; v <= 2; v += 0.125)
      if (double y = f({u, v}); y < fb) fb = y, best = {u, v};
  for (int round = 0; round < 3; ++round) best = opt::nelder_mead(f, best, {0.02, 0.02}, 1e-13);
  TwoSystoleMax out;
  out.raw = point(best);
  // the maximizer sits where l1 = l(gamma'1) = l2 on this wall
  auto F = [&](const opt::Vec& x) {
    SurfacePoint p = point(x);
    return opt::Vec{p.l1 - trig::dual_length(p.l1, p.lX), p.l1 - trig::twisted_length(0.5, p.l1, p.lX)};
  };
  opt::Vec y = best;
  bool ok = opt::solve_system(F, y);
  out.point = ok && f(y) <= f(best) + 1e-9 ? point(y) : out.raw;
  out.value = k_systole(out.point, 2);
  return out;
}

}  // namespace tsys
