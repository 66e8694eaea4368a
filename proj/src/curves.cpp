#include "tsys/curves.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "tsys/hyptrig.hpp"
#include "tsys/modular.hpp"

namespace tsys {

Slope::Slope(std::int64_t p_, std::int64_t q_) : p(p_), q(q_) {
  if (std::gcd(p, q) != 1) throw std::invalid_argument("slope must be primitive");
  if (q < 0 || (q == 0 && p < 0)) p = -p, q = -q;
}

std::string GeodesicClass::str() const {
  switch (tag) {
    case Ovale: return "ovale";
    case Orientable: return "o(" + slope.str() + ")";
    case Dual: return "d(" + slope.str() + ")";
  }
  return "?";
}

namespace {

struct Base {
  double tA, tB, tAB, tAb;
};

Base base_traces(const SurfacePoint& p) {
  double H = trig::half_height(p.l1, p.lX);
  double L = p.l1 / 2;
  return {2 * std::cosh(L), 2 * H * std::cosh(p.theta1 * L), 2 * H * std::cosh((p.theta1 + 1) * L),
          2 * H * std::cosh((p.theta1 - 1) * L)};
}

struct Edge {
  std::int64_t up, uq, vp, vq;
  double tu, tv, td;  // d = opposite vertex
};

double to_length(double t) { return 2 * trig::acosh_c(t / 2); }

}  // namespace

std::int64_t slope_det(const Slope& a, const Slope& b) { return a.p * b.q - a.q * b.p; }

double orientable_trace(const Slope& s, const SurfacePoint& p) {
  Base b = base_traces(p);
  if (s.p == 0) return b.tA;
  if (s.q == 0) return b.tB;
  int sg = s.p > 0 ? 1 : -1;
  Edge e{0, 1, sg, 0, b.tA, b.tB, sg > 0 ? b.tAb : b.tAB};
  for (;;) {
    std::int64_t wp = e.up + e.vp, wq = e.uq + e.vq;
    double tw = e.tu * e.tv - e.td;
    if (wp == s.p && wq == s.q) return tw;
    bool left = sg > 0 ? s.p * wq < wp * s.q : s.p * wq > wp * s.q;
    if (left)
      e = {e.up, e.uq, wp, wq, e.tu, tw, e.tv};
    else
      e = {wp, wq, e.vp, e.vq, tw, e.tv, e.tu};
  }
}

double gamma2_length(const SurfacePoint& p) { return trig::twisted_length(p.theta1, p.l1, p.lX); }

double gamma2_length_variant(const SurfacePoint& p) {
  double v = std::cosh(p.theta1 * p.l1 / 2) * std::cosh(p.lX / 2) / std::sinh(p.l1 / 2);
  return 2 * std::acosh(std::max(1.0, v));
}

double length(const GeodesicClass& g, const SurfacePoint& p) {
  if (!p.valid()) throw std::invalid_argument("invalid surface point");
  if (g.tag == GeodesicClass::Ovale) return p.lX;
  const Slope& s = g.slope;
  double l;
  if (s.p == 0)
    l = p.l1;
  else if (s.p == 1 || s.p == -1)
    l = trig::twisted_length(p.theta1 + double(s.q) / double(s.p), p.l1, p.lX);  // A^k B
  else
    l = to_length(orientable_trace(s, p));
  return g.tag == GeodesicClass::Orientable ? l : trig::dual_length(l, p.lX);
}

int intersection_number(const GeodesicClass& a, const GeodesicClass& b) {
  using G = GeodesicClass;
  if (a.tag == G::Ovale && b.tag == G::Ovale) return 0;
  if (a.tag == G::Ovale || b.tag == G::Ovale) return (a.tag == G::Dual || b.tag == G::Dual) ? 1 : 0;
  int d = static_cast<int>(std::llabs(slope_det(a.slope, b.slope)));
  if (a.tag == G::Orientable && b.tag == G::Orientable) return d;
  // a dual is a boundary arc of its slope closed up across the ovale
  if (a.tag == G::Dual && b.tag == G::Dual) return d == 0 ? 0 : d - 1;
  return d;
}

std::vector<std::pair<Slope, double>> short_slopes(double max_len, const SurfacePoint& p) {
  std::vector<std::pair<Slope, double>> out;
  if (!(max_len > 0)) return out;
  double T = 2 * std::cosh(max_len / 2);
  Base b = base_traces(p);
  if (b.tA <= T) out.push_back({Slope(0, 1), p.l1});
  if (b.tB <= T) out.push_back({Slope(1, 0), gamma2_length(p)});
  std::vector<Edge> stack{{0, 1, 1, 0, b.tA, b.tB, b.tAb}, {0, 1, -1, 0, b.tA, b.tB, b.tAB}};
  size_t visited = 0;
  while (!stack.empty()) {
    Edge e = stack.back();
    stack.pop_back();
    if (++visited > 50000000) throw std::runtime_error("slope enumeration did not terminate");
    double tw = e.tu * e.tv - e.td;
    if (tw < 1e-9 * e.tu * e.tv) throw std::domain_error("trace recursion lost precision; reduce the point first");
    // every descendant of w is at least tw once tw dominates its parents
    if (tw > T && tw >= std::max(e.tu, e.tv)) continue;
    std::int64_t wp = e.up + e.vp, wq = e.uq + e.vq;
    if (tw <= T) out.push_back({Slope(wp, wq), to_length(tw)});
    stack.push_back({e.up, e.uq, wp, wq, e.tu, tw, e.tv});
    stack.push_back({wp, wq, e.vp, e.vq, tw, e.tv, e.tu});
  }
  return out;
}

std::vector<Candidate> candidate_geodesics(double max_len, const SurfacePoint& p) {
  std::vector<Candidate> out;
  if (!(max_len > 0)) return out;
  // enumerate where the marked basis is short, then pull classes back
  Reduction r = reduce(p);
  const SurfacePoint& q = r.point;
  MappingClass gi = r.g.inverse();
  if (q.lX <= max_len) out.push_back({GeodesicClass::ovale(), q.lX});
  // dual length <= L  iff  cosh(l/2) <= sinh(L/2) sinh(lX/2)
  double cd = std::sinh(max_len / 2) * std::sinh(q.lX / 2);
  double lo_dual = cd >= 1 ? 2 * std::acosh(cd) : -1;
  for (auto& [s, l] : short_slopes(std::max(max_len, lo_dual), q)) {
    Slope back = act_on_slope(gi, s);
    if (l <= max_len) out.push_back({GeodesicClass::orientable(back), l});
    double ld = trig::dual_length(l, q.lX);
    if (ld <= max_len) out.push_back({GeodesicClass::dual(back), ld});
  }
  std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    return a.second != b.second ? a.second < b.second : a.first < b.first;
  });
  return out;
}

}  // namespace tsys
