#include "tsys/modular.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

#include "tsys/curves.hpp"
#include "tsys/hyptrig.hpp"

namespace tsys {

namespace {
// cancel n^2 = t^2 = s^3 = 1 (all hold modulo +-I)
std::string simplify(const std::string& w) {
  std::string out;
  for (char ch : w) {
    out += ch;
    for (;;) {
      auto n = out.size();
      if (n >= 2 && (out[n - 1] == 'n' || out[n - 1] == 't') && out[n - 2] == out[n - 1]) out.resize(n - 2);
      else if (n >= 3 && out.compare(n - 3, 3, "sss") == 0) out.resize(n - 3);
      else break;
    }
  }
  return out;
}
}  // namespace

MappingClass::MappingClass(std::int64_t a_, std::int64_t b_, std::int64_t c_, std::int64_t d_, std::string w)
    : a(a_), b(b_), c(c_), d(d_), word(std::move(w)) {
  if (det() != 1 && det() != -1) throw std::invalid_argument("mapping class needs det +-1");
  // sign normalization: first nonzero entry positive
  std::int64_t f = a != 0 ? a : b;
  if (f < 0) a = -a, b = -b, c = -c, d = -d;
}

MappingClass MappingClass::inverse() const {
  std::int64_t k = det();
  // modulo +-I: n^-1 = n, t^-1 = t, s^-1 = s^2
  std::string w;
  for (auto it = word.rbegin(); it != word.rend(); ++it) w += *it == 's' ? "ss" : std::string(1, *it);
  return MappingClass(d * k, -b * k, -c * k, a * k, simplify(w));
}

bool MappingClass::operator==(const MappingClass& o) const {
  return (a == o.a && b == o.b && c == o.c && d == o.d) ||
         (a == -o.a && b == -o.b && c == -o.c && d == -o.d);
}

std::string MappingClass::str() const {
  return "[[" + std::to_string(a) + "," + std::to_string(b) + "],[" + std::to_string(c) + "," +
         std::to_string(d) + "]]";
}

MappingClass operator*(const MappingClass& g, const MappingClass& h) {
  return MappingClass(g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d, g.c * h.a + g.d * h.c,
                      g.c * h.b + g.d * h.d, simplify(g.word + h.word));
}

Generators generator_matrices() {
  return {MappingClass(1, 0, 0, -1, "n"), MappingClass(0, -1, 1, 0, "t"), MappingClass(0, -1, 1, 1, "s")};
}

MappingClass dehn_twist() {
  // word found once by breadth-first search rather than assumed
  static const MappingClass T = [] {
    MappingClass target(1, 0, 1, 1);
    auto gen = generator_matrices();
    std::deque<MappingClass> q{MappingClass()};
    while (!q.empty()) {
      MappingClass g = q.front();
      q.pop_front();
      if (g == target) return MappingClass(target.a, target.b, target.c, target.d, g.word);
      if (g.word.size() >= 6) continue;
      for (auto& h : {gen.n, gen.t, gen.s}) q.push_back(g * h);
    }
    throw std::logic_error("Dehn twist not reached");
  }();
  return T;
}

MappingClass from_word(const std::string& w) {
  auto gen = generator_matrices();
  MappingClass g;
  for (char ch : w) {
    switch (ch) {
      case 'n': g = g * gen.n; break;
      case 't': g = g * gen.t; break;
      case 's': g = g * gen.s; break;
      case ' ': break;
      default: throw std::invalid_argument(std::string("bad generator ") + ch);
    }
  }
  return g;
}

std::vector<std::pair<std::string, bool>> check_relations() {
  MappingClass I;
  std::vector<std::pair<std::string, bool>> out;
  for (const char* r : {"ssstt", "ntnt", "nstnst", "nn", "tttt", "ssssss"}) {
    // n^-1 = n, so the inverse letters are already spelled out
    out.push_back({r, from_word(r) == I});
  }
  return out;
}

Slope act_on_slope(const MappingClass& g, const Slope& s) {
  return Slope(g.a * s.p + g.b * s.q, g.c * s.p + g.d * s.q);
}

namespace {

double orientable_length(const Slope& s, const SurfacePoint& p) {
  return length(GeodesicClass::orientable(s), p);
}

}  // namespace

SurfacePoint act_on_point(const MappingClass& g, const SurfacePoint& p) {
  MappingClass gi = g.inverse();
  double l1 = orientable_length(act_on_slope(gi, Slope(0, 1)), p);
  double l2 = orientable_length(act_on_slope(gi, Slope(1, 0)), p);
  double l3 = orientable_length(act_on_slope(gi, Slope(-1, 1)), p);
  return {trig::twist_from_lengths(l1, l2, l3, p.lX), l1, p.lX};
}

bool in_domain(const SurfacePoint& p, double eps) {
  return p.theta1 >= -eps && p.theta1 <= 0.5 + eps && p.l1 <= gamma2_length(p) + eps;
}

Reduction reduce(const SurfacePoint& p, double eps) {
  if (!p.valid()) throw std::invalid_argument("invalid surface point");
  if (std::abs(p.theta1) > 1e6) throw std::domain_error("twist too large to reduce");
  auto gen = generator_matrices();
  MappingClass T = dehn_twist();
  Reduction r{p, MappingClass()};
  SurfacePoint& q = r.point;
  for (int iter = 0; iter < 100000; ++iter) {
    // act(T^k) shifts the twist by -k
    double k = std::round(q.theta1);
    if (k != 0) {
      auto ki = static_cast<std::int64_t>(k);
      MappingClass Tk(1, 0, ki, 1);
      std::string unit = ki > 0 ? T.word : T.inverse().word;
      for (std::int64_t j = 0; j < std::llabs(ki); ++j) Tk.word += unit;
      q.theta1 -= k;
      r.g = Tk * r.g;
    }
    if (q.theta1 < 0) {
      q.theta1 = -q.theta1;
      r.g = gen.n * r.g;
    }
    if (std::abs(q.theta1) <= eps) q.theta1 = 0;
    double l2 = gamma2_length(q);
    if (!(l2 < q.l1 - eps)) return r;
    // t swaps gamma1 and gamma2 and sends gamma3 to gamma4
    double l4 = trig::twisted_length(q.theta1 + 1, q.l1, q.lX);
    q = {trig::twist_from_lengths(l2, q.l1, l4, q.lX), l2, q.lX};
    if (!q.valid() || !std::isfinite(q.theta1)) throw std::domain_error("point too degenerate to reduce");
    r.g = gen.t * r.g;
  }
  throw std::runtime_error("reduction did not terminate");
}

std::vector<MappingClass> adjacent_translates() {
  std::vector<MappingClass> out;
  for (const char* w : {"", "n", "t", "tn", "s", "ss", "stn", "nss", "sstn"}) {
    MappingClass g = from_word(w);
    g.word = w;
    out.push_back(g);
  }
  return out;
}

}  // namespace tsys
