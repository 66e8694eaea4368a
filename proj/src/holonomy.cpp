#include "tsys/holonomy.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "tsys/hyptrig.hpp"

namespace tsys {

namespace {

Isometry diag(double x, double y) { return Isometry::normalized(x, 0, 0, y); }

// translation by t along the geodesic through i and 1 (the unit circle)
Isometry transl_unit(double t) {
  return {std::cosh(t / 2), std::sinh(t / 2), std::sinh(t / 2), std::cosh(t / 2)};
}

Isometry commutator(const Isometry& a, const Isometry& b) {
  return a * b * a.inverse() * b.inverse();
}

std::vector<std::string> tokens(const std::string& w) {
  std::vector<std::string> out;
  for (size_t i = 0; i < w.size();) {
    if (!std::isalpha(static_cast<unsigned char>(w[i])))
      throw std::invalid_argument("bad word: " + w);
    size_t j = i + 1;
    while (j < w.size() && std::isdigit(static_cast<unsigned char>(w[j]))) ++j;
    out.push_back(w.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string invert(const std::string& w) {
  auto t = tokens(w);
  std::string out;
  for (auto it = t.rbegin(); it != t.rend(); ++it) {
    std::string s = *it;
    s[0] = std::isupper(static_cast<unsigned char>(s[0])) ? std::tolower(s[0]) : std::toupper(s[0]);
    out += s;
  }
  return out;
}

// Stern-Brocot descent keeping a basis (U, V) with [U,V] = [A,B] exactly,
// so that the glide G is fixed by the change of basis and the dual of the
// first basis element is G U^-1. Returns the word of s as a first element.
std::string first_basis_word(const Slope& s) {
  if (s.p == 0) return "A";
  int sg = s.p > 0 ? 1 : -1;
  std::int64_t up = 0, uq = 1, vp = sg, vq = 0;
  std::string U = "A", V = "B";
  auto step = [&](const std::string& X, const std::string& Y) { return X + (sg > 0 ? Y : invert(Y)); };
  for (;;) {
    std::int64_t wp = up + vp, wq = uq + vq;
    std::string W = step(U, V);
    if (wp == s.p && wq == s.q) return W;
    // both sides: move toward s, which lies strictly between u and v
    bool left = sg > 0 ? s.p * wq < wp * s.q : s.p * wq > wp * s.q;
    if (left) {
      V = step(V, U);
      vp = wp, vq = wq;
    } else {
      U = W;
      up = wp, uq = wq;
    }
  }
}

}  // namespace

MarkedGroup build_from_fn(const SurfacePoint& p) {
  if (!p.valid()) throw std::invalid_argument("invalid surface point");
  double c = trig::half_height(p.l1, p.lX);
  double s = std::cosh(p.lX / 2) / std::sinh(p.l1 / 2);
  double tau = p.theta1 * p.l1;
  MarkedGroup g;
  g.gens["A"] = diag(std::exp(p.l1 / 2), std::exp(-p.l1 / 2));
  g.gens["B"] = Isometry::normalized(c * std::exp(tau / 2), s, s, c * std::exp(-tau / 2));
  g.gens["G"] = glide_sqrt(commutator(g.A(), g.B()));
  return g;
}

MarkedGroup build_pants(const PantsCoords& c) {
  if (!c.valid()) throw std::invalid_argument("invalid pants coordinates");
  double h12 = trig::seam(c.n1, c.n2, c.n3), h31 = trig::seam(c.n3, c.n1, c.n2);
  // G1 on the imaginary axis; the seams to G2, G3 leave it from i and
  // from i e^{n1} (half a boundary turn apart)
  Isometry G1 = diag(std::exp(c.n1 / 2), -std::exp(-c.n1 / 2));
  Isometry T2 = transl_unit(h12);
  Isometry G2 = T2 * diag(std::exp(-c.n2 / 2), -std::exp(c.n2 / 2)) * T2.inverse();
  Isometry D = diag(std::exp(c.n1 / 2), std::exp(-c.n1 / 2));
  Isometry T3 = D * transl_unit(h31) * D.inverse();
  Isometry G3 = T3 * diag(std::exp(-c.n3 / 2), -std::exp(c.n3 / 2)) * T3.inverse();
  MarkedGroup g;
  g.gens["G1"] = G1, g.gens["G2"] = G2, g.gens["G3"] = G3;
  // torus marking: gamma1 = G2G3 misses G1, gamma2 = G1^-1G3^-1 misses G2
  g.gens["A"] = G2 * G3;
  g.gens["B"] = G1.inverse() * G3.inverse();
  g.gens["G"] = glide_sqrt(commutator(g.A(), g.B()));
  return g;
}

Isometry evaluate(const MarkedGroup& g, const std::string& word) {
  Isometry m;
  for (auto& t : tokens(word)) {
    bool inv = std::islower(static_cast<unsigned char>(t[0]));
    std::string name = t;
    name[0] = std::toupper(name[0]);
    auto it = g.gens.find(name);
    if (it == g.gens.end()) throw std::invalid_argument("unknown generator " + name);
    m = m * (inv ? it->second.inverse() : it->second);
  }
  return m;
}

std::pair<Sidedness, double> word_length(const MarkedGroup& g, const std::string& word) {
  if (word.empty()) throw std::invalid_argument("empty word");
  auto k = classify(evaluate(g, word));
  if (k.kind == Kind::Hyperbolic) return {Sidedness::TwoSided, k.length};
  if (k.kind == Kind::GlideReflection) return {Sidedness::OneSided, k.length};
  throw std::domain_error("word " + word + " is " + to_string(k.kind));
}

std::string slope_word(const Slope& s) {
  if (s.p == 1 && s.q == 0) return "B";
  return first_basis_word(s);
}

std::string dual_word(const Slope& s) {
  if (s.p == 1 && s.q == 0) return "GB";
  return "G" + invert(first_basis_word(s));
}

PantsCoords fn_to_pants(const SurfacePoint& p) {
  double l2 = trig::twisted_length(p.theta1, p.l1, p.lX);
  double l3 = trig::twisted_length(p.theta1 - 1, p.l1, p.lX);
  return {trig::dual_length(p.l1, p.lX), trig::dual_length(l2, p.lX), trig::dual_length(l3, p.lX)};
}

SurfacePoint pants_to_fn(const PantsCoords& c) {
  if (!c.valid()) throw std::invalid_argument("invalid pants coordinates");
  double lX = trig::seam(c.n1, c.n2, c.n3) + trig::seam(c.n2, c.n3, c.n1) + trig::seam(c.n3, c.n1, c.n2);
  double l1 = trig::orientable_from_dual(c.n1, lX);
  double l2 = trig::orientable_from_dual(c.n2, lX);
  double l3 = trig::orientable_from_dual(c.n3, lX);
  return {trig::twist_from_lengths(l1, l2, l3, lX), l1, lX};
}

}  // namespace tsys
