#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tsys/types.hpp"

namespace tsys {

// Element of PGL(2,Z) acting on slopes (p, q) as column vectors.
struct MappingClass {
  std::int64_t a = 1, b = 0, c = 0, d = 1;
  std::string word;  // factorization in {n, t, s} when known ("" = identity)

  MappingClass() = default;
  MappingClass(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::string w = "");

  std::int64_t det() const { return a * d - b * c; }
  MappingClass inverse() const;
  bool operator==(const MappingClass& o) const;  // modulo +-I
  std::string str() const;
};

MappingClass operator*(const MappingClass& g, const MappingClass& h);

struct Generators {
  MappingClass n, t, s;
};
Generators generator_matrices();

// Dehn twist along gamma1: fixes 0/1, sends 1/0 to 1/1
MappingClass dehn_twist();

// parse a word in n, t, s
MappingClass from_word(const std::string& w);

// the six presentation relations, each with its verdict
std::vector<std::pair<std::string, bool>> check_relations();

Slope act_on_slope(const MappingClass& g, const Slope& s);

// Remarking by g: l_sigma(act(g, p)) = l_{g^-1 sigma}(p); a left action.
SurfacePoint act_on_point(const MappingClass& g, const SurfacePoint& p);

// 0 <= theta1 <= 1/2 and l1 <= l2, within eps
bool in_domain(const SurfacePoint& p, double eps = 1e-9);

struct Reduction {
  SurfacePoint point;
  MappingClass g;  // point = act_on_point(g, original)
};

Reduction reduce(const SurfacePoint& p, double eps = 1e-9);

// the translates of D adjacent to D: D, nD, tD, tnD, sD, s^2D, stnD, ns^2D, s^2tnD
std::vector<MappingClass> adjacent_translates();

}  // namespace tsys
