#pragma once

#include <map>
#include <string>
#include <utility>

#include "tsys/isometry.hpp"
#include "tsys/types.hpp"

namespace tsys {

// Marked holonomy group. A, B (det +1) generate the torus piece with
// [A,B] = ABA^-1B^-1 the boundary; G (det -1) is the self-gluing glide
// with G^2 = [A,B] mod sign. Pants groups also carry G1, G2, G3.
struct MarkedGroup {
  std::map<std::string, Isometry> gens;

  const Isometry& A() const { return gens.at("A"); }
  const Isometry& B() const { return gens.at("B"); }
  const Isometry& G() const { return gens.at("G"); }
};

MarkedGroup build_from_fn(const SurfacePoint& p);
MarkedGroup build_pants(const PantsCoords& c);

// Words: generator names from the group (A, B, G, G1, ...), lowercase
// first letter for the inverse, e.g. "GbaG1".
Isometry evaluate(const MarkedGroup& g, const std::string& word);

enum class Sidedness { TwoSided, OneSided };

// throws std::domain_error on elliptic/parabolic/identity results
std::pair<Sidedness, double> word_length(const MarkedGroup& g, const std::string& word);

// words realizing the curve classes in the marking of build_from_fn
std::string slope_word(const Slope& s);
std::string dual_word(const Slope& s);
inline const char* ovale_word() { return "G"; }

// pants triple is (gamma'1, gamma'2, gamma'3)
PantsCoords fn_to_pants(const SurfacePoint& p);
SurfacePoint pants_to_fn(const PantsCoords& c);

}  // namespace tsys
