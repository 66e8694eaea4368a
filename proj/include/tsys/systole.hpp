#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tsys/modular.hpp"
#include "tsys/types.hpp"

namespace tsys {

// Cells of D. Suffix _0: wall theta1 = 0, _h: wall theta1 = 1/2.
enum class CellId {
  C1, C2, C3,
  F12, F2, F23, F3, F13,
  A123, A23,
  F1_0, F2_0, F3_0, A12_0, A2_0, A3_0, A13_0,
  F1_h, F2_h, F3_h, A12_h, A2_h, A23_h, A3_h, A13_h,
  S123, XP, XH
};

std::string to_string(CellId c);
std::optional<CellId> cell_from_string(const std::string& s);
const std::vector<CellId>& all_cells();

// systole classes every point of the cell shares, in the D marking
std::vector<GeodesicClass> cell_systoles(CellId c);

CellId classify_cell(const SurfacePoint& p, double eps = 1e-9);

// a point classified as c, deep inside its cell where the cell is open
SurfacePoint cell_representative(CellId c);

struct SystoleResult {
  double value = 0;
  std::vector<GeodesicClass> classes;  // in the marking of the input point
};

SystoleResult systole(const SurfacePoint& p, double eps = 1e-9);
// orientable closed curves, squares of one-sided ones included
SystoleResult orientable_systole(const SurfacePoint& p, double eps = 1e-9);
SystoleResult nonorientable_systole(const SurfacePoint& p, double eps = 1e-9);

// min over systems of k pairwise disjoint simple geodesics of the
// longest member (k = 2 or 3)
double k_systole(const SurfacePoint& p, int k);

// special points
SurfacePoint hexagonal_point();   // X(H)
SurfacePoint pentagonal_point();  // X(P)

struct SliceSpec {
  enum Kind { Torus, Klein, ProjectivePlane } kind = Torus;
  double b1 = 1, b2 = 1;
};

struct SliceResult {
  SurfacePoint point;
  double systole = 0;      // optimized
  double closed_form = 0;  // systole predicted by the boundary-length formula
  // the formula's own quantity (cosh(s/2) for the torus, cosh(s) otherwise),
  // optimized and predicted
  double formula_opt = 0, formula_pred = 0;
};

SliceResult slice_extremum(const SliceSpec& s);

// systole of the bordered piece at a slice point
double slice_objective(const SliceSpec& s, const SurfacePoint& p);

// maximizer of the 2-systole on the wall theta1 = 1/2
struct TwoSystoleMax {
  SurfacePoint point;  // polished
  SurfacePoint raw;    // direct search, before polishing
  double value = 0;
};
TwoSystoleMax two_systole_maximizer();

}  // namespace tsys
