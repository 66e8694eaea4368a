#pragma once

#include <array>
#include <string>
#include <vector>

#include "tsys/types.hpp"

namespace tsys {

// (d/dtheta1, d/dl1, d/dlX)
using Covector = std::array<double, 3>;

Covector differential(const GeodesicClass& g, const SurfacePoint& p);
// central differences with one Richardson step, on the plain length function
Covector differential_fd(const GeodesicClass& g, const SurfacePoint& p, double h = 1e-5);
bool has_closed_form_differential(const GeodesicClass& g);

// Maximize t subject to lambda_i >= t, sum lambda = 1, sum lambda_i v_i = 0.
// eutactic iff t >= slack; otherwise a functional y with y.v_i >= 0 for
// all i and > 0 for some separates 0 from the relative interior.
struct EutaxyCertificate {
  bool eutactic = false;
  double margin = 0;            // optimal t (negative: 0 not in the hull)
  std::vector<double> weights;  // convex coefficients when eutactic
  Covector separator{};         // when not eutactic
};

EutaxyCertificate eutaxy(const std::vector<Covector>& v, double slack = 1e-10);
int affine_rank(const std::vector<Covector>& v, double tol = 1e-8);

// Decided in the chart of the reduced point. The weights pair with
// `systoles` (input marking) in any chart; the separator is a functional
// in the reduced chart.
struct Verdict {
  bool value = false;
  EutaxyCertificate cert;
  std::vector<GeodesicClass> systoles;
};

Verdict is_eutactic(const SurfacePoint& p, double eps = 1e-9, double slack = 1e-10);
bool is_perfect(const SurfacePoint& p, double eps = 1e-9);

struct ExtremeVerdict {
  bool value = false;  // perfect and eutactic
  bool perfect = false, eutactic = false;
  int samples = 0, decreased = 0;  // local check by random perturbation
};
ExtremeVerdict is_extreme(const SurfacePoint& p, int samples = 1000, double radius = 1e-3, unsigned seed = 7,
                          double eps = 1e-9);

enum class Poly { OrientableQuadratic, TwoSystoleCubic, Golden };
std::string to_string(Poly k);
double solve_poly(Poly k);

// small dense LP: maximize c.x subject to A x <= b, x >= 0 (b >= 0 not
// required). Returns false if infeasible or unbounded.
bool simplex_max(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                 const std::vector<double>& c, std::vector<double>& x, double& value);

}  // namespace tsys
