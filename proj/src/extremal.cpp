#include "tsys/extremal.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "tsys/curves.hpp"
#include "tsys/hyptrig.hpp"
#include "tsys/modular.hpp"
#include "tsys/optimize.hpp"
#include "tsys/systole.hpp"

namespace tsys {

bool has_closed_form_differential(const GeodesicClass& g) {
  return g.tag == GeodesicClass::Ovale || g.slope.p == 0 || g.slope.p == 1 || g.slope.p == -1;
}

namespace {

// gradient of the orientable length of slope s (p = 0 or +-1)
Covector orientable_grad(const Slope& s, const SurfacePoint& p) {
  if (s.p == 0) return {0, 1, 0};
  double t = p.theta1 + double(s.q) / double(s.p);
  double sh1 = std::sinh(p.l1 / 2), chX = std::cosh(p.lX / 2);
  double r = chX / sh1, H = std::sqrt(1 + r * r);
  double drdl1 = -chX * std::cosh(p.l1 / 2) / (2 * sh1 * sh1);
  double drdlX = std::sinh(p.lX / 2) / (2 * sh1);
  double u = t * p.l1 / 2;
  double F = H * std::cosh(u);
  double k = 2 / std::sqrt(F * F - 1);
  return {k * H * std::sinh(u) * p.l1 / 2,
          k * (H * std::sinh(u) * t / 2 + std::cosh(u) * r * drdl1 / H),
          k * std::cosh(u) * r * drdlX / H};
}

}  // namespace

Covector differential(const GeodesicClass& g, const SurfacePoint& p) {
  if (g.tag == GeodesicClass::Ovale) return {0, 0, 1};
  if (!has_closed_form_differential(g)) return differential_fd(g, p);
  Covector d = orientable_grad(g.slope, p);
  if (g.tag == GeodesicClass::Orientable) return d;
  // l' = 2 asinh(cosh(l/2)/sinh(lX/2))
  double l = length(GeodesicClass::orientable(g.slope), p);
  double shX = std::sinh(p.lX / 2);
  double q = std::cosh(l / 2) / shX;
  double k = 2 / std::sqrt(1 + q * q);
  double a = k * std::sinh(l / 2) / (2 * shX);
  double bX = -k * std::cosh(l / 2) * std::cosh(p.lX / 2) / (2 * shX * shX);
  return {a * d[0], a * d[1], a * d[2] + bX};
}

Covector differential_fd(const GeodesicClass& g, const SurfacePoint& p, double h) {
  Covector out{};
  for (int i = 0; i < 3; ++i) {
    auto D = [&](double s) {
      SurfacePoint a = p, b = p;
      double* pa = i == 0 ? &a.theta1 : i == 1 ? &a.l1 : &a.lX;
      double* pb = i == 0 ? &b.theta1 : i == 1 ? &b.l1 : &b.lX;
      *pa += s, *pb -= s;
      return (length(g, a) - length(g, b)) / (2 * s);
    };
    out[i] = (4 * D(h / 2) - D(h)) / 3;
  }
  return out;
}

// ---- linear programming -----------------------------------------------

bool simplex_max(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                 const std::vector<double>& c, std::vector<double>& x, double& value) {
  const double tol = 1e-12;
  size_t m = A.size(), n = c.size();
  // columns: x (n), slack (m), artificial (m); last column rhs
  size_t cols = n + 2 * m + 1, rhs = cols - 1;
  std::vector<std::vector<double>> T(m, std::vector<double>(cols, 0));
  std::vector<size_t> basis(m);
  for (size_t i = 0; i < m; ++i) {
    double sg = b[i] < 0 ? -1 : 1;
    for (size_t j = 0; j < n; ++j) T[i][j] = sg * A[i][j];
    T[i][n + i] = sg;
    T[i][rhs] = sg * b[i];
    if (sg > 0) {
      basis[i] = n + i;
    } else {
      T[i][n + m + i] = 1;
      basis[i] = n + m + i;
    }
  }
  auto pivot = [&](size_t r, size_t col) {
    double pv = T[r][col];
    for (auto& v : T[r]) v /= pv;
    for (size_t i = 0; i < m; ++i)
      if (i != r && T[i][col] != 0) {
        double f = T[i][col];
        for (size_t j = 0; j < cols; ++j) T[i][j] -= f * T[r][j];
      }
    basis[r] = col;
  };
  // Bland's rule; obj holds the reduced costs of a maximization
  auto run = [&](const std::vector<double>& obj, size_t ncols) -> bool {
    for (int it = 0; it < 10000; ++it) {
      size_t enter = ncols;
      for (size_t j = 0; j < ncols && enter == ncols; ++j) {
        double red = obj[j];
        for (size_t i = 0; i < m; ++i) red -= obj[basis[i]] * T[i][j];
        if (red > tol) enter = j;
      }
      if (enter == ncols) return true;
      size_t leave = m;
      double best = 0;
      for (size_t i = 0; i < m; ++i)
        if (T[i][enter] > tol) {
          double ratio = T[i][rhs] / T[i][enter];
          if (leave == m || ratio < best - tol || (std::abs(ratio - best) <= tol && basis[i] < basis[leave]))
            leave = i, best = ratio;
        }
      if (leave == m) return false;  // unbounded
      pivot(leave, enter);
    }
    return false;
  };
  // phase 1: maximize -sum(artificial)
  std::vector<double> o1(cols - 1, 0);
  for (size_t i = 0; i < m; ++i) o1[n + m + i] = -1;
  run(o1, cols - 1);
  double infeas = 0;
  for (size_t i = 0; i < m; ++i)
    if (basis[i] >= n + m) infeas += T[i][rhs];
  if (infeas > 1e-9) return false;
  // drive remaining (zero) artificials out of the basis
  for (size_t i = 0; i < m; ++i)
    if (basis[i] >= n + m)
      for (size_t j = 0; j < n + m; ++j)
        if (std::abs(T[i][j]) > tol) {
          pivot(i, j);
          break;
        }
  std::vector<double> o2(cols - 1, 0);
  for (size_t j = 0; j < n; ++j) o2[j] = c[j];
  if (!run(o2, n + m)) return false;
  x.assign(n, 0);
  for (size_t i = 0; i < m; ++i)
    if (basis[i] < n) x[basis[i]] = T[i][rhs];
  value = 0;
  for (size_t j = 0; j < n; ++j) value += c[j] * x[j];
  return true;
}

EutaxyCertificate eutaxy(const std::vector<Covector>& v, double slack) {
  EutaxyCertificate cert;
  size_t m = v.size();
  if (m == 0) return cert;
  // variables lambda_1..m, t
  std::vector<std::vector<double>> A;
  std::vector<double> b;
  for (size_t i = 0; i < m; ++i) {
    std::vector<double> row(m + 1, 0);
    row[i] = -1, row[m] = 1;
    A.push_back(row), b.push_back(0);
  }
  std::vector<double> ones(m + 1, 1);
  ones[m] = 0;
  A.push_back(ones), b.push_back(1);
  for (auto& x : ones) x = -x;
  A.push_back(ones), b.push_back(-1);
  for (int k = 0; k < 3; ++k) {
    std::vector<double> row(m + 1, 0);
    for (size_t i = 0; i < m; ++i) row[i] = v[i][k];
    A.push_back(row), b.push_back(0);
    for (auto& x : row) x = -x;
    A.push_back(row), b.push_back(0);
  }
  std::vector<double> c(m + 1, 0), x;
  c[m] = 1;
  double t;
  if (simplex_max(A, b, c, x, t)) {
    cert.margin = t;
    cert.eutactic = t >= slack;
    if (cert.eutactic) cert.weights.assign(x.begin(), x.begin() + m);
  } else {
    cert.margin = -1;
  }
  if (cert.eutactic) return cert;
  // separator: y in the unit box with y.v_i >= 0, maximizing sum y.v_i
  std::vector<std::vector<double>> B;
  std::vector<double> bb;
  for (size_t i = 0; i < m; ++i) {
    std::vector<double> row(6);
    for (int k = 0; k < 3; ++k) row[k] = -v[i][k], row[k + 3] = v[i][k];
    B.push_back(row), bb.push_back(0);
  }
  for (int k = 0; k < 6; ++k) {
    std::vector<double> row(6, 0);
    row[k] = 1;
    B.push_back(row), bb.push_back(1);
  }
  std::vector<double> cy(6, 0), y;
  for (size_t i = 0; i < m; ++i)
    for (int k = 0; k < 3; ++k) cy[k] += v[i][k], cy[k + 3] -= v[i][k];
  double val;
  if (simplex_max(B, bb, cy, y, val))
    for (int k = 0; k < 3; ++k) cert.separator[k] = y[k] - y[k + 3];
  return cert;
}

int affine_rank(const std::vector<Covector>& v, double tol) {
  if (v.size() < 2) return 0;
  Eigen::MatrixXd M(v.size() - 1, 3);
  for (size_t i = 1; i < v.size(); ++i)
    for (int k = 0; k < 3; ++k) M(i - 1, k) = v[i][k] - v[0][k];
  Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
  lu.setThreshold(tol);
  return static_cast<int>(lu.rank());
}

namespace {

// Verdicts are chart-invariant, so they are decided at the reduced point,
// where every systole is a marked curve with closed-form differential.
// Convex weights do not depend on the chart either.
struct Reduced {
  std::vector<GeodesicClass> input;  // systoles, input marking
  std::vector<Covector> cov;         // same order, reduced chart
};

Reduced reduced_covectors(const SurfacePoint& p, double eps) {
  Reduction r = reduce(p, eps);
  MappingClass gi = r.g.inverse();
  Reduced out;
  for (auto& g : systole(r.point, eps).classes) {
    out.cov.push_back(differential(g, r.point));
    GeodesicClass back = g;
    if (g.tag != GeodesicClass::Ovale) back.slope = act_on_slope(gi, g.slope);
    out.input.push_back(back);
  }
  return out;
}

}  // namespace

Verdict is_eutactic(const SurfacePoint& p, double eps, double slack) {
  Reduced r = reduced_covectors(p, eps);
  Verdict out;
  out.systoles = r.input;
  out.cert = eutaxy(r.cov, slack);
  out.value = out.cert.eutactic;
  return out;
}

bool is_perfect(const SurfacePoint& p, double eps) { return affine_rank(reduced_covectors(p, eps).cov) == 3; }

ExtremeVerdict is_extreme(const SurfacePoint& p, int samples, double radius, unsigned seed, double eps) {
  ExtremeVerdict out;
  out.perfect = is_perfect(p, eps);
  out.eutactic = is_eutactic(p, eps).value;
  out.value = out.perfect && out.eutactic;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N;
  double s0 = systole(p, eps).value;
  for (int i = 0; i < samples; ++i) {
    double d[3] = {N(rng), N(rng), N(rng)};
    double nrm = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
    SurfacePoint q{p.theta1 + radius * d[0] / nrm, p.l1 + radius * d[1] / nrm, p.lX + radius * d[2] / nrm};
    ++out.samples;
    if (systole(q, eps).value < s0) ++out.decreased;
  }
  return out;
}

std::string to_string(Poly k) {
  switch (k) {
    case Poly::OrientableQuadratic: return "2X^2-5X+1";
    case Poly::TwoSystoleCubic: return "2X^3-3X^2-2X+2";
    case Poly::Golden: return "X^2-X-1";
  }
  return "?";
}

double solve_poly(Poly k) {
  switch (k) {
    case Poly::OrientableQuadratic:
      return opt::bisect([](double X) { return 2 * X * X - 5 * X + 1; }, 2, 3, 1e-13);
    case Poly::TwoSystoleCubic:
      return opt::bisect([](double X) { return 2 * X * X * X - 3 * X * X - 2 * X + 2; }, 1.7, 1.8, 1e-13);
    case Poly::Golden:
      return opt::bisect([](double X) { return X * X - X - 1; }, 1, 2, 1e-13);
  }
  throw std::invalid_argument("unknown polynomial");
}

}  // namespace tsys
