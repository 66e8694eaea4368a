#pragma once

#include <functional>
#include <vector>

// Thin wrappers over GSL's minimizers and root finders.

namespace tsys::opt {

using Vec = std::vector<double>;

// Nelder-Mead (nmsimplex2) minimization; stops when the simplex size
// falls below tol
Vec nelder_mead(const std::function<double(const Vec&)>& f, Vec x0, const Vec& step, double tol = 1e-12,
                int max_iter = 20000);

// Brent minimization of f on [a, b] from interior guess m (f(m) < f(a), f(b))
double brent_min(const std::function<double(double)>& f, double a, double m, double b, double tol = 1e-12);

// f(a), f(b) of opposite signs
double bisect(const std::function<double(double)>& f, double a, double b, double tol = 1e-12);
double brent_root(const std::function<double(double)>& f, double a, double b, double tol = 1e-14);

// F : R^d -> R^d, derivative-free hybrid Powell; returns false on failure
bool solve_system(const std::function<Vec(const Vec&)>& F, Vec& x, double tol = 1e-14, int max_iter = 200);

}  // namespace tsys::opt
