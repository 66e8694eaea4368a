#include "tsys/optimize.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_min.h>
#include <gsl/gsl_multimin.h>
#include <gsl/gsl_multiroots.h>
#include <gsl/gsl_roots.h>

#include <cmath>
#include <memory>
#include <stdexcept>

namespace tsys::opt {

namespace {

// GSL aborts by default; we check status codes instead
struct QuietGsl {
  QuietGsl() { gsl_set_error_handler_off(); }
} const quiet;

template <class F>
double call1(double x, void* p) {
  return (*static_cast<const F*>(p))(x);
}

using Fn1 = std::function<double(double)>;
using FnN = std::function<double(const Vec&)>;
using FnV = std::function<Vec(const Vec&)>;

double calln(const gsl_vector* v, void* p) {
  Vec x(v->size);
  for (size_t i = 0; i < x.size(); ++i) x[i] = gsl_vector_get(v, i);
  double y = (*static_cast<const FnN*>(p))(x);
  return std::isfinite(y) ? y : GSL_POSINF;
}

int callv(const gsl_vector* v, void* p, gsl_vector* out) {
  Vec x(v->size);
  for (size_t i = 0; i < x.size(); ++i) x[i] = gsl_vector_get(v, i);
  Vec y = (*static_cast<const FnV*>(p))(x);
  for (size_t i = 0; i < y.size(); ++i) {
    if (!std::isfinite(y[i])) return GSL_EDOM;
    gsl_vector_set(out, i, y[i]);
  }
  return GSL_SUCCESS;
}

template <class T, void (*Free)(T*)>
using Owned = std::unique_ptr<T, decltype([](T* t) { Free(t); })>;

}  // namespace

Vec nelder_mead(const FnN& f, Vec x0, const Vec& step, double tol, int max_iter) {
  size_t n = x0.size();
  Owned<gsl_vector, gsl_vector_free> x(gsl_vector_alloc(n)), ss(gsl_vector_alloc(n));
  for (size_t i = 0; i < n; ++i) gsl_vector_set(x.get(), i, x0[i]), gsl_vector_set(ss.get(), i, step[i]);
  gsl_multimin_function fn{&calln, n, const_cast<FnN*>(&f)};
  Owned<gsl_multimin_fminimizer, gsl_multimin_fminimizer_free> s(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n));
  gsl_multimin_fminimizer_set(s.get(), &fn, x.get(), ss.get());
  for (int it = 0; it < max_iter; ++it) {
    if (gsl_multimin_fminimizer_iterate(s.get())) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s.get()), tol) == GSL_SUCCESS) break;
  }
  for (size_t i = 0; i < n; ++i) x0[i] = gsl_vector_get(s->x, i);
  return x0;
}

double brent_min(const Fn1& f, double a, double m, double b, double tol) {
  gsl_function fn{&call1<Fn1>, const_cast<Fn1*>(&f)};
  Owned<gsl_min_fminimizer, gsl_min_fminimizer_free> s(gsl_min_fminimizer_alloc(gsl_min_fminimizer_brent));
  if (gsl_min_fminimizer_set(s.get(), &fn, m, a, b)) throw std::domain_error("brent_min: bad bracket");
  for (int it = 0; it < 500; ++it) {
    gsl_min_fminimizer_iterate(s.get());
    double lo = gsl_min_fminimizer_x_lower(s.get()), hi = gsl_min_fminimizer_x_upper(s.get());
    if (gsl_min_test_interval(lo, hi, tol, 0) == GSL_SUCCESS) break;
  }
  return gsl_min_fminimizer_x_minimum(s.get());
}

namespace {

double root_with(const gsl_root_fsolver_type* T, const Fn1& f, double a, double b, double tol) {
  gsl_function fn{&call1<Fn1>, const_cast<Fn1*>(&f)};
  Owned<gsl_root_fsolver, gsl_root_fsolver_free> s(gsl_root_fsolver_alloc(T));
  if (gsl_root_fsolver_set(s.get(), &fn, a, b)) throw std::domain_error("root not bracketed");
  for (int it = 0; it < 1000; ++it) {
    gsl_root_fsolver_iterate(s.get());
    double lo = gsl_root_fsolver_x_lower(s.get()), hi = gsl_root_fsolver_x_upper(s.get());
    if (gsl_root_test_interval(lo, hi, tol, 0) == GSL_SUCCESS) break;
  }
  return gsl_root_fsolver_root(s.get());
}

}  // namespace

double bisect(const Fn1& f, double a, double b, double tol) {
  return root_with(gsl_root_fsolver_bisection, f, a, b, tol);
}

double brent_root(const Fn1& f, double a, double b, double tol) {
  return root_with(gsl_root_fsolver_brent, f, a, b, tol);
}

bool solve_system(const FnV& F, Vec& x, double tol, int max_iter) {
  size_t n = x.size();
  gsl_multiroot_function fn{&callv, n, const_cast<FnV*>(&F)};
  Owned<gsl_vector, gsl_vector_free> v(gsl_vector_alloc(n));
  for (size_t i = 0; i < n; ++i) gsl_vector_set(v.get(), i, x[i]);
  Owned<gsl_multiroot_fsolver, gsl_multiroot_fsolver_free> s(
      gsl_multiroot_fsolver_alloc(gsl_multiroot_fsolver_hybrids, n));
  if (gsl_multiroot_fsolver_set(s.get(), &fn, v.get())) return false;
  int status = GSL_CONTINUE;
  for (int it = 0; it < max_iter && status == GSL_CONTINUE; ++it) {
    if (gsl_multiroot_fsolver_iterate(s.get())) break;
    status = gsl_multiroot_test_residual(s->f, tol);
  }
  Vec out(n);
  for (size_t i = 0; i < n; ++i) out[i] = gsl_vector_get(s->x, i);
  double res = 0;
  for (size_t i = 0; i < n; ++i) res = std::max(res, std::abs(gsl_vector_get(s->f, i)));
  if (!(res < 1e-10)) return false;
  x = out;
  return true;
}

}  // namespace tsys::opt
