#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "tsys/hyptrig.hpp"
#include "tsys/isometry.hpp"

using namespace tsys;

TEST_SUITE("isometry") {
  TEST_CASE("determinant must be plus or minus one") {
    CHECK_THROWS_AS(Isometry(2, 0, 0, 1), std::invalid_argument);
    CHECK_NOTHROW(Isometry(1, 1, 0, 1));
    Isometry r(1, 0, 0, -1);
    CHECK(r.orient == -1);
    CHECK_THROWS_AS(Isometry::normalized(1, 2, 2, 4), std::invalid_argument);
    Isometry n = Isometry::normalized(2, 0, 0, 8);
    CHECK(n.det() == doctest::Approx(1).epsilon(1e-15));
  }

  TEST_CASE("inverse and composition") {
    Isometry g = Isometry::normalized(2, 1, 3, 2);
    CHECK((g * g.inverse()).approx_equal(Isometry::identity(), 1e-14));
    Isometry h = Isometry::normalized(1, 2, 3, -1);  // det -7
    CHECK(h.orient == -1);
    CHECK((h * h.inverse()).approx_equal(Isometry::identity(), 1e-14));
    CHECK((g * h).orient == -1);
    CHECK((h * h).orient == 1);
    // equality ignores the overall sign
    CHECK(g.approx_equal(Isometry(-g.a, -g.b, -g.c, -g.d), 1e-15));
  }

  TEST_CASE("classification and lengths") {
    Isometry a = Isometry::normalized(std::exp(1.0), 0, 0, std::exp(-1.0));
    auto k = classify(a);
    CHECK(k.kind == Kind::Hyperbolic);
    CHECK(k.length == doctest::Approx(2).epsilon(1e-14));
    auto gl = classify(Isometry::normalized(std::exp(0.5), 0, 0, -std::exp(-0.5)));
    CHECK(gl.kind == Kind::GlideReflection);
    CHECK(gl.length == doctest::Approx(1).epsilon(1e-14));
    CHECK(classify(Isometry(1, 1, 0, 1)).kind == Kind::Parabolic);
    CHECK(classify(Isometry(0, -1, 1, 0)).kind == Kind::Elliptic);
    CHECK(classify(Isometry(1, 0, 0, -1)).kind == Kind::Reflection);
    CHECK(classify(Isometry()).kind == Kind::Identity);
  }

  TEST_CASE("glide square root halves the translation length") {
    for (int i = 0; i < 50; ++i) {
      double l = testing::uni(0.1, 8);
      Isometry t = Isometry::normalized(std::cosh(l / 2), std::sinh(l / 2), std::sinh(l / 2), std::cosh(l / 2));
      Isometry c = Isometry::normalized(testing::uni(0.5, 2), testing::uni(-1, 1), 0, 1);
      Isometry g = c * t * c.inverse();
      Isometry h = glide_sqrt(g);
      CHECK(h.orient == -1);
      CHECK((h * h).approx_equal(g, 1e-10 * std::exp(l)));
      CHECK(classify(h).length == doctest::Approx(l / 2).epsilon(1e-12));
    }
    CHECK_THROWS(glide_sqrt(Isometry(0, -1, 1, 0)));
  }

  TEST_CASE("fixed points of a diagonal translation") {
    auto fp = fixed_points(Isometry::normalized(std::exp(1.0), 0, 0, std::exp(-1.0)));
    CHECK(std::isinf(fp[0]));
    CHECK(fp[1] == doctest::Approx(0));
    auto fp2 = fixed_points(Isometry::normalized(2, 1, 1, 1));  // z = (1 +- sqrt5)/2
    CHECK(fp2[0] == doctest::Approx((1 + std::sqrt(5.0)) / 2));
    CHECK(fp2[1] == doctest::Approx((1 - std::sqrt(5.0)) / 2));
  }

  TEST_CASE("distance between nested geodesics") {
    CHECK(geodesic_distance(-1, 1, -3, 3) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
    CHECK(geodesic_distance(-3, 3, -1, 1) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
    CHECK_THROWS_AS(geodesic_distance(-1, 1, 0, 2), std::domain_error);  // crossing
    CHECK_THROWS_AS(geodesic_distance(-1, 1, 1, 2), std::domain_error);  // shared endpoint
  }

  TEST_CASE("axes of an equilateral pants triple are a third of the ovale apart") {
    // G1, G2 axes at distance seam(n, n, n); three seams make up the ovale
    double n = 0.8;
    double h = trig::seam(n, n, n);
    Isometry g1 = Isometry::normalized(std::exp(n / 2), 0, 0, -std::exp(-n / 2));
    Isometry t = Isometry::normalized(std::cosh(h / 2), std::sinh(h / 2), std::sinh(h / 2), std::cosh(h / 2));
    Isometry g2 = t * Isometry::normalized(std::exp(-n / 2), 0, 0, -std::exp(n / 2)) * t.inverse();
    CHECK(axis_distance(g1, g2) == doctest::Approx(h).epsilon(1e-12));
    double lX = 3 * h;
    CHECK(axis_distance(g1, g2) == doctest::Approx(lX / 3).epsilon(1e-12));
    CHECK_THROWS_AS(axis_distance(g1, g1), std::domain_error);
  }

  TEST_CASE("conjugation preserves type and length") {
    for (int i = 0; i < 100; ++i) {
      double l = testing::uni(0.1, 5);
      Isometry g = Isometry::normalized(std::exp(l / 2), 0, 0, (i % 2 ? -1 : 1) * std::exp(-l / 2));
      Isometry c = Isometry::normalized(testing::uni(-2, 2), testing::uni(-2, 2), testing::uni(-2, 2), testing::uni(-2, 2));
      auto a = classify(g), b = classify(c * g * c.inverse());
      CHECK(a.kind == b.kind);
      CHECK(b.length == doctest::Approx(a.length).epsilon(1e-9));
    }
  }
}
