#include <algorithm>
#include <cmath>
#include <map>

#include "doctest.h"
#include "helpers.hpp"
#include "tsys/curves.hpp"
#include "tsys/hyptrig.hpp"
#include "tsys/modular.hpp"
#include "tsys/systole.hpp"

using namespace tsys;
using G = GeodesicClass;

TEST_SUITE("curves") {
  TEST_CASE("slopes are primitive and sign-normalized") {
    CHECK(Slope(-2, -3) == Slope(2, 3));
    CHECK(Slope(-1, 0) == Slope(1, 0));
    CHECK(Slope(3, -1).str() == "-3/1");
    CHECK_THROWS_AS(Slope(2, 4), std::invalid_argument);
    CHECK_THROWS_AS(Slope(0, 0), std::invalid_argument);
  }

  TEST_CASE("class names") {
    CHECK(G::ovale().str() == "ovale");
    CHECK(G::orientable(Slope(2, 3)).str() == "o(2/3)");
    CHECK(G::dual(Slope(-1, 1)).str() == "d(-1/1)");
    CHECK(G::ovale() == G{G::Ovale, Slope(2, 1)});
    CHECK(G::orientable(Slope(0, 1)).one_sided() == false);
    CHECK(G::dual(Slope(0, 1)).one_sided());
  }

  TEST_CASE("lengths of the marked curves") {
    SurfacePoint p{0.3, 1.2, 0.9};
    CHECK(length(G::ovale(), p) == 0.9);
    CHECK(length(G::orientable(Slope(0, 1)), p) == 1.2);
    CHECK(length(G::orientable(Slope(1, 0)), p) == doctest::Approx(2.6714259943527661).epsilon(1e-13));
    CHECK(length(G::orientable(Slope(2, 3)), p) == doctest::Approx(7.4872269171365673).epsilon(1e-12));
    CHECK(length(G::dual(Slope(-7, 4)), p) == doctest::Approx(20.718220807525389).epsilon(1e-12));
    CHECK_THROWS_AS(length(G::ovale(), {0, 0, 1}), std::invalid_argument);
  }

  TEST_CASE("trace recursion agrees with the twisted closed form") {
    for (int i = 0; i < 50; ++i) {
      SurfacePoint p{testing::uni(-1, 1), testing::uni(0.3, 3), testing::uni(0.3, 3)};
      for (int k = -4; k <= 4; ++k) {
        double closed = trig::twisted_length(p.theta1 + k, p.l1, p.lX);
        CHECK(2 * std::acosh(orientable_trace(Slope(1, k), p) / 2) == doctest::Approx(closed).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("duality is monotone") {
    for (int i = 0; i < 100; ++i) {
      double l = testing::uni(0.1, 5), lx = testing::uni(0.1, 5), h = 1e-3;
      CHECK(trig::dual_length(l + h, lx) > trig::dual_length(l, lx));
      CHECK(trig::dual_length(l, lx + h) < trig::dual_length(l, lx));
      CHECK(trig::orientable_from_dual(trig::dual_length(l, lx), lx) == doctest::Approx(l).epsilon(1e-10));
    }
  }

  TEST_CASE("the eutaxy-argument form of l2 is a different function") {
    SurfacePoint p{0.25, 1.5, 2.0};
    CHECK(std::abs(gamma2_length_variant(p) - gamma2_length(p)) > 1e-2);
  }

  TEST_CASE("intersection numbers") {
    Slope a(0, 1), b(1, 0), c(1, 2);
    CHECK(intersection_number(G::orientable(a), G::orientable(b)) == 1);
    CHECK(intersection_number(G::orientable(b), G::orientable(c)) == 2);
    CHECK(intersection_number(G::orientable(a), G::orientable(a)) == 0);
    CHECK(intersection_number(G::orientable(a), G::dual(a)) == 0);
    CHECK(intersection_number(G::orientable(a), G::ovale()) == 0);
    CHECK(intersection_number(G::dual(a), G::ovale()) == 1);
    CHECK(intersection_number(G::ovale(), G::ovale()) == 0);
    // Farey-adjacent duals are disjoint
    CHECK(intersection_number(G::dual(a), G::dual(b)) == 0);
    CHECK(intersection_number(G::dual(a), G::dual(Slope(2, 1))) == 1);
    CHECK(farey_neighbors(a, b));
    CHECK(!farey_neighbors(b, c));
  }

  TEST_CASE("slope enumeration is complete") {
    for (int i = 0; i < 10; ++i) {
      SurfacePoint p = testing::point_in_domain();
      double L = p.l1 * 3 + 2;
      std::map<Slope, double> got;
      for (auto& [s, l] : short_slopes(L, p)) got[s] = l;
      for (int q = 0; q <= 40; ++q)
        for (int s = -40; s <= 40; ++s) {
          if (std::gcd(s, q) != 1 || (q == 0 && s != 1)) continue;
          Slope sl(s, q);
          double l = length(G::orientable(sl), p);
          if (l <= L - 1e-9) {
            REQUIRE(got.count(sl) == 1);
            CHECK(got[sl] == doctest::Approx(l).epsilon(1e-10));
          }
        }
    }
  }

  TEST_CASE("candidates are sorted and start at the systole") {
    for (int i = 0; i < 100; ++i) {
      SurfacePoint p = testing::point_in_domain();
      double s = systole(p).value;
      auto c = candidate_geodesics(s * 2, p);
      REQUIRE(!c.empty());
      CHECK(c.front().second == doctest::Approx(s).epsilon(1e-12));
      CHECK(std::is_sorted(c.begin(), c.end(), [](auto& a, auto& b) { return a.second < b.second; }));
      for (auto& [g, l] : c) CHECK(length(g, p) == doctest::Approx(l).epsilon(1e-9));
    }
  }

  TEST_CASE("candidate lengths are a modular invariant") {
    for (int i = 0; i < 30; ++i) {
      SurfacePoint p = testing::point_in_domain();
      std::string w;
      for (int k = 0; k < 8; ++k) w += "nts"[std::uniform_int_distribution<int>(0, 2)(testing::rng())];
      SurfacePoint q = act_on_point(from_word(w), p);
      double L = systole(p).value * 2.5;
      auto a = candidate_geodesics(L, p), b = candidate_geodesics(L, q);
      REQUIRE(a.size() == b.size());
      for (size_t j = 0; j < a.size(); ++j) CHECK(a[j].second == doctest::Approx(b[j].second).epsilon(1e-9));
    }
  }

  TEST_CASE("enumeration from a badly marked point") {
    // a long, strongly twisted basis: the raw recursion cancels here
    SurfacePoint p{0.47, 38.2, 2.0};
    auto c = candidate_geodesics(6, p);
    REQUIRE(!c.empty());
    for (auto& [g, l] : c) CHECK(l <= 6);
    CHECK(c.front().second == doctest::Approx(systole(p).value).epsilon(1e-9));
  }
}
