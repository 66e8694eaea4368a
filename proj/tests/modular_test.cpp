#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "tsys/curves.hpp"
#include "tsys/modular.hpp"
#include "tsys/systole.hpp"

using namespace tsys;

namespace {

std::string random_word(int max_len) {
  int n = std::uniform_int_distribution<int>(1, max_len)(testing::rng());
  std::string w;
  for (int i = 0; i < n; ++i) w += "nts"[std::uniform_int_distribution<int>(0, 2)(testing::rng())];
  return w;
}

double dist(const SurfacePoint& a, const SurfacePoint& b) {
  return std::max({std::abs(a.theta1 - b.theta1), std::abs(a.l1 - b.l1), std::abs(a.lX - b.lX)});
}

}  // namespace

TEST_SUITE("modular") {
  TEST_CASE("presentation relations hold") {
    auto rel = check_relations();
    CHECK(rel.size() == 6);
    for (auto& [w, ok] : rel) {
      INFO(w);
      CHECK(ok);
    }
  }

  TEST_CASE("generators") {
    auto g = generator_matrices();
    CHECK(g.n.det() == -1);
    CHECK(g.t.det() == 1);
    CHECK(g.s.det() == 1);
    CHECK(from_word("sss") == MappingClass());
    CHECK(from_word("tt") == MappingClass());
    CHECK_THROWS_AS(from_word("x"), std::invalid_argument);
  }

  TEST_CASE("the Dehn twist along gamma1") {
    MappingClass T = dehn_twist();
    CHECK(T == MappingClass(1, 0, 1, 1));
    CHECK(T.word == "tss");
    CHECK(from_word(T.word) == T);
    CHECK(act_on_slope(T, Slope(0, 1)) == Slope(0, 1));
    CHECK(act_on_slope(T, Slope(1, 0)) == Slope(1, 1));
    CHECK(act_on_slope(T, Slope(-1, 1)) == Slope(-1, 0));
  }

  TEST_CASE("inverse words evaluate to inverse matrices") {
    for (int i = 0; i < 50; ++i) {
      MappingClass g = from_word(random_word(12)), h = from_word(random_word(12));
      CHECK(h * h.inverse() == MappingClass());
      CHECK(from_word(h.inverse().word) == h.inverse());
      CHECK(from_word((g * h).word) == g * h);
    }
  }

  TEST_CASE("words are kept free of n^2, t^2, s^3") {
    for (int i = 0; i < 50; ++i) {
      MappingClass g = from_word(random_word(20));
      CHECK(g.word.find("nn") == std::string::npos);
      CHECK(g.word.find("tt") == std::string::npos);
      CHECK(g.word.find("sss") == std::string::npos);
      CHECK((g * g.inverse()).word.empty());
    }
  }

  TEST_CASE("twist and reflection act on the twist coordinate") {
    SurfacePoint p{0.3, 1.4, 0.8};
    SurfacePoint q = act_on_point(dehn_twist(), p);
    CHECK(q.theta1 == doctest::Approx(p.theta1 - 1).epsilon(1e-12));
    CHECK(q.l1 == doctest::Approx(p.l1));
    SurfacePoint r = act_on_point(generator_matrices().n, p);
    CHECK(r.theta1 == doctest::Approx(-p.theta1).epsilon(1e-12));
    CHECK(r.l1 == doctest::Approx(p.l1));
  }

  TEST_CASE("act_on_point is a left action") {
    for (int i = 0; i < 30; ++i) {
      SurfacePoint p = testing::point_in_domain();
      MappingClass g = from_word(random_word(5)), h = from_word(random_word(5));
      CHECK(dist(act_on_point(g * h, p), act_on_point(g, act_on_point(h, p))) < 1e-8);
    }
  }

  TEST_CASE("reduce normalizes the twist") {
    Reduction r = reduce({-3.2, 1, 1});
    CHECK(r.point.theta1 >= 0);
    CHECK(r.point.theta1 <= 0.5);
    CHECK(in_domain(r.point));
    CHECK_THROWS_AS(reduce({0, -1, 1}), std::invalid_argument);
  }

  TEST_CASE("reduce records the reducing class") {
    for (int i = 0; i < 100; ++i) {
      SurfacePoint p{testing::uni(-3, 3), testing::uni(0.1, 5), testing::uni(0.1, 5)};
      Reduction r = reduce(p);
      CHECK(in_domain(r.point));
      INFO(p.theta1, " ", p.l1, " ", p.lX);
      CHECK(dist(act_on_point(r.g, p), r.point) < 1e-7);  // acosh near 1 costs ~sqrt(eps)
      CHECK(from_word(r.g.word) == r.g);
    }
  }

  TEST_CASE("reduce is idempotent and orbit invariant") {
    for (int i = 0; i < 100; ++i) {
      SurfacePoint p{testing::uni(-1, 1), testing::uni(0.3, 3), testing::uni(0.3, 3)};
      MappingClass g = from_word(random_word(12));
      Reduction a = reduce(p), b = reduce(act_on_point(g, p));
      CHECK(dist(a.point, b.point) < 1e-8);
      Reduction again = reduce(a.point);
      CHECK(dist(again.point, a.point) == 0);
      CHECK(again.g == MappingClass());
      CHECK(systole(p).value == doctest::Approx(systole(act_on_point(g, p)).value).epsilon(1e-10));
    }
  }

  TEST_CASE("adjacent translates tile around D") {
    auto tr = adjacent_translates();
    CHECK(tr.size() == 9);
    for (size_t i = 0; i < tr.size(); ++i)
      for (size_t j = i + 1; j < tr.size(); ++j) CHECK(!(tr[i] == tr[j]));
    // an interior point of D is moved out of D by every nontrivial translate
    for (int k = 0; k < 20; ++k) {
      SurfacePoint p = testing::point_in_domain();
      for (auto& g : tr) {
        bool stays = in_domain(act_on_point(g, p), -1e-9);
        CHECK(stays == (g == MappingClass()));
      }
    }
  }

  TEST_CASE("domain predicate") {
    CHECK(in_domain({0.25, 1, 1}));
    CHECK(!in_domain({0.6, 1, 1}));
    CHECK(!in_domain({-0.1, 1, 1}));
    CHECK(!in_domain({0, 5, 0.1}));  // l1 > l2
  }
}
