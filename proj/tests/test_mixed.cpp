#include <catch2/catch_amalgamated.hpp>

#include "rootbound/mixed.hpp"

using namespace rootbound;

namespace {

Point pt(std::initializer_list<long> xs) {
  Point p;
  for (long x : xs) p.emplace_back(x);
  return p;
}

ConcavePWA pwa(std::vector<Point> pts) {
  return ConcavePWA::from_lifted_points(std::move(pts));
}

Polytope unit_square() {
  return Polytope::convex_hull({pt({0, 0}), pt({1, 0}), pt({0, 1}), pt({1, 1})});
}

// Newton polytope of the running example: area 5/2.
Polytope pentagon() {
  return Polytope::convex_hull(
      {pt({0, 0}), pt({1, 0}), pt({2, 1}), pt({1, 2}), pt({0, 1})});
}

ConcavePWA theta_inf() { return pwa({pt({0, 1}), pt({1, 2}), pt({2, 1})}); }

// Rises with slope 2 to (1/2, 2), then flat on [0,3].
ConcavePWA ramp_rho() {
  return pwa({pt({0, 1}), {Rational(1, 2), Rational(2)}, pt({3, 2})});
}

// Rises with slope 2 to (1, 1), then flat on [0,2].
ConcavePWA ramp_sigma() { return pwa({pt({0, -1}), pt({1, 1}), pt({2, 1})}); }

ConcavePWA pyramid() {
  return pwa({pt({0, 0, 0}), pt({2, 0, 0}), pt({0, 2, 0}), pt({2, 2, 0}),
              pt({1, 1, 1})});
}

}  // namespace

TEST_CASE("mixed volume by inclusion-exclusion") {
  auto sq = unit_square();
  REQUIRE(mixed_volume_ie({sq, sq}) == 2);
  auto pent = pentagon();
  REQUIRE(mixed_volume_ie({pent, pent}) == 5);
  auto hseg = Polytope::convex_hull({pt({0, 0}), pt({1, 0})});
  REQUIRE(mixed_volume_ie({sq, hseg}) == 1);
  REQUIRE(mixed_volume_ie({hseg, sq}) == 1);

  // One-dimensional case and the unmixed identity.
  auto seg = Polytope::convex_hull({pt({-1}), pt({3})});
  REQUIRE(mixed_volume_ie({seg}) == 4);
  auto tri = Polytope::convex_hull({pt({0, 0}), pt({3, 0}), pt({0, 2})});
  REQUIRE(mixed_volume_ie({tri, tri}) == 2 * tri.volume());

  REQUIRE(mixed_volume_ie({}) == 1);
  REQUIRE_THROWS_AS(mixed_volume_ie({sq}), invalid_input);
}

TEST_CASE("mixed volume by support decomposition") {
  auto sq = unit_square();
  auto pent = pentagon();
  auto hseg = Polytope::convex_hull({pt({0, 0}), pt({1, 0})});
  auto seg = Polytope::convex_hull({pt({-1}), pt({3})});
  auto tri = Polytope::convex_hull({pt({0, 0}), pt({3, 0}), pt({0, 2})});

  REQUIRE(mixed_volume_dec({sq, sq}) == 2);
  REQUIRE(mixed_volume_dec({pent, pent}) == 5);
  REQUIRE(mixed_volume_dec({sq, hseg}) == 1);
  REQUIRE(mixed_volume_dec({hseg, sq}) == 1);
  REQUIRE(mixed_volume_dec({seg}) == 4);
  REQUIRE(mixed_volume_dec({tri, sq}) == mixed_volume_ie({tri, sq}));
  REQUIRE(mixed_volume_dec({pent, tri}) == mixed_volume_ie({pent, tri}));

  // A point factor kills the mixed volume.
  auto dot = Polytope::convex_hull({pt({5, 5})});
  REQUIRE(mixed_volume_dec({sq, dot}) == 0);
  REQUIRE(mixed_volume_ie({sq, dot}) == 0);
}

TEST_CASE("mixed integral, defining route") {
  auto theta = theta_inf();
  REQUIRE(mixed_integral_def({theta, theta}) == 6);
  REQUIRE(mixed_integral_def({ramp_rho(), ramp_sigma()}) == 6);

  auto origin = pwa({pt({0, 0})});
  REQUIRE(mixed_integral_def({origin, origin}) == 0);

  // Base case: a single function on a zero-dimensional space evaluates.
  REQUIRE(mixed_integral_def({pwa({pt({7})})}) == 7);

  // Symmetry and linearity in the sup-convolution sense.
  REQUIRE(mixed_integral_def({ramp_sigma(), ramp_rho()}) == 6);
  auto a = pwa({pt({0, 0}), pt({1, 0}), pt({2, -1})});
  auto b = theta;
  auto c = pwa({pt({0, -1}), pt({2, 0})});
  REQUIRE(mixed_integral_def({sup_convolution(a, b), c}) ==
          mixed_integral_def({a, c}) + mixed_integral_def({b, c}));

  REQUIRE_THROWS_AS(mixed_integral_def({}), invalid_input);
  REQUIRE_THROWS_AS(mixed_integral_def({theta, pyramid()}), invalid_input);
}

TEST_CASE("mixed integral via lifted mixed volumes") {
  auto theta = theta_inf();
  REQUIRE(mixed_integral_mv({theta, theta}) == 6);
  REQUIRE(mixed_integral_mv({ramp_rho(), ramp_sigma()}) == 6);
  REQUIRE(mixed_integral_mv({pwa({pt({0, 0})}), pwa({pt({0, 0})})}) == 0);
  REQUIRE(mixed_integral_mv({pwa({pt({-3})})}) == -3);

  // The floor level is a free choice; shifting it must not change anything.
  REQUIRE(mixed_integral_mv({theta, theta}, Int(-1)) == 6);
  REQUIRE(mixed_integral_mv({ramp_rho(), ramp_sigma()}, Int(-2)) == 6);
  REQUIRE_THROWS_AS(mixed_integral_mv({theta, theta}, Int(1)), invalid_input);
}

TEST_CASE("mixed integral decomposition with exposed terms") {
  auto dec = mixed_integral_dec_terms({ramp_rho(), ramp_sigma()});
  REQUIRE(dec.total == 6);
  REQUIRE(dec.facet_terms.size() == 2);
  REQUIRE(dec.roof_terms.size() == 2);

  CHECK(dec.facet_terms[0].direction == std::vector<Int>{Int(-1)});
  CHECK(dec.facet_terms[0].support == 0);
  CHECK(dec.facet_terms[0].weight == -1);
  CHECK(dec.facet_terms[0].value == 0);
  CHECK(dec.facet_terms[1].direction == std::vector<Int>{Int(1)});
  CHECK(dec.facet_terms[1].support == 3);
  CHECK(dec.facet_terms[1].weight == 1);
  CHECK(dec.facet_terms[1].value == 3);

  CHECK(dec.roof_terms[0].direction == std::vector<Int>{Int(-2), Int(1)});
  CHECK(dec.roof_terms[0].value == 1);
  CHECK(dec.roof_terms[1].direction == std::vector<Int>{Int(0), Int(1)});
  CHECK(dec.roof_terms[1].value == 2);

  auto theta = theta_inf();
  auto dec2 = mixed_integral_dec_terms({theta, theta});
  REQUIRE(dec2.total == 6);
  REQUIRE(dec2.facet_terms[0].value + dec2.facet_terms[1].value == 2);
  REQUIRE(dec2.roof_terms[0].value + dec2.roof_terms[1].value == 4);
}

TEST_CASE("three routes agree in two variables") {
  auto pyr = pyramid();
  auto one = ConcavePWA::constant_fn(unit_square(), Rational(1));
  auto two = ConcavePWA::constant_fn(unit_square(), Rational(2));

  REQUIRE(mixed_integral_def({pyr, pyr, pyr}) == 8);  // 3! * 4/3
  REQUIRE(mixed_integral_mv({pyr, pyr, pyr}) == 8);
  REQUIRE(mixed_integral_dec({pyr, pyr, pyr}) == 8);

  Rational v = mixed_integral_def({pyr, one, two});
  REQUIRE(mixed_integral_mv({pyr, one, two}) == v);
  REQUIRE(mixed_integral_dec({pyr, one, two}) == v);

  auto zero = ConcavePWA::constant_fn(unit_square(), Rational(0));
  REQUIRE(mixed_integral_def({zero, zero, zero}) == 0);
  REQUIRE(mixed_integral_mv({zero, zero, zero}) == 0);
  REQUIRE(mixed_integral_dec({zero, zero, zero}) == 0);
}

TEST_CASE("degenerate domains") {
  // Two functions on collinear segments; domain sums never become
  // full-dimensional, yet the mixed integral is nonzero.
  auto one = ConcavePWA::constant_fn(unit_square(), Rational(1));
  auto up = pwa({pt({0, 0, 0}), pt({1, 0, 1})});
  auto down = pwa({pt({0, 0, 0}), pt({1, 0, -1})});
  REQUIRE(mixed_integral_def({one, up, down}) == 1);
  REQUIRE(mixed_integral_mv({one, up, down}) == 1);
  REQUIRE(mixed_integral_dec({one, up, down}) == 1);

  // Point domains beyond the first argument force the value to zero.
  auto p1 = pwa({pt({1, 0, 5})});
  auto p2 = pwa({pt({0, 1, -2})});
  REQUIRE(mixed_integral_def({pyramid(), p1, p2}) == 0);
  REQUIRE(mixed_integral_mv({pyramid(), p1, p2}) == 0);
  REQUIRE(mixed_integral_dec({pyramid(), p1, p2}) == 0);
}

TEST_CASE("translation identity") {
  // Adding 1 to the first function adds MV_1 of the other domain.
  REQUIRE(translation_identity_check({ramp_rho(), ramp_sigma()},
                                     {Rational(1), Rational(0)}) == 8);
  REQUIRE(translation_identity_check({ramp_rho(), ramp_sigma()},
                                     {Rational(0), Rational(-2)}) == 0);
  auto pyr = pyramid();
  auto one = ConcavePWA::constant_fn(unit_square(), Rational(1));
  Rational base = mixed_integral_def({pyr, pyr, one});
  REQUIRE(translation_identity_check({pyr, pyr, one},
                                     {Rational(0), Rational(0), Rational(1)}) ==
          base + mixed_volume_ie({pyr.domain(), pyr.domain()}));
  REQUIRE_THROWS_AS(
      translation_identity_check({ramp_rho(), ramp_sigma()}, {Rational(1)}),
      invalid_input);
}

TEST_CASE("linear change of variables identity") {
  REQUIRE(linear_identity_check({ramp_rho(), ramp_sigma()}, {{Int(2)}}) == 3);
  REQUIRE(linear_identity_check({ramp_rho(), ramp_sigma()}, {{Int(-1)}}) == 6);
  auto pyr = pyramid();
  std::vector<std::vector<Int>> shear = {{Int(1), Int(1)}, {Int(0), Int(1)}};
  REQUIRE(linear_identity_check({pyr, pyr, pyr}, shear) == 8);
  std::vector<std::vector<Int>> twice = {{Int(2), Int(0)}, {Int(0), Int(1)}};
  REQUIRE(linear_identity_check({pyr, pyr, pyr}, twice) == 4);
}

TEST_CASE("envelope split identity") {
  auto pent = pentagon();
  REQUIRE(bagne_split({pent, pent}) == 5);

  auto box = Polytope::convex_hull({pt({0, 0}), pt({2, 0}), pt({0, 1}), pt({2, 1})});
  REQUIRE(bagne_split({pent, box}) == 6);

  std::vector<Point> cube_pts;
  for (long x = 0; x <= 1; ++x)
    for (long y = 0; y <= 1; ++y)
      for (long z = 0; z <= 1; ++z) cube_pts.push_back(pt({x, y, z}));
  auto cube = Polytope::convex_hull(cube_pts);
  REQUIRE(bagne_split({cube, cube, cube}) == 6);

  REQUIRE_THROWS_AS(bagne_split({pent, pent, pent}), invalid_input);
}

TEST_CASE("permanent formula for boxes") {
  REQUIRE(permanent_mi({{Rational(1)}, {Rational(1)}},
                       {Rational(1), Rational(2)}) == 6);
  REQUIRE(permanent_mi({{Rational(1), Rational(1)},
                        {Rational(1), Rational(1)},
                        {Rational(1), Rational(1)}},
                       {Rational(1), Rational(1), Rational(2)}) == 32);
  REQUIRE(permanent_mi({{Rational(1), Rational(1)},
                        {Rational(1), Rational(2)},
                        {Rational(2), Rational(1)}},
                       {Rational(1), Rational(1), Rational(1)}) == 44);
  REQUIRE_THROWS_AS(
      permanent_mi({{Rational(0)}, {Rational(1)}}, {Rational(1), Rational(1)}),
      invalid_input);
  REQUIRE_THROWS_AS(permanent_mi({{Rational(1)}}, {Rational(1)}), invalid_input);
}
