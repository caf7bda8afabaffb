#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "rootbound/adelic.hpp"
#include "rootbound/parser.hpp"

using namespace rootbound;

namespace {

const UniPoly S = UniPoly::var();
const UniPoly one = UniPoly::constant(Rational(1));

LaurentSystem running_pair() {
  return parse_system(
      "f0 = (s-1) + (s-1)^2*t - 3*s*t^2\n"
      "f1 = -7*(s-1) + (s-1)^2*t + 3*s*t^2\n");
}

// f0 = c0*(s-1)^(2k) + c1*(s-1)^k*t - c2*s*t^2 and the companion with flipped
// signs; the bound of this family is 1 for every k.
LaurentSystem tight_family(long k, Rational c0 = Rational(1), Rational c1 = Rational(1)) {
  UniPoly u = (S - one).pow(k);
  LaurentSystem sys;
  sys.n = 1;
  LaurentPoly f0, f1;
  f0.push_back({{0}, UniPoly::constant(c0) * u * u});
  f0.push_back({{1}, UniPoly::constant(c1) * u});
  f0.push_back({{2}, UniPoly::constant(Rational(-1)) * S});
  f1.push_back({{0}, UniPoly::constant(Rational(-3) * c0) * u * u});
  f1.push_back({{1}, UniPoly::constant(c1) * u});
  f1.push_back({{2}, S});
  sys.polys = {f0, f1};
  return sys;
}

LaurentSystem quintic_pair() {
  return parse_system(
      "f0 = (s+1)^2 + (s^2-1)*t + (s^2-1)*t^2 + (s-1)^2*t^3"
      " + (s-1)*(s+2)*t^4 + (s-1)*(s+2)*t^5\n"
      "f1 = 2*(s+1)^2 + (s^2-1)*t - (s^2-1)*t^2 + 3*(s-1)^2*t^3"
      " - 4*(s-1)*(s+2)*t^4 - 2*(s-1)*(s+2)*t^5\n");
}

// Four-term pair in one variable whose written and merged readings differ:
// the two terms with exponent 0 merge into s*(s-2) times a constant.
LaurentSystem folded_pair(Rational c0, Rational c1, Rational c2, Rational c3,
                          Rational d0, Rational d1, Rational d2, Rational d3,
                          long k) {
  UniPoly u = (S - one).pow(k);
  LaurentSystem sys;
  sys.n = 1;
  LaurentPoly f0, f1;
  f0.push_back({{0}, UniPoly::constant(c0) * u * u});
  f0.push_back({{0}, UniPoly::constant(c1)});
  f0.push_back({{1}, UniPoly::constant(c2) * u});
  f0.push_back({{2}, UniPoly::constant(c3) * S});
  f1.push_back({{0}, UniPoly::constant(d0) * u * u});
  f1.push_back({{0}, UniPoly::constant(d1)});
  f1.push_back({{1}, UniPoly::constant(d2) * u});
  f1.push_back({{2}, UniPoly::constant(d3) * S});
  sys.polys = {f0, f1};
  return sys;
}

// Three polynomials in (t1, t2) with generic constants; the written-reading
// bound is 8k^2 + 2k.
LaurentSystem surface_family(long k, const std::vector<Rational>& c) {
  UniPoly u = (S - one).pow(k);
  LaurentSystem sys;
  sys.n = 2;
  LaurentPoly f0, f1, f2;
  f0.push_back({{2 * k, 0}, UniPoly::constant(c[0])});
  f0.push_back({{0, 0}, UniPoly::constant(c[1]) * (u * u - one)});
  f1.push_back({{2 * k, 0}, UniPoly::constant(c[2])});
  f1.push_back({{0, 0}, UniPoly::constant(c[3])});
  f1.push_back({{0, 1}, UniPoly::constant(c[4]) * u});
  f1.push_back({{0, 2}, UniPoly::constant(c[5]) * S});
  f2.push_back({{2 * k, 0}, UniPoly::constant(c[6])});
  f2.push_back({{0, 0}, UniPoly::constant(c[7])});
  f2.push_back({{0, 1}, UniPoly::constant(c[8]) * u});
  f2.push_back({{0, 2}, UniPoly::constant(c[9]) * S});
  sys.polys = {f0, f1, f2};
  return sys;
}

// With unit s2-direction instead of 2k: same shape, full lattice.
LaurentSystem surface_unit(const std::vector<Rational>& c) {
  LaurentSystem sys = surface_family(1, c);
  for (auto& f : sys.polys) f[0].a[0] = 1;
  return sys;
}

std::vector<Point> sorted_vertices(const Polytope& p) {
  std::vector<Point> v = p.vertices();
  std::sort(v.begin(), v.end());
  return v;
}

Point pt(std::initializer_list<long> xs) {
  Point p;
  for (long x : xs) p.push_back(Rational(x));
  return p;
}

Rational ev(const ConcavePWA& r, std::initializer_list<long> xs) {
  return r.eval(pt(xs));
}

}  // namespace

TEST_CASE("lifted polytopes and roofs at individual places") {
  auto sys = running_pair();
  const auto& f = sys.polys[0];

  SECTION("at s = 0 the coefficient orders are 0, 0, 1") {
    auto q = vadic_polytope(f, 1, Place::at(Rational(0)));
    CHECK(sorted_vertices(q) ==
          std::vector<Point>{pt({0, 0}), pt({1, 0}), pt({2, -1})});
    auto r = roof(f, 1, Place::at(Rational(0)));
    CHECK(ev(r, {0}) == 0);
    CHECK(ev(r, {1}) == 0);
    CHECK(ev(r, {2}) == -1);
    CHECK(r.eval({Rational(3, 2)}) == Rational(-1, 2));
  }

  SECTION("at s = 1 the middle point hangs below the envelope") {
    auto q = vadic_polytope(f, 1, Place::at(Rational(1)));
    CHECK(sorted_vertices(q) ==
          std::vector<Point>{pt({0, -1}), pt({1, -2}), pt({2, 0})});
    auto r = roof(f, 1, Place::at(Rational(1)));
    CHECK(ev(r, {0}) == -1);
    CHECK(ev(r, {1}) == Rational(-1, 2));
    CHECK(ev(r, {2}) == 0);
  }

  SECTION("at infinity the lifts are the degrees") {
    auto q = vadic_polytope(f, 1, Place::infinity());
    CHECK(sorted_vertices(q) ==
          std::vector<Point>{pt({0, 1}), pt({1, 2}), pt({2, 1})});
    auto r = roof(f, 1, Place::infinity());
    CHECK(ev(r, {1}) == 2);
  }

  SECTION("a place where nothing vanishes gives the zero roof") {
    auto r = roof(f, 1, Place::at(Rational(5)));
    CHECK(ev(r, {0}) == 0);
    CHECK(ev(r, {2}) == 0);
    CHECK(r.max_value() == 0);
    CHECK(r.min_value() == 0);
  }

  SECTION("the zero polynomial degenerates to the origin") {
    LaurentPoly zero;
    auto q = vadic_polytope(zero, 1, Place::at(Rational(0)));
    CHECK(sorted_vertices(q) == std::vector<Point>{pt({0, 0})});
    auto r = roof(zero, 1, Place::infinity());
    CHECK(ev(r, {0}) == 0);
  }
}

TEST_CASE("roof families from one coprime factorization") {
  auto sys = running_pair();
  auto [places, fam] = roofs_from_factorization(sys);

  REQUIRE(places.factors.size() == 2);
  CHECK(places.factors[0] == upoly({-1, 1}));  // s - 1
  CHECK(places.factors[1] == upoly({0, 1}));   // s
  CHECK(places.degree(0) == 1);

  // Roofs at the factor places agree with the roofs at their rational roots.
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(fam.finite[i][0] == roof(sys.polys[i], 1, Place::at(Rational(1))));
    CHECK(fam.finite[i][1] == roof(sys.polys[i], 1, Place::at(Rational(0))));
    CHECK(fam.at_infinity[i] == roof(sys.polys[i], 1, Place::infinity()));
    CHECK(integral(fam.finite[i][0]) == -1);
    CHECK(integral(fam.finite[i][1]) == Rational(-1, 2));
    CHECK(integral(fam.at_infinity[i]) == 3);
  }

  // Every roof of index i lives on NP(f_i), lifts <= 0 finitely and >= 0 at
  // infinity.
  for (std::size_t i = 0; i < 2; ++i) {
    auto np = sorted_vertices(fam.at_infinity[i].domain());
    for (std::size_t k = 0; k < places.factors.size(); ++k) {
      CHECK(sorted_vertices(fam.finite[i][k].domain()) == np);
      CHECK(fam.finite[i][k].max_value() <= 0);
    }
    CHECK(fam.at_infinity[i].min_value() >= 0);
  }
}

TEST_CASE("roofs at rational places scale by the root multiplicity") {
  // (s-1)^2 stays unsplit, so the place s = 1 carries multiplicity 2.
  LaurentSystem sys;
  sys.n = 1;
  sys.polys = {{{{0}, (S - one) * (S - one)}, {{1}, one}},
               {{{0}, (S - one) * (S - one)}, {{1}, UniPoly::constant(Rational(2))}}};
  auto [places, fam] = roofs_from_factorization(sys);
  REQUIRE(places.factors.size() == 1);
  CHECK(places.factors[0].degree() == 2);

  for (std::size_t i = 0; i < 2; ++i) {
    for (long v : {0L, 1L, 7L})
      CHECK(theta_at(places, fam, i, Rational(v)) ==
            roof(sys.polys[i], 1, Place::at(Rational(v))));
    CHECK(ev(theta_at(places, fam, i, Rational(1)), {0}) == -2);
  }
}

TEST_CASE("systems with constant coefficients have no finite places") {
  auto sys = parse_system("f0 = 1 + t\nf1 = 2 + 3*t^2\n");
  auto [places, fam] = roofs_from_factorization(sys);
  CHECK(places.factors.empty());
  CHECK(fam.at_infinity[0].max_value() == 0);

  auto rep = bound_mainthm(sys, Presentation::collapsed);
  CHECK(rep.total == 0);
  CHECK(rep.kb == 0);
  CHECK_FALSE(rep.positive);
}

TEST_CASE("refined bound on the running pair") {
  auto rep = bound_mainthm(running_pair(), Presentation::collapsed);
  CHECK(rep.n == 1);
  REQUIRE(rep.place_mi.size() == 2);
  CHECK(rep.place_mi[0] == -2);  // s - 1
  CHECK(rep.place_mi[1] == -1);  // s
  CHECK(rep.mi_infinity == 6);
  CHECK(rep.total == 3);
  CHECK(rep.kb == 5);
  CHECK(rep.correction == 0);
  CHECK(rep.positive);

  // Collapsing changes nothing when no exponent repeats.
  auto rep2 = bound_mainthm(running_pair(), Presentation::as_written);
  CHECK(rep2.total == 3);
  CHECK(rep2.kb == 5);
}

TEST_CASE("refined bound on the quintic pair") {
  auto rep = bound_mainthm(quintic_pair(), Presentation::collapsed);
  REQUIRE(rep.place_mi.size() == 3);
  CHECK(rep.place_mi[0] == -5);  // s - 1
  CHECK(rep.place_mi[1] == -5);  // s + 1
  CHECK(rep.place_mi[2] == -2);  // s + 2
  CHECK(rep.mi_infinity == 20);
  CHECK(rep.total == 8);
  CHECK(rep.kb == 20);
  CHECK(rep.positive);
}

TEST_CASE("the tight family stays at 1 while the classical bound grows") {
  for (long k = 1; k <= 4; ++k) {
    auto rep = bound_mainthm(tight_family(k), Presentation::collapsed);
    CHECK(rep.total == 1);
    CHECK(rep.kb == 4 * k + 1);
    CHECK(rep.positive);
  }
  // The k = 1 integrals behind that total.
  auto [places, fam] = roofs_from_factorization(tight_family(1));
  REQUIRE(places.factors.size() == 2);
  CHECK(integral(fam.finite[0][0]) == -2);              // at s - 1
  CHECK(integral(fam.finite[0][1]) == Rational(-1, 2));  // at s
  CHECK(integral(fam.at_infinity[0]) == 3);
}

TEST_CASE("input validation") {
  LaurentSystem sys = running_pair();
  sys.polys[1].clear();
  CHECK_THROWS_AS(bound_mainthm(sys, Presentation::collapsed), invalid_input);
  CHECK_THROWS_AS(roofs_from_factorization(sys), invalid_input);

  // Cancellation to zero is caught after merging.
  auto cancels = parse_system("f0 = t - t\nf1 = 1 + t\n");
  CHECK_THROWS_AS(bound_mainthm(cancels, Presentation::as_written), invalid_input);

  auto wrong = running_pair();
  wrong.n = 2;
  CHECK_THROWS_AS(bound_mainthm(wrong, Presentation::collapsed), invalid_input);
}

TEST_CASE("non-primitive systems are refused with the offending content") {
  auto sys = parse_system(
      "f0 = (s-1)*(s-2) + (s-1)^2*(s-2)*t - 3*s*(s-2)*t^2\n"
      "f1 = -7*(s-1) + (s-1)^2*t + 3*s*t^2\n");
  try {
    bound_mainthm(sys, Presentation::collapsed);
    FAIL("expected a primitivity error");
  } catch (const not_primitive& e) {
    CHECK(e.common_factor == to_string(upoly({-2, 1})));
  }
  CHECK_THROWS_AS(bound_unmixed(sys), not_primitive);
}

TEST_CASE("unmixed bound over the common polytope") {
  CHECK(bound_unmixed(running_pair()) == 3);
  CHECK(bound_unmixed(tight_family(1)) == 1);

  // A genuinely mixed variant: drop the middle term of f1.
  auto sys = parse_system(
      "f0 = (s-1) + (s-1)^2*t - 3*s*t^2\n"
      "f1 = -7*(s-1) + 3*s*t^2\n");
  auto rep = bound_mainthm(sys, Presentation::collapsed);
  CHECK(bound_unmixed(sys) >= rep.total);
  CHECK(rep.total == 3);
  CHECK(bound_unmixed(sys) == 3);
}

TEST_CASE("base-point corrections") {
  CHECK(base_corrections(running_pair()) == 0);
  CHECK(base_corrections(quintic_pair()) == 0);

  SECTION("one polynomial with an exclusive base point") {
    auto sys = parse_system(
        "f0 = (s-1)*(s-2) + (s-1)^2*(s-2)*t - 3*s*(s-2)*t^2\n"
        "f1 = -7*(s-1) + (s-1)^2*t + 3*s*t^2\n");
    CHECK(base_corrections(sys) == 2);

    auto rep = bound_corrected(sys);
    REQUIRE(rep.place_mi.size() == 3);
    CHECK(rep.place_mi[0] == -2);  // s - 2, the new place
    CHECK(rep.place_mi[1] == -2);  // s - 1
    CHECK(rep.place_mi[2] == -1);  // s
    CHECK(rep.mi_infinity == 8);
    CHECK(rep.total == 3);
    CHECK(rep.correction == 2);
    CHECK(rep.corrected_total() == 5);
    CHECK(rep.kb == 7);
    CHECK(rep.positive);
  }

  SECTION("a base point shared by both polynomials contributes nothing") {
    auto sys = parse_system(
        "f0 = (s-1)*(s-2) + (s-1)^2*(s-2)*t - 3*s*(s-2)*t^2\n"
        "f1 = -7*(s-1)*(s-2) + (s-1)^2*(s-2)*t + 3*s*(s-2)*t^2\n");
    CHECK(base_corrections(sys) == 0);
    auto rep = bound_corrected(sys);
    CHECK(rep.total == 3);
    CHECK(rep.corrected_total() == 3);
  }

  SECTION("primitive systems pass through bound_corrected unchanged") {
    auto rep = bound_corrected(running_pair());
    CHECK(rep.total == 3);
    CHECK(rep.correction == 0);
  }
}

TEST_CASE("classical mixed-volume comparison") {
  CHECK(kb_bound(running_pair()) == 5);
  CHECK(kb_bound(quintic_pair()) == 20);
  for (long k = 1; k <= 3; ++k) CHECK(kb_bound(tight_family(k)) == 4 * k + 1);

  // The classical bound splits as the contribution of the places 0 and
  // infinity of the roof data.
  for (const auto& sys : {running_pair(), quintic_pair(), tight_family(2)}) {
    std::vector<ConcavePWA> at0, atinf;
    for (const auto& f : sys.polys) {
      at0.push_back(roof(f, sys.n, Place::at(Rational(0))));
      atinf.push_back(roof(f, sys.n, Place::infinity()));
    }
    CHECK(mixed_integral_def(at0) + mixed_integral_def(atinf) == kb_bound(sys));
  }
}

TEST_CASE("an unsplit quadratic factor counts as two places") {
  // Both coefficients share s^2 - s, which never needs splitting.
  auto sys = parse_system("f0 = (s^2 - s) + t\nf1 = (s^2 - s) + 2*t\n");
  auto rep = bound_mainthm(sys, Presentation::collapsed);
  REQUIRE(rep.place_mi.size() == 1);
  CHECK(rep.places.factors[0].degree() == 2);
  CHECK(rep.place_mi[0] == -1);
  CHECK(rep.mi_infinity == 2);
  CHECK(rep.total == 0);

  // Summing the two rational roots by hand gives the same contribution.
  std::vector<ConcavePWA> at0, at1;
  for (const auto& f : sys.polys) {
    at0.push_back(roof(f, 1, Place::at(Rational(0))));
    at1.push_back(roof(f, 1, Place::at(Rational(1))));
  }
  CHECK(mixed_integral_def(at0) + mixed_integral_def(at1) ==
        Rational(rep.places.degree(0)) * rep.place_mi[0]);

  // The two coefficient columns move in parallel, so no hyperplane pair can
  // pin a root: the bound is zero and the predicate agrees.
  CHECK_FALSE(rep.positive);
  CHECK_FALSE(positivity_predicate(sys));
}

TEST_CASE("positivity predicate and lattice diagnostics") {
  CHECK(positivity_predicate(running_pair()));
  CHECK(positivity_predicate(quintic_pair()));
  CHECK(positivity_predicate(tight_family(2)));

  SECTION("single-term polynomials never pin a root") {
    LaurentSystem sys;
    sys.n = 1;
    sys.polys = {{{{1}, UniPoly::constant(Rational(2))}},
                 {{{2}, UniPoly::constant(Rational(3))}}};
    CHECK_FALSE(positivity_predicate(sys));
    CHECK(bound_mainthm(sys, Presentation::collapsed).total == 0);
  }

  SECTION("supports on a line in two variables") {
    auto sys = parse_system("f0 = 1 + t1\nf1 = 1 + t1 + t1^2\nf2 = 2 + t1\n");
    CHECK_FALSE(positivity_predicate(sys));
    CHECK(bound_mainthm(sys, Presentation::collapsed).total == 0);
    auto d = lattice_diagnostics(sys);
    CHECK(d.rank == 1);
    CHECK(d.index == 0);
  }

  SECTION("repeated exponent vectors still count through their lifts") {
    auto folded = folded_pair(Rational(1), Rational(-1), Rational(1), Rational(1),
                              Rational(-3), Rational(3), Rational(1), Rational(1), 1);
    CHECK(positivity_predicate(folded));
  }

  SECTION("rank and index of the exponent lattice") {
    auto d = lattice_diagnostics(running_pair());
    CHECK(d.rank == 1);
    CHECK(d.index == 1);

    LaurentSystem even;
    even.n = 1;
    even.polys = {{{{0}, one}, {{2}, one}}, {{{0}, S}, {{2}, one}}};
    auto e = lattice_diagnostics(even);
    CHECK(e.rank == 1);
    CHECK(e.index == 2);

    // The surface family only moves by 2 in the first direction.
    std::vector<Rational> ones(10, Rational(1));
    auto s = lattice_diagnostics(surface_family(1, ones));
    CHECK(s.rank == 2);
    CHECK(s.index == 2);
    auto su = lattice_diagnostics(surface_unit(ones));
    CHECK(su.rank == 2);
    CHECK(su.index == 1);
  }
}

TEST_CASE("written and merged readings of a folded pair") {
  auto folded = folded_pair(Rational(1), Rational(-1), Rational(1), Rational(1),
                            Rational(-3), Rational(3), Rational(1), Rational(1), 1);
  auto written = bound_mainthm(folded, Presentation::as_written);
  auto merged = bound_mainthm(folded, Presentation::collapsed);
  CHECK(written.total == 5);
  CHECK(merged.total == 3);
  CHECK(merged.total <= written.total);
  CHECK(written.presentation == Presentation::as_written);

  // The written reading is blind to the constants: other generic choices
  // give the same lifted data, hence the same bound.
  auto other = folded_pair(Rational(2), Rational(5), Rational(-1), Rational(7),
                           Rational(1), Rational(-4), Rational(3), Rational(2), 1);
  CHECK(bound_mainthm(other, Presentation::as_written).total == 5);

  for (long k = 1; k <= 3; ++k) {
    auto gen = folded_pair(Rational(2), Rational(1), Rational(3), Rational(-1),
                           Rational(1), Rational(1), Rational(5), Rational(2), k);
    CHECK(bound_mainthm(gen, Presentation::as_written).total == 4 * k + 1);
  }
}

TEST_CASE("surface family bounds") {
  std::vector<Rational> ones(10, Rational(1));
  CHECK(bound_mainthm(surface_family(1, ones), Presentation::as_written).total == 10);

  std::vector<Rational> mixed = {Rational(2),  Rational(-1), Rational(3), Rational(5),
                                 Rational(-2), Rational(7),  Rational(1), Rational(4),
                                 Rational(-5), Rational(1, 2)};
  auto rep = bound_mainthm(surface_family(1, mixed), Presentation::as_written);
  CHECK(rep.total == 10);
  REQUIRE(rep.place_mi.size() == 3);
  CHECK(rep.mi_infinity == 12);
  CHECK(rep.positive);

  CHECK(bound_mainthm(surface_family(2, mixed), Presentation::as_written).total == 36);
}
