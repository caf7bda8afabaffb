#include <catch2/catch_amalgamated.hpp>

#include "rootbound/polytope.hpp"

using namespace rootbound;

namespace {
Point pt(std::vector<long> xs) {
  Point p;
  for (long x : xs) p.push_back(Rational(x));
  return p;
}
std::vector<Point> pts(std::vector<std::vector<long>> xss) {
  std::vector<Point> v;
  for (auto& xs : xss) v.push_back(pt(xs));
  return v;
}
}  // namespace

TEST_CASE("hull of collinear points is a segment") {
  auto P = Polytope::convex_hull(pts({{0, 0}, {1, 0}, {2, 0}}));
  CHECK(P.dim() == 1);
  CHECK(P.vertices() == pts({{0, 0}, {2, 0}}));
  CHECK(P.volume() == 0);
}

TEST_CASE("hull of the pentagon point set") {
  auto P = Polytope::convex_hull(pts({{0, 0}, {0, 1}, {1, 0}, {1, 1}, {1, 2}, {2, 1}}));
  CHECK(P.dim() == 2);
  CHECK(P.vertices() == pts({{0, 0}, {0, 1}, {1, 0}, {1, 2}, {2, 1}}));
  CHECK(P.volume() == Rational(5, 2));
  CHECK(P.facets().size() == 5);
}

TEST_CASE("hull of a single point") {
  auto P = Polytope::convex_hull(pts({{3, 4}}));
  CHECK(P.dim() == 0);
  CHECK(P.vertices() == pts({{3, 4}}));
  CHECK(P.volume() == 0);
}

TEST_CASE("hull errors") {
  CHECK_THROWS_AS(Polytope::convex_hull({}), invalid_input);
  std::vector<Point> p5 = {Point(5, Rational(0))};
  CHECK_THROWS_AS(Polytope::convex_hull(p5), unsupported_dimension);
}

TEST_CASE("minkowski sums") {
  auto seg = Polytope::convex_hull(pts({{0}, {1}}));
  auto sum = minkowski_sum(seg, seg);
  CHECK(sum.vertices() == pts({{0}, {2}}));

  auto square = Polytope::convex_hull(pts({{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
  auto hseg = Polytope::convex_hull(pts({{0, 0}, {1, 0}}));
  auto rect = minkowski_sum(square, hseg);
  CHECK(rect.vertices() == pts({{0, 0}, {0, 1}, {2, 0}, {2, 1}}));
  CHECK(rect.volume() == 2);

  auto pent = Polytope::convex_hull(pts({{0, 0}, {1, 0}, {2, 1}, {1, 2}, {0, 1}}));
  auto dbl = minkowski_sum(pent, pent);
  CHECK(dbl.volume() == 10);  // 2^2 * 5/2
  CHECK(dbl.vertices().size() == 5);
}

TEST_CASE("support values and faces") {
  auto square = Polytope::convex_hull(pts({{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
  CHECK(square.support_value(std::vector<Int>{1, 0}) == 1);
  auto right = square.face_in_direction(std::vector<Int>{1, 0});
  CHECK(right == pts({{1, 0}, {1, 1}}));
  CHECK_THROWS_AS(square.support_value(std::vector<Int>{0, 0}), invalid_input);

  auto tri = Polytope::convex_hull(pts({{0, 1}, {1, 2}, {2, 1}}));
  CHECK(tri.support_value(std::vector<Int>{1, 1}) == 3);
  auto uppers = tri.upper_facets();
  std::vector<std::vector<Int>> normals;
  for (const auto& f : uppers) normals.push_back(f.normal);
  std::sort(normals.begin(), normals.end());
  CHECK(normals == std::vector<std::vector<Int>>{{-1, 1}, {1, 1}});
}

TEST_CASE("lattice face volumes") {
  CHECK(lattice_face_volume(pts({{0, 1}, {1, 2}}), {-1, 1}) == 1);
  CHECK(lattice_face_volume(pts({{0, 0}, {2, 0}}), {0, 1}) == 2);
  CHECK(lattice_face_volume(pts({{0, 0}, {2, 4}}), {2, -1}) == 2);
  CHECK_THROWS_AS(lattice_face_volume(pts({{0, 0}, {1, 1}}), {1, 0}), invalid_input);
}

TEST_CASE("three dimensional hulls") {
  // Unit cube with center and face-center noise points.
  auto cube = Polytope::convex_hull(pts({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1},
                                         {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}}));
  CHECK(cube.dim() == 3);
  CHECK(cube.vertices().size() == 8);
  CHECK(cube.facets().size() == 6);
  CHECK(cube.volume() == 1);

  auto noisy = Polytope::convex_hull(
      pts({{0, 0, 0}, {2, 0, 0}, {0, 2, 0}, {0, 0, 2}, {2, 2, 0}, {2, 0, 2}, {0, 2, 2},
           {2, 2, 2}, {1, 1, 1}, {1, 1, 0}, {1, 1, 2}, {1, 0, 0}, {2, 2, 1}}));
  CHECK(noisy.vertices().size() == 8);
  CHECK(noisy.facets().size() == 6);
  CHECK(noisy.volume() == 8);

  // Simplex, degenerate extension along an edge direction.
  auto simp = Polytope::convex_hull(pts({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {2, 0, 0}}));
  CHECK(simp.volume() == Rational(1, 3));
  CHECK(simp.vertices().size() == 4);
  for (const auto& v : simp.vertices()) CHECK(v != pt({1, 0, 0}));
}

TEST_CASE("planar set embedded in three dimensions") {
  auto flat = Polytope::convex_hull(pts({{0, 0, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 2}, {2, 2, 4}}));
  CHECK(flat.dim() == 2);
  CHECK(flat.volume() == 0);
  CHECK(flat.vertices().size() == 4);  // (1,1,2) is interior to the flat hull
}

TEST_CASE("four dimensional cross polytope") {
  std::vector<Point> v;
  for (int i = 0; i < 4; ++i)
    for (int s : {-1, 1}) {
      Point p(4, Rational(0));
      p[i] = s;
      v.push_back(p);
    }
  v.push_back(Point(4, Rational(0)));  // center, not a vertex
  auto P = Polytope::convex_hull(v);
  CHECK(P.dim() == 4);
  CHECK(P.vertices().size() == 8);
  CHECK(P.facets().size() == 16);
  CHECK(P.volume() == Rational(2, 3));  // 2^4 / 4!
}

TEST_CASE("hull idempotence and facet support identity") {
  auto P = Polytope::convex_hull(pts({{0, 0, 0}, {3, 0, 0}, {0, 3, 0}, {1, 1, 2}, {2, 1, 1}}));
  auto Q = Polytope::convex_hull(P.vertices());
  CHECK(Q.vertices() == P.vertices());
  CHECK(Q.volume() == P.volume());

  // d * Vol(P) = sum over facets of support * lattice face volume.
  Rational total(0);
  for (const auto& f : P.facets())
    total += f.offset * lattice_face_volume(P.facet_points(f), f.normal);
  CHECK(total == Rational(3) * P.volume());
}
