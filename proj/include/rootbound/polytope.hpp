#ifndef ROOTBOUND_POLYTOPE_HPP
#define ROOTBOUND_POLYTOPE_HPP

// Exact convex geometry in Q^d for small d.  Polytopes are stored by their
// vertex set (lexicographically sorted); facet structure and volume are
// computed at construction for full-dimensional polytopes by an incremental
// beneath-beyond hull over a simplicial boundary.  All predicates are exact.

#include <algorithm>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "rootbound/linalg.hpp"

namespace rootbound {

// Ambient dimension cap; lifted polytopes for n variables live in R^{n+1}.
inline long& max_hull_dim() {
  static long cap = 4;
  return cap;
}

struct Facet {
  std::vector<Int> normal;  // primitive integer, outward
  Rational offset;          // support value: <normal, x> = offset on the facet
  std::vector<std::size_t> vertices;  // indices into Polytope::vertices(), sorted
};

class Polytope {
 public:
  static Polytope convex_hull(std::vector<Point> pts);

  long ambient_dim() const { return d_; }
  long dim() const { return dim_; }
  const std::vector<Point>& vertices() const { return verts_; }

  // Facets are only available for full-dimensional polytopes.
  const std::vector<Facet>& facets() const { return facets_; }

  // Full-dimensional Lebesgue volume; 0 when dim < ambient dim.
  const Rational& volume() const { return vol_; }

  Rational support_value(const std::vector<Rational>& u) const {
    require_direction(u);
    Rational h = dot(u, verts_[0]);
    for (const auto& v : verts_) h = std::max(h, dot(u, v));
    return h;
  }

  Rational support_value(const std::vector<Int>& u) const {
    std::vector<Rational> q(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) q[i] = Rational(u[i]);
    return support_value(q);
  }

  std::vector<Point> face_in_direction(const std::vector<Rational>& u) const {
    require_direction(u);
    Rational h = support_value(u);
    std::vector<Point> face;
    for (const auto& v : verts_)
      if (dot(u, v) == h) face.push_back(v);
    return face;
  }

  std::vector<Point> face_in_direction(const std::vector<Int>& u) const {
    std::vector<Rational> q(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) q[i] = Rational(u[i]);
    return face_in_direction(q);
  }

  // Facets of the upper envelope: positive last normal coordinate.
  std::vector<Facet> upper_facets() const {
    std::vector<Facet> up;
    for (const auto& f : facets_)
      if (f.normal.back() > 0) up.push_back(f);
    return up;
  }

  std::vector<Point> facet_points(const Facet& f) const {
    std::vector<Point> pts;
    for (auto i : f.vertices) pts.push_back(verts_[i]);
    return pts;
  }

 private:
  void require_direction(const std::vector<Rational>& u) const {
    if (u.size() != static_cast<std::size_t>(d_))
      throw invalid_input("direction has wrong dimension");
    for (const auto& x : u)
      if (x != 0) return;
    throw invalid_input("zero direction");
  }

  long d_ = 0;
  long dim_ = -1;
  std::vector<Point> verts_;
  std::vector<Facet> facets_;
  Rational vol_;
};

namespace hull_detail {

struct CoreFacet {
  std::vector<std::size_t> v;  // d point indices, sorted
  std::vector<Int> n;          // outward primitive normal
  Rational h;                  // offset
};

// Greedy affinely independent subset in index order; returns the selected
// indices (first is the base point).
inline std::vector<std::size_t> independent_subset(const std::vector<Point>& pts,
                                                   std::size_t want) {
  std::vector<std::size_t> sel = {0};
  Mat edges;
  for (std::size_t i = 1; i < pts.size() && sel.size() < want; ++i) {
    edges.push_back(sub(pts[i], pts[0]));
    if (rank(edges) == edges.size()) {
      sel.push_back(i);
    } else {
      edges.pop_back();
    }
  }
  return sel;
}

// Oriented hyperplane through the given points, pointing away from `inside`.
inline std::pair<std::vector<Int>, Rational> oriented_plane(
    const std::vector<Point>& pts, const Point& inside) {
  std::vector<Rational> n = hyperplane_normal(pts);
  std::vector<Int> ni = primitive(n);  // throws on zero (degenerate) input
  Rational h = dot(ni, pts[0]);
  Rational side = dot(ni, inside);
  if (side == h) throw invalid_input("oriented_plane: interior point on facet");
  if (side > h) {
    for (auto& x : ni) x = -x;
    h = -h;
  }
  return {ni, h};
}

// Full-dimensional incremental hull for d >= 3.  Points must be deduplicated
// and lexicographically sorted, with affine dimension equal to d.
inline std::vector<CoreFacet> incremental_hull(const std::vector<Point>& pts, long d) {
  auto init = independent_subset(pts, static_cast<std::size_t>(d) + 1);
  // Interior reference point: centroid of the initial simplex.
  Point inside(static_cast<std::size_t>(d), Rational(0));
  for (auto i : init)
    for (long k = 0; k < d; ++k) inside[static_cast<std::size_t>(k)] += pts[i][static_cast<std::size_t>(k)];
  for (auto& x : inside) x /= Rational(static_cast<long>(init.size()));

  std::vector<CoreFacet> fs;
  for (std::size_t drop = 0; drop < init.size(); ++drop) {
    CoreFacet f;
    std::vector<Point> fpts;
    for (std::size_t i = 0; i < init.size(); ++i)
      if (i != drop) {
        f.v.push_back(init[i]);
        fpts.push_back(pts[init[i]]);
      }
    std::sort(f.v.begin(), f.v.end());
    auto [n, h] = oriented_plane(fpts, inside);
    f.n = std::move(n);
    f.h = h;
    fs.push_back(std::move(f));
  }

  std::vector<bool> used(pts.size(), false);
  for (auto i : init) used[i] = true;

  for (std::size_t p = 0; p < pts.size(); ++p) {
    if (used[p]) continue;
    std::vector<std::size_t> visible;
    for (std::size_t i = 0; i < fs.size(); ++i)
      if (dot(fs[i].n, pts[p]) > fs[i].h) visible.push_back(i);
    if (visible.empty()) continue;

    // Horizon ridges appear in exactly one visible facet.
    std::map<std::vector<std::size_t>, int> ridge_count;
    for (auto i : visible) {
      for (std::size_t drop = 0; drop < fs[i].v.size(); ++drop) {
        std::vector<std::size_t> r;
        for (std::size_t k = 0; k < fs[i].v.size(); ++k)
          if (k != drop) r.push_back(fs[i].v[k]);
        ++ridge_count[r];
      }
    }
    std::vector<CoreFacet> next;
    std::vector<bool> is_visible(fs.size(), false);
    for (auto i : visible) is_visible[i] = true;
    for (std::size_t i = 0; i < fs.size(); ++i)
      if (!is_visible[i]) next.push_back(std::move(fs[i]));
    for (const auto& [ridge, cnt] : ridge_count) {
      if (cnt != 1) continue;
      CoreFacet f;
      f.v = ridge;
      f.v.push_back(p);
      std::sort(f.v.begin(), f.v.end());
      std::vector<Point> fpts;
      for (auto i : f.v) fpts.push_back(pts[i]);
      auto [n, h] = oriented_plane(fpts, inside);
      f.n = std::move(n);
      f.h = h;
      next.push_back(std::move(f));
    }
    fs = std::move(next);
  }
  return fs;
}

// Counterclockwise hull of >= 3 non-collinear, sorted, deduplicated points.
inline std::vector<std::size_t> monotone_chain(const std::vector<Point>& pts) {
  auto cross = [&](std::size_t o, std::size_t a, std::size_t b) {
    return (pts[a][0] - pts[o][0]) * (pts[b][1] - pts[o][1]) -
           (pts[a][1] - pts[o][1]) * (pts[b][0] - pts[o][0]);
  };
  std::vector<std::size_t> h;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (h.size() >= 2 && cross(h[h.size() - 2], h.back(), i) <= 0) h.pop_back();
    h.push_back(i);
  }
  std::size_t lower = h.size() + 1;
  for (std::size_t i = pts.size() - 1; i-- > 0;) {
    while (h.size() >= lower && cross(h[h.size() - 2], h.back(), i) <= 0) h.pop_back();
    h.push_back(i);
  }
  h.pop_back();  // first point repeated
  return h;
}

}  // namespace hull_detail

inline Polytope Polytope::convex_hull(std::vector<Point> pts) {
  if (pts.empty()) throw invalid_input("convex_hull: empty point set");
  const long d = static_cast<long>(pts[0].size());
  if (d < 1) throw invalid_input("convex_hull: ambient dimension must be positive");
  if (d > max_hull_dim())
    throw unsupported_dimension("convex_hull: ambient dimension " + std::to_string(d) +
                                " exceeds the configured cap " +
                                std::to_string(max_hull_dim()));
  for (const auto& p : pts)
    if (static_cast<long>(p.size()) != d)
      throw invalid_input("convex_hull: inconsistent point dimensions");

  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  Polytope P;
  P.d_ = d;

  auto indep = hull_detail::independent_subset(pts, static_cast<std::size_t>(d) + 1);
  P.dim_ = static_cast<long>(indep.size()) - 1;

  if (P.dim_ == 0) {
    P.verts_ = {pts[0]};
    P.vol_ = 0;
    return P;
  }

  if (P.dim_ < d) {
    // Lower-dimensional: find the vertex set inside the affine hull, where
    // the hull is full-dimensional.  Vertex sets are affine invariants, so
    // any rational affine coordinates will do.
    Mat B;  // columns: independent edge vectors
    for (std::size_t i = 1; i < indep.size(); ++i)
      B.push_back(sub(pts[indep[i]], pts[indep[0]]));
    // B is (dim x d) row-major here; select pivot columns to invert.
    const std::size_t k = static_cast<std::size_t>(P.dim_);
    // Find k independent columns of the k x d matrix B.
    std::vector<std::size_t> cols;
    {
      Mat work(k);
      for (std::size_t c = 0; c < static_cast<std::size_t>(d) && cols.size() < k; ++c) {
        for (std::size_t r = 0; r < k; ++r) work[r].push_back(B[r][c]);
        if (rank(work) == work[0].size()) {
          cols.push_back(c);
        } else {
          for (std::size_t r = 0; r < k; ++r) work[r].pop_back();
        }
      }
    }
    Mat A(k, std::vector<Rational>(k));
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) A[r][c] = B[c][cols[r]];
    std::vector<Point> flat;
    for (const auto& p : pts) {
      std::vector<Rational> rhs(k);
      for (std::size_t r = 0; r < k; ++r) rhs[r] = p[cols[r]] - pts[indep[0]][cols[r]];
      flat.push_back(solve(A, rhs));
    }
    // Recurse in the flat coordinates; map vertex ids back by position.
    std::vector<std::size_t> order(flat.size());
    for (std::size_t i = 0; i < flat.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return flat[a] < flat[b]; });
    std::vector<Point> sorted_flat;
    for (auto i : order) sorted_flat.push_back(flat[i]);
    Polytope sub = Polytope::convex_hull(sorted_flat);
    for (const auto& fv : sub.vertices()) {
      std::size_t pos = static_cast<std::size_t>(
          std::lower_bound(sorted_flat.begin(), sorted_flat.end(), fv) -
          sorted_flat.begin());
      P.verts_.push_back(pts[order[pos]]);
    }
    std::sort(P.verts_.begin(), P.verts_.end());
    P.vol_ = 0;
    return P;
  }

  // Full-dimensional.
  std::vector<hull_detail::CoreFacet> core;
  if (d == 1) {
    core.push_back({{0}, {Int(-1)}, -pts.front()[0]});
    core.push_back({{pts.size() - 1}, {Int(1)}, pts.back()[0]});
  } else if (d == 2) {
    auto cyc = hull_detail::monotone_chain(pts);
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      std::size_t a = cyc[i], b = cyc[(i + 1) % cyc.size()];
      std::vector<Rational> n = {pts[b][1] - pts[a][1], pts[a][0] - pts[b][0]};
      auto ni = primitive(n);
      hull_detail::CoreFacet f;
      f.v = {a, b};
      std::sort(f.v.begin(), f.v.end());
      f.n = ni;
      f.h = dot(ni, pts[a]);
      core.push_back(std::move(f));
    }
  } else {
    core = hull_detail::incremental_hull(pts, d);
  }

  // Hull vertices: points lying on d facet hyperplanes of full rank.
  // First merge coplanar boundary simplices into true facets.
  std::map<std::pair<std::vector<Int>, Rational>, std::vector<std::size_t>> merged;
  for (const auto& f : core) {
    auto& ids = merged[{f.n, f.h}];
    ids.insert(ids.end(), f.v.begin(), f.v.end());
  }

  std::vector<std::size_t> candidates;
  for (const auto& f : core)
    candidates.insert(candidates.end(), f.v.begin(), f.v.end());
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::vector<std::size_t> vertex_ids;
  for (auto c : candidates) {
    std::vector<std::vector<Int>> active;
    for (const auto& [plane, ids] : merged)
      if (dot(plane.first, pts[c]) == plane.second) active.push_back(plane.first);
    if (rank_int(active) == static_cast<std::size_t>(d)) vertex_ids.push_back(c);
  }

  for (auto i : vertex_ids) P.verts_.push_back(pts[i]);
  std::sort(P.verts_.begin(), P.verts_.end());

  for (const auto& [plane, ids] : merged) {
    Facet f;
    f.normal = plane.first;
    f.offset = plane.second;
    for (std::size_t vi = 0; vi < P.verts_.size(); ++vi)
      if (dot(f.normal, P.verts_[vi]) == f.offset) f.vertices.push_back(vi);
    P.facets_.push_back(std::move(f));
  }
  std::sort(P.facets_.begin(), P.facets_.end(), [](const Facet& a, const Facet& b) {
    if (a.normal != b.normal) return a.normal < b.normal;
    return a.offset < b.offset;
  });

  // Volume: fan from the lexicographically smallest vertex over the
  // simplicial boundary; simplices through the apex contribute zero.
  const Point& apex = P.verts_[0];
  Rational vol(0);
  for (const auto& f : core) {
    Mat m;
    for (auto i : f.v) m.push_back(sub(pts[i], apex));
    Rational dd = det(m);
    if (dd < 0) dd = -dd;
    vol += dd;
  }
  Rational fact(1);
  for (long i = 2; i <= d; ++i) fact *= i;
  P.vol_ = vol / fact;
  return P;
}

inline Polytope minkowski_sum(const Polytope& A, const Polytope& B) {
  if (A.ambient_dim() != B.ambient_dim())
    throw invalid_input("minkowski_sum: ambient dimension mismatch");
  std::vector<Point> sums;
  for (const auto& a : A.vertices())
    for (const auto& b : B.vertices()) {
      Point s(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
      sums.push_back(std::move(s));
    }
  return Polytope::convex_hull(std::move(sums));
}

inline std::vector<std::vector<Int>> facet_normals(const Polytope& P) {
  std::vector<std::vector<Int>> out;
  for (const auto& f : P.facets()) out.push_back(f.normal);
  return out;
}

// Simplices (d+1 points each) covering a full-dimensional polytope: fan from
// the lexicographically smallest vertex over recursively triangulated facets.
inline std::vector<std::vector<Point>> triangulate(const Polytope& P) {
  const long d = P.ambient_dim();
  if (P.dim() != d) throw invalid_input("triangulate: polytope is not full-dimensional");
  std::vector<std::vector<Point>> out;
  if (d == 1) {
    out.push_back({P.vertices().front(), P.vertices().back()});
    return out;
  }
  const Point& apex = P.vertices()[0];
  for (const auto& f : P.facets()) {
    bool has_apex = false;
    for (auto i : f.vertices)
      if (P.vertices()[i] == apex) has_apex = true;
    if (has_apex) continue;
    auto fpts = P.facet_points(f);
    auto flat = lattice_flatten(fpts, f.normal);
    Polytope sub = Polytope::convex_hull(flat);
    for (const auto& simp : triangulate(sub)) {
      std::vector<Point> lifted = {apex};
      for (const auto& corner : simp) {
        for (std::size_t i = 0; i < flat.size(); ++i)
          if (flat[i] == corner) {
            lifted.push_back(fpts[i]);
            break;
          }
      }
      out.push_back(std::move(lifted));
    }
  }
  return out;
}

// Volume of the simplex spanned by d+1 points in Q^d.
inline Rational simplex_volume(const std::vector<Point>& s) {
  const std::size_t d = s.size() - 1;
  Mat m;
  for (std::size_t i = 1; i <= d; ++i) m.push_back(sub(s[i], s[0]));
  Rational v = det(m);
  if (v < 0) v = -v;
  Rational fact(1);
  for (std::size_t i = 2; i <= d; ++i) fact *= Rational(static_cast<long>(i));
  return v / fact;
}

// (d-1)-volume of a face normalized to the lattice Z^d on its supporting
// hyperplane with primitive integer normal u: drop a coordinate k with
// u_k != 0 and divide the projected volume by |u_k|.
inline Rational lattice_face_volume(const std::vector<Point>& face,
                                    const std::vector<Int>& u) {
  if (face.empty()) throw invalid_input("lattice_face_volume: empty face");
  const std::size_t d = u.size();
  Rational h = dot(u, face[0]);
  for (const auto& p : face)
    if (dot(u, p) != h) throw invalid_input("lattice_face_volume: normal not constant on face");
  std::size_t k = d;
  for (std::size_t i = 0; i < d; ++i)
    if (u[i] != 0) {
      k = i;
      break;
    }
  if (k == d) throw invalid_input("lattice_face_volume: zero normal");
  if (d == 1) return Rational(1);  // a facet of a segment is a point
  std::vector<Point> proj;
  for (const auto& p : face) {
    Point q;
    for (std::size_t i = 0; i < d; ++i)
      if (i != k) q.push_back(p[i]);
    proj.push_back(std::move(q));
  }
  Rational vol = Polytope::convex_hull(std::move(proj)).volume();
  Int uk = u[k] < 0 ? Int(-u[k]) : u[k];
  return vol / Rational(uk);
}

}  // namespace rootbound

#endif
