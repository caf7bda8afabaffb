#ifndef ROOTBOUND_CONCAVE_HPP
#define ROOTBOUND_CONCAVE_HPP

// Piecewise-affine concave functions on polytopes, represented by generator
// sets in Q^{n+1}: the function is the upper envelope of the convex hull of
// its generators, and its domain is the projection of that hull.  Keeping
// generators instead of facet structure turns sup-convolution into a plain
// Minkowski sum of point sets.

#include <algorithm>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "rootbound/polytope.hpp"

namespace rootbound {

class ConcavePWA {
 public:
  // Value at u: max{z : (u,z) in Conv(points)}.
  static ConcavePWA from_lifted_points(std::vector<Point> lifted) {
    if (lifted.empty()) throw invalid_input("from_lifted_points: empty generator set");
    ConcavePWA r;
    r.n_ = static_cast<long>(lifted[0].size()) - 1;
    if (r.n_ < 0) throw invalid_input("from_lifted_points: points need a lift coordinate");
    for (const auto& p : lifted)
      if (static_cast<long>(p.size()) != r.n_ + 1)
        throw invalid_input("from_lifted_points: inconsistent dimensions");
    r.gens_ = std::move(lifted);
    r.canonicalize();
    return r;
  }

  static ConcavePWA constant_fn(const Polytope& Q, const Rational& c) {
    std::vector<Point> lifted;
    for (const auto& v : Q.vertices()) {
      Point p(v);
      p.push_back(c);
      lifted.push_back(std::move(p));
    }
    return from_lifted_points(std::move(lifted));
  }

  long base_dim() const { return n_; }
  const std::vector<Point>& generators() const { return gens_; }

  // Hull of the generators in Q^{n+1}.
  Polytope lifted_hull() const {
    return Polytope::convex_hull(gens_);
  }

  Polytope domain() const {
    if (n_ == 0) throw invalid_input("domain: zero-dimensional base space");
    return Polytope::convex_hull(base_points());
  }

  std::vector<Point> base_points() const {
    std::vector<Point> b;
    for (const auto& g : gens_) b.emplace_back(g.begin(), g.end() - 1);
    return b;
  }

  Rational max_value() const {
    Rational m = gens_[0].back();
    for (const auto& g : gens_) m = std::max(m, g.back());
    return m;
  }

  // Concave functions attain their minimum at a domain vertex, and every
  // domain vertex appears among the canonical generators.
  Rational min_value() const {
    Rational m = gens_[0].back();
    for (const auto& g : gens_) m = std::min(m, g.back());
    return m;
  }

  Rational eval(const Point& u) const {
    if (static_cast<long>(u.size()) != n_) throw invalid_input("eval: wrong dimension");
    if (n_ == 0) return max_value();
    // Express u in the affine hull of the domain and check membership.
    Rational best(0);
    bool found = false;
    for (const auto& piece : graph_pieces())
      if (piece.contains_base(u)) {
        Rational z = piece.value_at(u);
        if (!found || z > best) {
          best = z;
          found = true;
        }
      }
    if (!found) throw invalid_input("eval: point outside the domain");
    return best;
  }

  friend bool operator==(const ConcavePWA& a, const ConcavePWA& b) {
    return a.n_ == b.n_ && a.gens_ == b.gens_;
  }
  friend bool operator!=(const ConcavePWA& a, const ConcavePWA& b) { return !(a == b); }

  struct GraphPiece {
    // One affine piece of the graph: lifted vertex set plus the projected
    // facet inequalities needed for membership tests.
    std::vector<Point> lifted;  // vertices of the piece, on the graph
    long n;

    bool contains_base(const Point& u) const {
      // u lies in the projection iff adding it to the projected vertex set
      // leaves the convex hull unchanged.
      std::vector<Point> base;
      for (const auto& p : lifted) base.emplace_back(p.begin(), p.end() - 1);
      std::vector<Point> extended = base;
      extended.push_back(u);
      return Polytope::convex_hull(extended).vertices() ==
             Polytope::convex_hull(base).vertices();
    }

    Rational value_at(const Point& u) const {
      // Solve for the affine function through the lifted vertices.
      // Use n+1 affinely independent lifted points if the piece is flat in
      // the right way; general approach: find coefficients (a, b) with
      // z = <a, x> + b on the piece by least structure: pick independent.
      // The piece's affine hull projects bijectively, so the system below
      // is solvable from any base-spanning subset.
      const std::size_t nn = static_cast<std::size_t>(n);
      // Build rows (x_i - x_0) for a spanning subset, solve for gradient on
      // the affine hull of the base points; directions orthogonal to the
      // base affine hull do not matter for points inside it.
      Mat rows;
      std::vector<Rational> rhs;
      std::vector<std::size_t> picked;
      for (std::size_t i = 1; i < lifted.size() && rows.size() < nn; ++i) {
        std::vector<Rational> e(nn);
        for (std::size_t k = 0; k < nn; ++k) e[k] = lifted[i][k] - lifted[0][k];
        rows.push_back(e);
        if (rank(rows) == rows.size()) {
          rhs.push_back(lifted[i][nn] - lifted[0][nn]);
        } else {
          rows.pop_back();
        }
      }
      // Complete to a square system with unit vectors orthogonal to the
      // affine hull (gradient component there is arbitrary; pick 0).
      for (std::size_t k = 0; k < nn && rows.size() < nn; ++k) {
        std::vector<Rational> e(nn, Rational(0));
        e[k] = 1;
        rows.push_back(e);
        if (rank(rows) == rows.size()) {
          rhs.push_back(Rational(0));
        } else {
          rows.pop_back();
        }
      }
      auto grad = solve(rows, rhs);
      Rational z = lifted[0][nn];
      for (std::size_t k = 0; k < nn; ++k) z += grad[k] * (u[k] - lifted[0][k]);
      return z;
    }
  };

  // The affine pieces of the graph (for full-dimensional lifted hulls these
  // are the upper facets; a flat hull is a single piece).
  std::vector<GraphPiece> graph_pieces() const {
    std::vector<GraphPiece> pieces;
    Polytope H = lifted_hull();
    if (H.dim() == n_ + 1) {
      for (const auto& f : H.upper_facets())
        pieces.push_back({H.facet_points(f), n_});
    } else {
      pieces.push_back({H.vertices(), n_});
    }
    return pieces;
  }

 private:
  ConcavePWA() = default;

  void canonicalize() {
    std::sort(gens_.begin(), gens_.end());
    gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
    if (n_ == 0) {
      // Single base point; keep the maximal lift.
      Point top = gens_[0];
      for (const auto& g : gens_)
        if (g[0] > top[0]) top = g;
      gens_ = {top};
      return;
    }
    // Work in full-dimensional coordinates for the base.
    std::vector<Point> base;
    for (const auto& g : gens_) base.emplace_back(g.begin(), g.end() - 1);
    auto indep = hull_detail::independent_subset(base, static_cast<std::size_t>(n_) + 1);
    const long k = static_cast<long>(indep.size()) - 1;

    std::vector<Point> flat_lift;
    if (k == n_) {
      flat_lift = gens_;
    } else if (k == 0) {
      Point top = gens_[0];
      for (const auto& g : gens_)
        if (g.back() > top.back()) top = g;
      gens_ = {top};
      return;
    } else {
      // Affine coordinates in the base hull; the lift rides along.
      Mat B;
      for (std::size_t i = 1; i < indep.size(); ++i)
        B.push_back(sub(base[indep[i]], base[indep[0]]));
      std::vector<std::size_t> cols;
      {
        Mat work(static_cast<std::size_t>(k));
        for (std::size_t c = 0; c < static_cast<std::size_t>(n_) &&
                                cols.size() < static_cast<std::size_t>(k);
             ++c) {
          for (std::size_t r = 0; r < static_cast<std::size_t>(k); ++r)
            work[r].push_back(B[r][c]);
          if (rank(work) == work[0].size()) {
            cols.push_back(c);
          } else {
            for (std::size_t r = 0; r < static_cast<std::size_t>(k); ++r) work[r].pop_back();
          }
        }
      }
      Mat A(static_cast<std::size_t>(k), std::vector<Rational>(static_cast<std::size_t>(k)));
      for (std::size_t r = 0; r < static_cast<std::size_t>(k); ++r)
        for (std::size_t c = 0; c < static_cast<std::size_t>(k); ++c)
          A[r][c] = B[c][cols[r]];
      for (std::size_t i = 0; i < gens_.size(); ++i) {
        std::vector<Rational> rhs(static_cast<std::size_t>(k));
        for (std::size_t r = 0; r < static_cast<std::size_t>(k); ++r)
          rhs[r] = base[i][cols[r]] - base[indep[0]][cols[r]];
        Point y = solve(A, rhs);
        y.push_back(gens_[i].back());
        flat_lift.push_back(std::move(y));
      }
    }

    Polytope H = Polytope::convex_hull(flat_lift);
    std::vector<Point> keep_flat;
    if (H.dim() == k + 1) {
      // Vertices on at least one upper facet are the graph vertices.
      std::vector<bool> on_upper(H.vertices().size(), false);
      for (const auto& f : H.upper_facets())
        for (auto i : f.vertices) on_upper[i] = true;
      for (std::size_t i = 0; i < H.vertices().size(); ++i)
        if (on_upper[i]) keep_flat.push_back(H.vertices()[i]);
    } else {
      // The function is affine on its domain: every hull vertex is on the graph.
      keep_flat = H.vertices();
    }

    std::vector<Point> canon;
    for (const auto& fl : keep_flat)
      for (std::size_t i = 0; i < flat_lift.size(); ++i)
        if (flat_lift[i] == fl) {
          canon.push_back(gens_[i]);
          break;
        }
    std::sort(canon.begin(), canon.end());
    gens_ = std::move(canon);
  }

  long n_ = 0;
  std::vector<Point> gens_;
};

inline ConcavePWA sup_convolution(const ConcavePWA& a, const ConcavePWA& b) {
  if (a.base_dim() != b.base_dim()) throw invalid_input("sup_convolution: dimension mismatch");
  std::vector<Point> sums;
  for (const auto& x : a.generators())
    for (const auto& y : b.generators()) {
      Point s(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] + y[i];
      sums.push_back(std::move(s));
    }
  return ConcavePWA::from_lifted_points(std::move(sums));
}

inline ConcavePWA add_constant(const ConcavePWA& r, const Rational& c) {
  std::vector<Point> g = r.generators();
  for (auto& p : g) p.back() += c;
  return ConcavePWA::from_lifted_points(std::move(g));
}

inline ConcavePWA scale_values(const ConcavePWA& r, const Rational& m) {
  if (m <= 0) throw invalid_input("scale_values: scale must be positive");
  std::vector<Point> g = r.generators();
  for (auto& p : g) p.back() *= m;
  return ConcavePWA::from_lifted_points(std::move(g));
}

// Restriction to the face of the domain selected by the direction u.
inline ConcavePWA restrict_to_face(const ConcavePWA& r, const std::vector<Rational>& u) {
  if (r.base_dim() == 0) return r;
  auto base = r.base_points();
  Rational h = dot(u, base[0]);
  for (const auto& x : base) h = std::max(h, dot(u, x));
  std::vector<Point> keep;
  for (std::size_t i = 0; i < base.size(); ++i)
    if (dot(u, base[i]) == h) keep.push_back(r.generators()[i]);
  return ConcavePWA::from_lifted_points(std::move(keep));
}

inline ConcavePWA restrict_to_face(const ConcavePWA& r, const std::vector<Int>& u) {
  std::vector<Rational> q(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) q[i] = Rational(u[i]);
  return restrict_to_face(r, q);
}

// result(u) = r(L u); generators map by L^{-1} on the base.
inline ConcavePWA apply_linear(const ConcavePWA& r, const std::vector<std::vector<Int>>& L) {
  const std::size_t n = static_cast<std::size_t>(r.base_dim());
  if (L.size() != n) throw invalid_input("apply_linear: matrix size mismatch");
  Mat M(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) M[i][j] = Rational(L[i][j]);
  if (det(M) == 0) throw invalid_input("apply_linear: singular matrix");
  std::vector<Point> g;
  for (const auto& p : r.generators()) {
    std::vector<Rational> x(p.begin(), p.end() - 1);
    Point y = solve(M, x);
    y.push_back(p.back());
    g.push_back(std::move(y));
  }
  return ConcavePWA::from_lifted_points(std::move(g));
}

// Upper envelope and negated lower envelope of a polytope in R^{n+1}.
inline std::pair<ConcavePWA, ConcavePWA> envelopes(const Polytope& R) {
  std::vector<Point> up = R.vertices();
  std::vector<Point> down = R.vertices();
  for (auto& p : down) p.back() = -p.back();
  return {ConcavePWA::from_lifted_points(std::move(up)),
          ConcavePWA::from_lifted_points(std::move(down))};
}

// Exact integral over the domain; 0 when the domain is lower-dimensional,
// point evaluation when the base space is zero-dimensional.
inline Rational integral(const ConcavePWA& r) {
  if (r.base_dim() == 0) return r.max_value();
  const long n = r.base_dim();
  Polytope H = r.lifted_hull();
  Rational total(0);
  auto piece_integral = [&](const std::vector<Point>& lifted_pts) {
    // Triangulate the projected piece; on each simplex the integral is the
    // volume times the mean of the vertex values.
    std::vector<Point> base;
    for (const auto& p : lifted_pts) base.emplace_back(p.begin(), p.end() - 1);
    Polytope B = Polytope::convex_hull(base);
    if (B.dim() < n) return Rational(0);
    Rational sum(0);
    for (const auto& simp : triangulate(B)) {
      Rational vol = simplex_volume(simp);
      Rational mean(0);
      for (const auto& corner : simp) {
        for (std::size_t i = 0; i < base.size(); ++i)
          if (base[i] == corner) {
            mean += lifted_pts[i].back();
            break;
          }
      }
      mean /= Rational(static_cast<long>(simp.size()));
      sum += vol * mean;
    }
    return sum;
  };

  if (H.dim() == n + 1) {
    for (const auto& f : H.upper_facets()) total += piece_integral(H.facet_points(f));
  } else {
    total = piece_integral(H.vertices());
  }
  return total;
}

}  // namespace rootbound

#endif
