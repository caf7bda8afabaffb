#ifndef ROOTBOUND_MIXED_HPP
#define ROOTBOUND_MIXED_HPP

// Mixed volumes and mixed integrals, each computed by independent routes:
//   MV: inclusion-exclusion over Minkowski sums / support-function decomposition
//   MI: inclusion-exclusion over sup-convolutions / reduction to mixed volumes
//       of lifted polytopes / support-function decomposition with term exposure
// plus checkable closed-form identities (translation, linear change of
// variables, envelope split, permanent formula for boxes).

#include <algorithm>
#include <bit>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rootbound/concave.hpp"

namespace rootbound {

namespace mixed_detail {

// Primitive integer normal of the affine hull of a point set whose affine
// dimension is one less than the ambient dimension.
inline std::vector<Int> affine_normal(const std::vector<Point>& pts) {
  const std::size_t d = pts[0].size();
  if (d == 1) return {Int(1)};
  auto idx = hull_detail::independent_subset(pts, d + 1);
  if (idx.size() != d)
    throw invalid_input("affine_normal: point set is not a hyperplane");
  std::vector<Point> chosen;
  for (auto i : idx) chosen.push_back(pts[i]);
  return primitive(hyperplane_normal(chosen));
}

inline Polytope sum_all(const std::vector<Polytope>& qs, long ambient) {
  if (qs.empty())
    return Polytope::convex_hull(
        {Point(static_cast<std::size_t>(ambient), Rational(0))});
  Polytope s = qs[0];
  for (std::size_t i = 1; i < qs.size(); ++i) s = minkowski_sum(s, qs[i]);
  return s;
}

inline void check_family(const std::vector<Polytope>& q) {
  for (const auto& p : q)
    if (p.ambient_dim() != static_cast<long>(q.size()))
      throw invalid_input("mixed_volume: need n polytopes in n-space");
}

}  // namespace mixed_detail

// Inclusion-exclusion over volumes of Minkowski sums of subfamilies.
inline Rational mixed_volume_ie(const std::vector<Polytope>& q) {
  const std::size_t n = q.size();
  if (n == 0) return Rational(1);
  mixed_detail::check_family(q);
  Rational total(0);
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<Polytope> part;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) part.push_back(q[i]);
    Rational vol = mixed_detail::sum_all(part, static_cast<long>(n)).volume();
    if ((n - part.size()) % 2 == 0)
      total += vol;
    else
      total -= vol;
  }
  return total;
}

// Support-function decomposition: sum over the facet normals u of
// Q_2 + ... + Q_n of h_{Q_1}(u) times the mixed volume of the u-faces,
// taken in lattice coordinates on the hyperplane.
inline Rational mixed_volume_dec(const std::vector<Polytope>& q) {
  const std::size_t n = q.size();
  if (n == 0) return Rational(1);
  mixed_detail::check_family(q);
  std::vector<Polytope> rest(q.begin() + 1, q.end());
  Polytope s = mixed_detail::sum_all(rest, static_cast<long>(n));
  std::vector<std::vector<Int>> dirs;
  if (s.dim() == static_cast<long>(n)) {
    for (const auto& f : s.facets()) dirs.push_back(f.normal);
  } else if (s.dim() == static_cast<long>(n) - 1) {
    auto w = mixed_detail::affine_normal(s.vertices());
    dirs.push_back(w);
    for (auto& c : w) c = -c;
    dirs.push_back(w);
  } else {
    return Rational(0);
  }
  std::sort(dirs.begin(), dirs.end());
  Rational total(0);
  for (const auto& u : dirs) {
    std::vector<Polytope> faces;
    for (std::size_t i = 1; i < n; ++i)
      faces.push_back(
          Polytope::convex_hull(lattice_flatten(q[i].face_in_direction(u), u)));
    total += q[0].support_value(u) * mixed_volume_dec(faces);
  }
  return total;
}

namespace mixed_detail {

inline void check_family(const std::vector<ConcavePWA>& rho) {
  if (rho.empty()) throw invalid_input("mixed_integral: empty family");
  const long n = static_cast<long>(rho.size()) - 1;
  for (const auto& r : rho)
    if (r.base_dim() != n)
      throw invalid_input("mixed_integral: need n+1 functions in n variables");
}

}  // namespace mixed_detail

// Defining inclusion-exclusion: alternating sum of integrals of the
// sup-convolutions over all nonempty subfamilies.
inline Rational mixed_integral_def(const std::vector<ConcavePWA>& rho) {
  mixed_detail::check_family(rho);
  const std::size_t m = rho.size();  // n + 1
  Rational total(0);
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::optional<ConcavePWA> acc;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (1u << i))
        acc = acc ? sup_convolution(*acc, rho[i]) : rho[i];
    Rational term = integral(*acc);
    if ((m - std::popcount(mask)) % 2 == 0)
      total += term;
    else
      total -= term;
  }
  return total;
}

// Reduction to mixed volumes: truncate each graph hull at a floor level
// gamma_i <= min(rho_i, 0) and use
//   MI_n = MV_{n+1}(truncated hulls) + sum_i gamma_i * MV_n(other domains).
// The result does not depend on the choice of floors; gamma_offset <= 0
// shifts all of them for cross-checking exactly that.
inline Rational mixed_integral_mv(const std::vector<ConcavePWA>& rho,
                                  const Int& gamma_offset = Int(0)) {
  mixed_detail::check_family(rho);
  if (gamma_offset > 0)
    throw invalid_input("mixed_integral_mv: floor offset must be nonpositive");
  const long n = static_cast<long>(rho.size()) - 1;
  std::vector<Rational> gamma;
  std::vector<Polytope> truncated;
  for (const auto& r : rho) {
    Rational g(ifloor(std::min(r.min_value(), Rational(0))) + gamma_offset);
    gamma.push_back(g);
    std::vector<Point> pts = r.generators();
    if (n == 0) {
      pts.push_back({g});
    } else {
      Polytope dom = r.domain();
      for (auto v : dom.vertices()) {
        v.push_back(g);
        pts.push_back(std::move(v));
      }
    }
    truncated.push_back(Polytope::convex_hull(pts));
  }
  Rational total = mixed_volume_ie(truncated);
  for (std::size_t i = 0; i < rho.size(); ++i) {
    std::vector<Polytope> others;
    for (std::size_t j = 0; j < rho.size(); ++j)
      if (j != i && n > 0) others.push_back(rho[j].domain());
    total += gamma[i] * mixed_volume_ie(others);
  }
  return total;
}

struct MixedTerm {
  std::vector<Int> direction;
  Rational support;  // support value of the distinguished argument
  Rational weight;   // lower-dimensional mixed integral / mixed volume
  Rational value;    // support * weight
};

struct MixedIntegralDecomposition {
  std::vector<MixedTerm> facet_terms;  // over facet normals of the domain sum
  std::vector<MixedTerm> roof_terms;   // over upward normals of the graph sum
  Rational total;
};

inline Rational mixed_integral_dec(const std::vector<ConcavePWA>& rho);

namespace mixed_detail {

// Re-coordinatize a face-supported function into lattice coordinates of the
// hyperplane orthogonal to u.
inline ConcavePWA flatten_restriction(const ConcavePWA& r,
                                      const std::vector<Int>& u) {
  auto flat = lattice_flatten(r.base_points(), u);
  const auto& gens = r.generators();
  for (std::size_t i = 0; i < flat.size(); ++i)
    flat[i].push_back(gens[i].back());
  return ConcavePWA::from_lifted_points(std::move(flat));
}

}  // namespace mixed_detail

// Support-function decomposition of the mixed integral, with the individual
// terms exposed:
//   MI_n(rho_0..rho_n) = sum_u h_{Q_0}(u) MI_{n-1}(restrictions to u-faces)
//                      + sum_r h_{graph hull of rho_0}(r) MV_n(r-faces of
//                        the other graph hulls),
// u over facet normals of the sum of the domains of rho_1..rho_n, r over
// upward facet normals of the sum of their graph hulls, both in lattice
// coordinates.  Terms are listed in lexicographic direction order.
inline MixedIntegralDecomposition mixed_integral_dec_terms(
    const std::vector<ConcavePWA>& rho) {
  mixed_detail::check_family(rho);
  const long n = static_cast<long>(rho.size()) - 1;
  MixedIntegralDecomposition out;
  out.total = Rational(0);
  if (n == 0) {
    out.total = rho[0].max_value();
    return out;
  }

  {
    std::vector<Polytope> domains;
    for (std::size_t i = 1; i < rho.size(); ++i)
      domains.push_back(rho[i].domain());
    Polytope s = mixed_detail::sum_all(domains, n);
    std::vector<std::vector<Int>> dirs;
    if (s.dim() == n) {
      for (const auto& f : s.facets()) dirs.push_back(f.normal);
    } else if (s.dim() == n - 1) {
      auto w = mixed_detail::affine_normal(s.vertices());
      dirs.push_back(w);
      for (auto& c : w) c = -c;
      dirs.push_back(w);
    }
    std::sort(dirs.begin(), dirs.end());
    Polytope q0 = rho[0].domain();
    for (const auto& u : dirs) {
      std::vector<ConcavePWA> restricted;
      for (std::size_t i = 1; i < rho.size(); ++i)
        restricted.push_back(
            mixed_detail::flatten_restriction(restrict_to_face(rho[i], u), u));
      Rational h = q0.support_value(u);
      Rational sub = mixed_integral_dec(restricted);
      out.facet_terms.push_back({u, h, sub, h * sub});
    }
  }

  {
    std::vector<Polytope> hulls;
    for (std::size_t i = 1; i < rho.size(); ++i)
      hulls.push_back(rho[i].lifted_hull());
    Polytope s = mixed_detail::sum_all(hulls, n + 1);
    std::vector<std::vector<Int>> dirs;
    if (s.dim() == n + 1) {
      for (const auto& f : s.upper_facets()) dirs.push_back(f.normal);
    } else if (s.dim() == n) {
      auto w = mixed_detail::affine_normal(s.vertices());
      if (w.back() != 0) {
        if (w.back() < 0)
          for (auto& c : w) c = -c;
        dirs.push_back(w);
      }
    }
    std::sort(dirs.begin(), dirs.end());
    Polytope l0 = rho[0].lifted_hull();
    for (const auto& r : dirs) {
      std::vector<Polytope> faces;
      for (const auto& h : hulls)
        faces.push_back(
            Polytope::convex_hull(lattice_flatten(h.face_in_direction(r), r)));
      Rational hr = l0.support_value(r);
      Rational mv = mixed_volume_ie(faces);
      out.roof_terms.push_back({r, hr, mv, hr * mv});
    }
  }

  for (const auto& t : out.facet_terms) out.total += t.value;
  for (const auto& t : out.roof_terms) out.total += t.value;
  return out;
}

inline Rational mixed_integral_dec(const std::vector<ConcavePWA>& rho) {
  return mixed_integral_dec_terms(rho).total;
}

// MI(rho_0 + d_0, ..., rho_n + d_n)
//   = MI(rho) + sum_i d_i * MV_n(domains of the others);
// verifies the identity on the given data and returns the right-hand side.
inline Rational translation_identity_check(const std::vector<ConcavePWA>& rho,
                                           const std::vector<Rational>& delta) {
  mixed_detail::check_family(rho);
  if (delta.size() != rho.size())
    throw invalid_input("translation_identity_check: need one shift per function");
  const long n = static_cast<long>(rho.size()) - 1;
  std::vector<ConcavePWA> shifted;
  for (std::size_t i = 0; i < rho.size(); ++i)
    shifted.push_back(add_constant(rho[i], delta[i]));
  Rational lhs = mixed_integral_def(shifted);
  Rational rhs = mixed_integral_def(rho);
  for (std::size_t i = 0; i < rho.size(); ++i) {
    std::vector<Polytope> others;
    for (std::size_t j = 0; j < rho.size(); ++j)
      if (j != i && n > 0) others.push_back(rho[j].domain());
    rhs += delta[i] * mixed_volume_ie(others);
  }
  if (lhs != rhs)
    throw std::logic_error("translation identity failed on the given data");
  return rhs;
}

// MI(rho_0 o L, ..., rho_n o L) = MI(rho) / |det L|; verified, returns RHS.
inline Rational linear_identity_check(const std::vector<ConcavePWA>& rho,
                                      const std::vector<std::vector<Int>>& L) {
  mixed_detail::check_family(rho);
  std::vector<ConcavePWA> transformed;
  for (const auto& r : rho) transformed.push_back(apply_linear(r, L));
  Rational lhs = mixed_integral_def(transformed);
  Mat m(L.size(), std::vector<Rational>(L.size()));
  for (std::size_t i = 0; i < L.size(); ++i)
    for (std::size_t j = 0; j < L.size(); ++j) m[i][j] = Rational(L[i][j]);
  Rational d = det(m);
  if (d < 0) d = -d;
  Rational rhs = mixed_integral_def(rho) / d;
  if (lhs != rhs)
    throw std::logic_error("linear change identity failed on the given data");
  return rhs;
}

// MI of the upper envelopes plus MI of the negated lower envelopes equals
// MV_{n+1} of the polytopes themselves; verified, returns the mixed volume.
inline Rational bagne_split(const std::vector<Polytope>& r) {
  if (r.empty()) throw invalid_input("bagne_split: empty family");
  for (const auto& p : r)
    if (p.ambient_dim() != static_cast<long>(r.size()))
      throw invalid_input("bagne_split: need n+1 polytopes in (n+1)-space");
  std::vector<ConcavePWA> uppers, lowers;
  for (const auto& p : r) {
    auto [up, low_neg] = envelopes(p);
    uppers.push_back(std::move(up));
    lowers.push_back(std::move(low_neg));
  }
  Rational mv = mixed_volume_ie(r);
  Rational lhs = mixed_integral_def(uppers) + mixed_integral_def(lowers);
  if (lhs != mv)
    throw std::logic_error("envelope split identity failed on the given data");
  return mv;
}

// Closed form for constant functions on centered boxes: with box half-widths
// c_i in Q^n_{>0} and values rho_i,
//   MI_n = Vol([-1,1]^n) * Perm(c_0 ... c_n ; rho_0 ... rho_n).
// Verified against the defining route; returns the closed form.
inline Rational permanent_mi(const std::vector<std::vector<Rational>>& boxes,
                             const std::vector<Rational>& constants) {
  const std::size_t m = boxes.size();
  if (m < 2 || constants.size() != m)
    throw invalid_input("permanent_mi: need n+1 boxes and as many constants");
  const std::size_t n = m - 1;
  for (const auto& c : boxes) {
    if (c.size() != n)
      throw invalid_input("permanent_mi: box half-width count must equal n");
    for (const auto& x : c)
      if (x <= 0) throw invalid_input("permanent_mi: half-widths must be positive");
  }
  std::vector<ConcavePWA> rho;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Point> corners;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      Point p(n);
      for (std::size_t j = 0; j < n; ++j)
        p[j] = (mask & (1u << j)) ? boxes[i][j] : -boxes[i][j];
      corners.push_back(std::move(p));
    }
    rho.push_back(
        ConcavePWA::constant_fn(Polytope::convex_hull(corners), constants[i]));
  }
  Rational direct = mixed_integral_def(rho);

  std::vector<std::size_t> idx(m);
  for (std::size_t i = 0; i < m; ++i) idx[i] = i;
  Rational perm(0);
  do {
    Rational prod(1);
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t col = idx[i];
      prod *= (col < n) ? boxes[i][col] : constants[i];
    }
    perm += prod;
  } while (std::next_permutation(idx.begin(), idx.end()));
  Rational closed = Rational(Int(1) << n) * perm;
  if (direct != closed)
    throw std::logic_error("permanent formula failed on the given data");
  return closed;
}

}  // namespace rootbound

#endif
