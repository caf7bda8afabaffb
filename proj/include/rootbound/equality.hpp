#ifndef ROOTBOUND_EQUALITY_HPP
#define ROOTBOUND_EQUALITY_HPP

// Slope enumeration at places of the coefficient line, tau-initial systems,
// and a sufficient certificate for the refined bound to be attained.
//
// For a direction tau in R^n, the slope of a lifted polytope is its face in
// direction (tau, 1).  The initial system of the family at a place v collects
// the initial coefficients of the terms sitting on those faces; the bound is
// attained whenever every initial system with tau != 0 at finite places, and
// every one at infinity including tau = 0, has no solution with all t_k != 0.
// The certificate below decides this fully in one variable; in two variables
// it enumerates the systems and leaves solvability to the reader.

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "rootbound/adelic.hpp"
#include "rootbound/factorization.hpp"
#include "rootbound/laurent.hpp"
#include "rootbound/linalg.hpp"
#include "rootbound/numeric.hpp"
#include "rootbound/upoly.hpp"

namespace rootbound {

// A Laurent polynomial with plain rational coefficients, kept sparse.
using InitPoly = std::vector<std::pair<std::vector<long>, Rational>>;

// One slope family: the per-polynomial faces cut out by a common direction.
// Faces hold indices into the terms of the merged system's polynomials.
struct SlopeFamily {
  Place v;
  std::vector<Rational> tau;  // a representative inside the realizing cell
  bool tau_zero = false;      // family realized at tau = 0
  long cell_dim = 0;          // dimension of the set of tau realizing it
  std::vector<std::vector<std::size_t>> faces;
};

struct InitialSystem {
  Place v;
  std::vector<Rational> tau;
  std::vector<InitPoly> polys;
};

struct EqualityCertificate {
  bool certified = false;
  std::string reason;  // empty when certified
  std::vector<InitialSystem> systems;
};

namespace equality_detail {

// Lifted point sets (a, -ord_v) of the merged polynomials, with the height
// supplied by the caller so that places given by an irreducible-over-our-
// factorization polynomial can be handled through multiplicities.
template <typename HeightFn>
std::vector<std::vector<Point>> lifted_sets(const LaurentSystem& sys, HeightFn height) {
  std::vector<std::vector<Point>> out(sys.polys.size());
  for (std::size_t i = 0; i < sys.polys.size(); ++i) {
    for (const auto& term : sys.polys[i]) {
      Point p;
      for (long a : term.a) p.push_back(Rational(a));
      p.push_back(height(term.alpha));
      out[i].push_back(std::move(p));
    }
  }
  return out;
}

inline Rational place_height(const UniPoly& alpha, const Place& v) {
  return v.infinite ? Rational(-ord_inf(alpha)) : Rational(-ord_at(alpha, v.value));
}

// Per-polynomial maximizers of <(tau,1), p> over the lifted points.
inline std::vector<std::vector<std::size_t>> family_at(
    const std::vector<std::vector<Point>>& lifted, const std::vector<Rational>& tau) {
  std::vector<std::vector<std::size_t>> fam;
  for (const auto& pts : lifted) {
    Rational best;
    std::vector<std::size_t> face;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      Rational val = pts[j].back();
      for (std::size_t k = 0; k + 1 < pts[j].size(); ++k) val += tau[k] * pts[j][k];
      if (face.empty() || val > best) {
        best = val;
        face = {j};
      } else if (val == best) {
        face.push_back(j);
      }
    }
    fam.push_back(std::move(face));
  }
  return fam;
}

// Candidate directions hitting every cell of the one-dimensional subdivision:
// every tie value between two lifted points of one polynomial, the midpoints
// between consecutive ties, and points beyond both ends.
inline std::vector<std::pair<std::vector<Rational>, long>> candidates_line(
    const std::vector<std::vector<Point>>& lifted) {
  std::vector<Rational> ties;
  for (const auto& pts : lifted)
    for (std::size_t j = 0; j < pts.size(); ++j)
      for (std::size_t k = j + 1; k < pts.size(); ++k) {
        Rational da = pts[j][0] - pts[k][0];
        if (da == 0) continue;
        ties.push_back((pts[k][1] - pts[j][1]) / da);
      }
  std::sort(ties.begin(), ties.end());
  ties.erase(std::unique(ties.begin(), ties.end()), ties.end());

  std::vector<std::pair<std::vector<Rational>, long>> cand;
  if (ties.empty()) {
    cand.push_back({{Rational(0)}, 1});
    return cand;
  }
  cand.push_back({{ties.front() - 1}, 1});
  for (std::size_t k = 0; k < ties.size(); ++k) {
    cand.push_back({{ties[k]}, 0});
    if (k + 1 < ties.size())
      cand.push_back({{(ties[k] + ties[k + 1]) / 2}, 1});
  }
  cand.push_back({{ties.back() + 1}, 1});
  bool zero_is_tie = std::find(ties.begin(), ties.end(), Rational(0)) != ties.end();
  if (!zero_is_tie) cand.push_back({{Rational(0)}, 1});
  return cand;
}

struct TieLine {
  std::vector<Rational> normal;  // integer entries, primitive, sign-canonical
  Rational offset;               // normal . tau = offset
};

// Candidate directions for two variables: the tie lines of each polynomial
// cut the tau-plane into cells; we take every pairwise intersection, points
// along each line between and beyond the intersections, and small exact
// offsets to either side of those, which together meet every cell.
inline std::vector<std::pair<std::vector<Rational>, long>> candidates_plane(
    const std::vector<std::vector<Point>>& lifted) {
  std::vector<TieLine> lines;
  for (const auto& pts : lifted)
    for (std::size_t j = 0; j < pts.size(); ++j)
      for (std::size_t k = j + 1; k < pts.size(); ++k) {
        std::vector<Rational> nrm = {pts[j][0] - pts[k][0], pts[j][1] - pts[k][1]};
        if (nrm[0] == 0 && nrm[1] == 0) continue;
        Rational off = pts[k][2] - pts[j][2];
        // Normalize to a primitive integer normal with positive first nonzero
        // entry, so the same geometric line deduplicates reliably.
        std::vector<Int> prim = primitive(nrm);
        std::size_t nz = (prim[0] != 0) ? 0 : 1;
        Rational scale = nrm[nz] / Rational(prim[nz]);
        Rational offc = off / scale;
        if (prim[nz] < 0) {
          prim[0] = -prim[0];
          prim[1] = -prim[1];
          offc = -offc;
        }
        TieLine ln{{Rational(prim[0]), Rational(prim[1])}, offc};
        bool seen = false;
        for (const auto& other : lines)
          if (other.normal == ln.normal && other.offset == ln.offset) seen = true;
        if (!seen) lines.push_back(std::move(ln));
      }

  std::vector<std::pair<std::vector<Rational>, long>> cand;
  if (lines.empty()) {
    cand.push_back({{Rational(0), Rational(0)}, 2});
    return cand;
  }

  auto dot2 = [](const std::vector<Rational>& a, const std::vector<Rational>& b) {
    return a[0] * b[0] + a[1] * b[1];
  };

  std::vector<std::vector<Rational>> verts;
  for (std::size_t a = 0; a < lines.size(); ++a)
    for (std::size_t b = a + 1; b < lines.size(); ++b) {
      Rational det = lines[a].normal[0] * lines[b].normal[1] -
                     lines[a].normal[1] * lines[b].normal[0];
      if (det == 0) continue;
      Rational x = (lines[a].offset * lines[b].normal[1] -
                    lines[b].offset * lines[a].normal[1]) / det;
      Rational y = (lines[a].normal[0] * lines[b].offset -
                    lines[b].normal[0] * lines[a].offset) / det;
      verts.push_back({x, y});
    }
  for (const auto& w : verts) cand.push_back({w, 0});

  std::vector<std::vector<Rational>> side_points;
  for (const auto& ln : lines) {
    std::vector<Rational> dir = {-ln.normal[1], ln.normal[0]};
    Rational nn = dot2(ln.normal, ln.normal);
    std::vector<Rational> base = {ln.normal[0] * ln.offset / nn,
                                  ln.normal[1] * ln.offset / nn};
    std::vector<Rational> params;
    for (const auto& w : verts)
      if (dot2(ln.normal, w) == ln.offset)
        params.push_back((dot2(dir, w) - dot2(dir, base)) / dot2(dir, dir));
    std::sort(params.begin(), params.end());
    params.erase(std::unique(params.begin(), params.end()), params.end());

    std::vector<Rational> samples;
    if (params.empty()) {
      samples.push_back(Rational(0));
    } else {
      samples.push_back(params.front() - 1);
      for (std::size_t k = 0; k + 1 < params.size(); ++k)
        samples.push_back((params[k] + params[k + 1]) / 2);
      samples.push_back(params.back() + 1);
    }
    for (const Rational& t : samples) {
      std::vector<Rational> p = {base[0] + t * dir[0], base[1] + t * dir[1]};
      cand.push_back({p, 1});
      side_points.push_back(p);
    }
  }

  // Step off each on-line sample by less than the distance to the nearest
  // other line, reaching the open cells on both sides.
  for (std::size_t s = 0; s < side_points.size(); ++s) {
    const auto& p = side_points[s];
    // Recover the line this sample sits on (membership is exact, and the
    // samples are chosen off every other line).
    for (const auto& ln : lines) {
      if (dot2(ln.normal, p) != ln.offset) continue;
      Rational eps;
      bool have = false;
      for (const auto& other : lines) {
        Rational denom = dot2(other.normal, ln.normal);
        if (denom == 0) continue;
        Rational t = (other.offset - dot2(other.normal, p)) / denom;
        if (t < 0) t = -t;
        if (t == 0) continue;
        if (!have || t < eps) {
          eps = t;
          have = true;
        }
      }
      if (!have) eps = Rational(2);
      eps /= 2;
      cand.push_back({{p[0] + eps * ln.normal[0], p[1] + eps * ln.normal[1]}, 2});
      cand.push_back({{p[0] - eps * ln.normal[0], p[1] - eps * ln.normal[1]}, 2});
      break;
    }
  }

  // The cell containing the origin is cut out by the lines through it.
  std::vector<std::vector<Rational>> through_zero;
  for (const auto& ln : lines)
    if (ln.offset == 0) through_zero.push_back(ln.normal);
  long zdim = 2 - static_cast<long>(through_zero.empty() ? 0 : rank(through_zero));
  cand.push_back({{Rational(0), Rational(0)}, zdim});
  return cand;
}

template <typename HeightFn>
std::vector<SlopeFamily> enumerate_families(const LaurentSystem& merged, const Place& v,
                                            HeightFn height) {
  auto lifted = lifted_sets(merged, height);
  auto cand = merged.n == 1 ? candidates_line(lifted) : candidates_plane(lifted);
  std::sort(cand.begin(), cand.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<Rational> zero(merged.n, Rational(0));
  auto fam0 = family_at(lifted, zero);

  std::vector<SlopeFamily> out;
  for (const auto& [tau, dim] : cand) {
    auto faces = family_at(lifted, tau);
    bool found = false;
    for (auto& f : out) {
      if (f.faces != faces) continue;
      f.cell_dim = std::max(f.cell_dim, dim);
      found = true;
      break;
    }
    if (found) continue;
    SlopeFamily f;
    f.v = v;
    f.tau = tau;
    f.tau_zero = (faces == fam0);
    if (f.tau_zero) f.tau = zero;
    f.cell_dim = dim;
    f.faces = std::move(faces);
    out.push_back(std::move(f));
  }
  return out;
}

inline LaurentSystem merged_valid(const LaurentSystem& sys) {
  adelic_detail::check_system(sys);
  LaurentSystem merged = collapse(sys);
  for (const auto& f : merged.polys)
    if (f.empty()) throw invalid_input("polynomial collapses to zero");
  return merged;
}

inline std::string tau_to_string(const std::vector<Rational>& tau) {
  std::string s = "(";
  for (std::size_t k = 0; k < tau.size(); ++k) {
    if (k) s += ", ";
    s += to_string(tau[k]);
  }
  return s + ")";
}

inline std::string place_to_string(const Place& v) {
  return v.infinite ? "infinity" : "s = " + to_string(v.value);
}

}  // namespace equality_detail

// All distinct slope families of the merged system at one place, each with a
// representative direction, the dimension of its realizing cell, and a flag
// on the family cut out by tau = 0.
inline std::vector<SlopeFamily> slopes_at_place(const LaurentSystem& sys, const Place& v) {
  LaurentSystem merged = equality_detail::merged_valid(sys);
  if (merged.n > 2)
    throw unsupported_dimension("slope enumeration handles at most two variables");
  return equality_detail::enumerate_families(
      merged, v, [&](const UniPoly& a) { return equality_detail::place_height(a, v); });
}

// The initial system at (v, tau): per polynomial, the terms on the slope with
// their initial coefficients at v (leading coefficients when v is infinite).
inline InitialSystem initial_system(const LaurentSystem& sys, const Place& v,
                                    const std::vector<Rational>& tau) {
  LaurentSystem merged = equality_detail::merged_valid(sys);
  if (static_cast<long>(tau.size()) != merged.n)
    throw invalid_input("initial_system: direction has the wrong dimension");
  auto lifted = equality_detail::lifted_sets(
      merged, [&](const UniPoly& a) { return equality_detail::place_height(a, v); });
  auto faces = equality_detail::family_at(lifted, tau);

  InitialSystem out;
  out.v = v;
  out.tau = tau;
  for (std::size_t i = 0; i < merged.polys.size(); ++i) {
    InitPoly p;
    for (std::size_t j : faces[i]) {
      const auto& term = merged.polys[i][j];
      Rational c = v.infinite ? initial_coeff_inf(term.alpha)
                              : initial_coeff(term.alpha, v.value);
      p.push_back({term.a, c});
    }
    std::sort(p.begin(), p.end());
    out.polys.push_back(std::move(p));
  }
  return out;
}

// Torus solvability in one variable: strip the common t-powers, then a joint
// root with t != 0 exists exactly when the gcd over the rationals of the
// stripped polynomials is non-constant.
inline bool solvable_in_torus_n1(const std::vector<InitPoly>& polys) {
  if (polys.empty()) throw invalid_input("solvable_in_torus_n1: empty system");
  UniPoly g = UniPoly::constant(Rational(0));
  for (const auto& p : polys) {
    if (p.empty()) throw invalid_input("solvable_in_torus_n1: zero polynomial");
    long lo = p[0].first.at(0), hi = lo;
    for (const auto& [a, c] : p) {
      if (a.size() != 1)
        throw unsupported_dimension("torus solvability is decided in one variable only");
      lo = std::min(lo, a[0]);
      hi = std::max(hi, a[0]);
    }
    std::vector<Rational> coeffs(static_cast<std::size_t>(hi - lo) + 1, Rational(0));
    for (const auto& [a, c] : p) coeffs[static_cast<std::size_t>(a[0] - lo)] += c;
    g = upoly_gcd(g, UniPoly(std::move(coeffs)));
  }
  return g.degree() >= 1;
}

inline bool solvable_in_torus_n1(const InitialSystem& is) {
  return solvable_in_torus_n1(is.polys);
}

inline std::string to_string(const InitialSystem& is) {
  std::string s = equality_detail::place_to_string(is.v) +
                  ", tau = " + equality_detail::tau_to_string(is.tau) + ": ";
  for (std::size_t i = 0; i < is.polys.size(); ++i) {
    if (i) s += " ; ";
    for (std::size_t j = 0; j < is.polys[i].size(); ++j) {
      const auto& [a, c] = is.polys[i][j];
      std::string mono;
      for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += detail::t_name(static_cast<long>(k), static_cast<long>(a.size()));
        if (a[k] != 1) mono += "^" + std::to_string(a[k]);
      }
      Rational c_abs = c < 0 ? -c : c;
      if (j == 0)
        s += (c < 0 ? "-" : "");
      else
        s += (c < 0 ? " - " : " + ");
      if (mono.empty())
        s += to_string(c_abs);
      else if (c_abs == 1)
        s += mono;
      else
        s += to_string(c_abs) + "*" + mono;
    }
  }
  return s;
}

// Sufficient certificate that the refined bound counts the roots exactly: at
// every finite place each slope with tau != 0, and at infinity every slope,
// must carry an unsolvable initial system.  Fully decided in one variable;
// systems in two variables are enumerated for inspection instead.  A finite
// place only needs checking where some coefficient vanishes; elsewhere the
// slopes with tau != 0 are single monomials, which never vanish on the torus.
inline EqualityCertificate equality_certificate(const LaurentSystem& sys) {
  LaurentSystem merged = equality_detail::merged_valid(sys);
  if (merged.n > 2)
    return {false, "slope enumeration handles at most two variables", {}};

  for (const auto& f : merged.polys) {
    UniPoly c = content(f);
    if (c.degree() >= 1)
      throw not_primitive("a polynomial has non-constant content " + to_string(c) +
                              "; the certificate applies to primitive systems",
                          to_string(c));
  }

  std::vector<UniPoly> coeffs;
  for (const auto& f : merged.polys)
    for (const auto& term : f) coeffs.push_back(term.alpha);
  CoprimeFactorization fac = coprime_factorization(coeffs);

  EqualityCertificate cert;
  cert.certified = true;

  auto check_family = [&](const SlopeFamily& fam, const Place& v) {
    InitialSystem is = initial_system(merged, v, fam.tau);
    cert.systems.push_back(is);
    if (merged.n != 1) return;
    if (solvable_in_torus_n1(is)) {
      cert.certified = false;
      cert.reason = "initial system at " + equality_detail::place_to_string(v) +
                    ", tau = " + equality_detail::tau_to_string(fam.tau) +
                    " has a root in the torus";
    }
  };

  for (const UniPoly& q : fac.factors) {
    if (!cert.certified) break;
    if (q.degree() == 1) {
      // Monic up to the integer normalization: the root is rational.
      Rational root = -q.coeff(0) / q.coeff(1);
      Place v = Place::at(root);
      for (const auto& fam : slopes_at_place(merged, v)) {
        if (fam.tau_zero && fam.cell_dim == 0) continue;
        check_family(fam, v);
        if (!cert.certified) break;
      }
    } else {
      // Roots of q are irrational, but the lifted heights only need the
      // multiplicity of q in each coefficient.  A slope whose every
      // polynomial keeps at least two terms would need initial coefficients
      // in an extension field; one with a single-term polynomial somewhere
      // is unsolvable outright.
      auto fams = equality_detail::enumerate_families(
          merged, Place::infinity(),
          [&](const UniPoly& a) { return Rational(-ord_factor(a, q)); });
      for (const auto& fam : fams) {
        if (fam.tau_zero && fam.cell_dim == 0) continue;
        bool monomial_somewhere = false;
        for (const auto& face : fam.faces)
          if (face.size() == 1) monomial_somewhere = true;
        if (!monomial_somewhere) {
          cert.certified = false;
          cert.reason = "place of degree " + std::to_string(q.degree()) + " (" +
                        to_string(q) + ") needs initial coefficients beyond the rationals";
          break;
        }
      }
    }
  }

  if (cert.certified || merged.n == 2) {
    Place inf = Place::infinity();
    for (const auto& fam : slopes_at_place(merged, inf)) {
      if (!cert.certified && merged.n == 1) break;
      check_family(fam, inf);
    }
  }

  if (cert.certified && merged.n == 2) {
    // Faces over the generic part of the line, sampled at a rational point
    // where no coefficient vanishes, are reported alongside.
    Rational v(0);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (const auto& f : merged.polys)
        for (const auto& term : f)
          if (term.alpha.eval(v) == 0) clean = false;
      if (!clean) v += 1;
    }
    Place gen = Place::at(v);
    for (const auto& fam : slopes_at_place(merged, gen)) check_family(fam, gen);
    cert.certified = false;
    cert.reason = "torus solvability of the initial systems is not decided in two variables";
  }

  return cert;
}

}  // namespace rootbound

#endif
