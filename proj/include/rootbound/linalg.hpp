#ifndef ROOTBOUND_LINALG_HPP
#define ROOTBOUND_LINALG_HPP

// Small exact linear algebra over Q and Z.  Dimensions here are at most 5,
// so plain Gaussian elimination with rationals is never a bottleneck.

#include <algorithm>
#include <cstddef>
#include <tuple>
#include <vector>

#include "rootbound/numeric.hpp"

namespace rootbound {

using Point = std::vector<Rational>;
using Mat = std::vector<std::vector<Rational>>;

inline Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rational dot(const std::vector<Int>& a, const std::vector<Rational>& b) {
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * b[i];
  return s;
}

inline std::vector<Rational> sub(const Point& a, const Point& b) {
  std::vector<Rational> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Rational det(Mat m) {
  const std::size_t n = m.size();
  Rational d(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return Rational(0);
    if (piv != c) {
      std::swap(m[piv], m[c]);
      d = -d;
    }
    d *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return d;
}

inline std::size_t rank(Mat m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t rk = 0;
  for (std::size_t c = 0; c < cols && rk < rows; ++c) {
    std::size_t piv = rk;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rk]);
    for (std::size_t r = rk + 1; r < rows; ++r) {
      if (m[r][c] == 0) continue;
      Rational f = m[r][c] / m[rk][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rk][k];
    }
    ++rk;
  }
  return rk;
}

inline std::size_t rank_int(const std::vector<std::vector<Int>>& m) {
  Mat q(m.size());
  for (std::size_t r = 0; r < m.size(); ++r)
    for (const auto& x : m[r]) q[r].push_back(Rational(x));
  return rank(std::move(q));
}

// Basis of { x : m x = 0 } via reduced row echelon form.
inline std::vector<std::vector<Rational>> nullspace(Mat m) {
  if (m.empty()) return {};
  const std::size_t rows = m.size(), cols = m[0].size();
  std::vector<std::size_t> pivot_col;
  std::size_t rk = 0;
  for (std::size_t c = 0; c < cols && rk < rows; ++c) {
    std::size_t piv = rk;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rk]);
    Rational lead = m[rk][c];
    for (std::size_t k = c; k < cols; ++k) m[rk][k] /= lead;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rk || m[r][c] == 0) continue;
      Rational f = m[r][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rk][k];
    }
    pivot_col.push_back(c);
    ++rk;
  }
  std::vector<std::vector<Rational>> basis;
  for (std::size_t c = 0; c < cols; ++c) {
    bool is_pivot = std::find(pivot_col.begin(), pivot_col.end(), c) != pivot_col.end();
    if (is_pivot) continue;
    std::vector<Rational> x(cols, Rational(0));
    x[c] = 1;
    for (std::size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = -m[r][c];
    basis.push_back(std::move(x));
  }
  return basis;
}

// Solve A x = b for square nonsingular A.
inline std::vector<Rational> solve(Mat a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) throw invalid_input("solve: singular matrix");
    std::swap(a[piv], a[c]);
    std::swap(b[piv], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

// Scale a nonzero rational vector to the primitive integer vector with the
// same direction.
inline std::vector<Int> primitive(const std::vector<Rational>& v) {
  Int l(1);
  for (const auto& x : v) l = int_lcm(l, den(x));
  std::vector<Int> w(v.size());
  Int g(0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    w[i] = num(v[i]) * (l / den(v[i]));
    g = int_gcd(g, w[i]);
  }
  if (g == 0) throw invalid_input("primitive: zero vector");
  for (auto& x : w) x /= g;
  return w;
}

inline std::vector<Int> primitive(const std::vector<Int>& v) {
  Int g(0);
  for (const auto& x : v) g = int_gcd(g, x);
  if (g == 0) throw invalid_input("primitive: zero vector");
  std::vector<Int> w(v);
  for (auto& x : w) x /= g;
  return w;
}

// Normal of the hyperplane through d affinely independent points in Q^d,
// via cofactor expansion over the (d-1) x d matrix of edge vectors.
// Returns the zero vector when the points are affinely dependent.
inline std::vector<Rational> hyperplane_normal(const std::vector<Point>& pts) {
  const std::size_t d = pts[0].size();
  std::vector<std::vector<Rational>> e;
  for (std::size_t i = 1; i < pts.size(); ++i) e.push_back(sub(pts[i], pts[0]));
  std::vector<Rational> n(d);
  for (std::size_t j = 0; j < d; ++j) {
    Mat minor(e.size());
    for (std::size_t r = 0; r < e.size(); ++r)
      for (std::size_t k = 0; k < d; ++k)
        if (k != j) minor[r].push_back(e[r][k]);
    Rational m = det(minor);
    n[j] = (j % 2 == 0) ? m : -m;
  }
  return n;
}

// Extended gcd: returns (g, x, y) with x*a + y*b = g >= 0.
inline std::tuple<Int, Int, Int> xgcd(Int a, Int b) {
  Int x0(1), y0(0), x1(0), y1(1);
  while (b != 0) {
    Int q = a / b;
    Int r = a - q * b;
    a = b;
    b = r;
    Int nx = x0 - q * x1, ny = y0 - q * y1;
    x0 = x1;
    y0 = y1;
    x1 = nx;
    y1 = ny;
  }
  if (a < 0) {
    a = -a;
    x0 = -x0;
    y0 = -y0;
  }
  return {a, x0, y0};
}

// Basis of the lattice { w in Z^d : <u, w> = 0 } for a primitive integer u,
// as the last d-1 columns of a unimodular V with u^T V = e_1^T.
inline std::vector<std::vector<Int>> lattice_kernel_basis(const std::vector<Int>& u) {
  const std::size_t d = u.size();
  // V starts as the identity; column operations reduce a := u to e_1 * gcd.
  std::vector<std::vector<Int>> V(d, std::vector<Int>(d, 0));
  for (std::size_t i = 0; i < d; ++i) V[i][i] = 1;
  std::vector<Int> a(u);
  for (std::size_t i = 1; i < d; ++i) {
    if (a[i] == 0) continue;
    auto [g, x, y] = xgcd(a[0], a[i]);
    Int p = a[0] / g, q = a[i] / g;
    for (std::size_t r = 0; r < d; ++r) {
      Int c0 = V[r][0], ci = V[r][i];
      V[r][0] = x * c0 + y * ci;
      V[r][i] = p * ci - q * c0;
    }
    a[0] = g;
    a[i] = 0;
  }
  if (a[0] != 1 && a[0] != -1)
    throw invalid_input("lattice_kernel_basis: normal vector is not primitive");
  std::vector<std::vector<Int>> basis;
  for (std::size_t c = 1; c < d; ++c) {
    std::vector<Int> col(d);
    for (std::size_t r = 0; r < d; ++r) col[r] = V[r][c];
    basis.push_back(std::move(col));
  }
  return basis;
}

// Coordinates of the points of a face with primitive normal u, relative to a
// lattice basis of u-perp and the lexicographically smallest face point.
// Lattice-normalized volumes in these coordinates agree with the pairing
// against primitive integer normals.
inline std::vector<Point> lattice_flatten(const std::vector<Point>& face_pts,
                                          const std::vector<Int>& u) {
  const std::size_t d = u.size();
  auto basis = lattice_kernel_basis(u);
  Point base = *std::min_element(face_pts.begin(), face_pts.end());
  Mat B(d, std::vector<Rational>(d - 1));
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c + 1 < d; ++c) B[r][c] = Rational(basis[c][r]);
  // Solve B y = x - base using d-1 independent rows of B.
  // Collect pivot rows by elimination once.
  std::vector<std::size_t> rows;
  {
    Mat work = B;
    std::vector<std::size_t> order(d);
    for (std::size_t i = 0; i < d; ++i) order[i] = i;
    std::size_t rk = 0;
    for (std::size_t c = 0; c + 1 < d && rk < d; ++c) {
      std::size_t piv = rk;
      while (piv < d && work[piv][c] == 0) ++piv;
      if (piv == d) continue;
      std::swap(work[piv], work[rk]);
      std::swap(order[piv], order[rk]);
      for (std::size_t r = rk + 1; r < d; ++r) {
        if (work[r][c] == 0) continue;
        Rational f = work[r][c] / work[rk][c];
        for (std::size_t k = c; k + 1 < d; ++k) work[r][k] -= f * work[rk][k];
      }
      rows.push_back(order[rk]);
      ++rk;
    }
  }
  if (rows.size() != d - 1) throw invalid_input("lattice_flatten: degenerate basis");
  Mat A(d - 1, std::vector<Rational>(d - 1));
  for (std::size_t r = 0; r < d - 1; ++r)
    for (std::size_t c = 0; c < d - 1; ++c) A[r][c] = B[rows[r]][c];
  std::vector<Point> out;
  for (const auto& p : face_pts) {
    std::vector<Rational> rhs(d - 1);
    for (std::size_t r = 0; r < d - 1; ++r) rhs[r] = p[rows[r]] - base[rows[r]];
    out.push_back(solve(A, rhs));
  }
  return out;
}

// Diagonal of the Smith normal form of an integer matrix.
inline std::vector<Int> smith_diagonal(std::vector<std::vector<Int>> m) {
  std::vector<Int> diag;
  if (m.empty() || m[0].empty()) return diag;
  std::size_t rows = m.size(), cols = m[0].size();
  std::size_t top = 0;
  while (top < rows && top < cols) {
    // Find a nonzero pivot.
    std::size_t pr = top, pc = top;
    bool found = false;
    for (std::size_t r = top; r < rows && !found; ++r)
      for (std::size_t c = top; c < cols && !found; ++c)
        if (m[r][c] != 0) {
          pr = r;
          pc = c;
          found = true;
        }
    if (!found) break;
    std::swap(m[pr], m[top]);
    for (std::size_t r = 0; r < rows; ++r) std::swap(m[r][pc], m[r][top]);
    for (;;) {
      bool clean = true;
      for (std::size_t r = top + 1; r < rows; ++r) {
        if (m[r][top] == 0) continue;
        if (m[r][top] % m[top][top] != 0) {
          auto [g, x, y] = xgcd(m[top][top], m[r][top]);
          Int p = m[top][top] / g, q = m[r][top] / g;
          for (std::size_t c = top; c < cols; ++c) {
            Int a = m[top][c], b = m[r][c];
            m[top][c] = x * a + y * b;
            m[r][c] = p * b - q * a;
          }
        } else {
          Int f = m[r][top] / m[top][top];
          for (std::size_t c = top; c < cols; ++c) m[r][c] -= f * m[top][c];
        }
      }
      for (std::size_t c = top + 1; c < cols; ++c) {
        if (m[top][c] == 0) continue;
        clean = false;
        if (m[top][c] % m[top][top] != 0) {
          auto [g, x, y] = xgcd(m[top][top], m[top][c]);
          Int p = m[top][top] / g, q = m[top][c] / g;
          for (std::size_t r = top; r < rows; ++r) {
            Int a = m[r][top], b = m[r][c];
            m[r][top] = x * a + y * b;
            m[r][c] = p * b - q * a;
          }
        } else {
          Int f = m[top][c] / m[top][top];
          for (std::size_t r = top; r < rows; ++r) m[r][c] -= f * m[r][top];
        }
      }
      bool rows_clean = true;
      for (std::size_t r = top + 1; r < rows; ++r)
        if (m[r][top] != 0) rows_clean = false;
      if (clean && rows_clean) break;
    }
    diag.push_back(m[top][top] < 0 ? Int(-m[top][top]) : m[top][top]);
    ++top;
  }
  // Enforce the divisibility chain.
  for (std::size_t i = 0; i + 1 < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j)
      if (diag[j] % diag[i] != 0) {
        Int g = int_gcd(diag[i], diag[j]);
        Int l = diag[i] / g * diag[j];
        diag[i] = g;
        diag[j] = l;
      }
  std::sort(diag.begin(), diag.end());
  return diag;
}

}  // namespace rootbound

#endif
