#pragma once

// Test-side oracles. None of these call into the library's algorithms: they
// use brute force or a different numerical method so that agreement means
// something.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

namespace oracle {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using Float50 = boost::multiprecision::cpp_bin_float_50;
using Vec = std::vector<Int>;

inline long mod(long a, long m) { return ((a % m) + m) % m; }

// ---------------------------------------------------------------------------
// Hilbert symbol at a prime p by counting residues: (a,b)_p = 1 iff
// z^2 = a x^2 + b y^2 has a primitive solution mod p^3 (p odd) or 2^5.
// After removing square factors the gradient has valuation <= 1 (odd p) or
// <= 2 (p = 2), so by Hensel these residues lift.
inline int hilbert_brute(long a, long b, long p) {
  auto strip = [p](long v) {
    while (v % (p * p) == 0) v /= p * p;
    return v;
  };
  a = strip(a);
  b = strip(b);
  const long m = p == 2 ? 32 : p * p * p;
  std::vector<char> square(m, 0), unit_square(m, 0);
  for (long z = 0; z < m; ++z) {
    square[z * z % m] = 1;
    if (z % p != 0) unit_square[z * z % m] = 1;
  }
  const long am = mod(a, m), bm = mod(b, m);
  for (long x = 0; x < m; ++x)
    for (long y = 0; y < m; ++y) {
      const long t = (am * (x * x % m) + bm * (y * y % m)) % m;
      const bool xy_unit = x % p != 0 || y % p != 0;
      if (xy_unit ? square[t] : unit_square[t]) return 1;
    }
  return -1;
}

inline int hilbert_real(long a, long b) { return (a < 0 && b < 0) ? -1 : 1; }

// ---------------------------------------------------------------------------
// Ternary diagonal isotropy by Holzer's bound: for a x^2 + b y^2 + c z^2 with
// abc squarefree, a nontrivial zero exists iff one exists with
// |x| <= sqrt|bc|, |y| <= sqrt|ac|, |z| <= sqrt|ab|.
inline bool ternary_isotropic_brute(long a, long b, long c) {
  auto bound = [](long u, long v) {
    long r = 0;
    while ((r + 1) * (r + 1) <= std::labs(u * v)) ++r;
    return r;
  };
  const long bx = bound(b, c), by = bound(a, c), bz = bound(a, b);
  for (long x = 0; x <= bx; ++x)
    for (long y = -by; y <= by; ++y)
      for (long z = -bz; z <= bz; ++z) {
        if (x == 0 && y == 0 && z == 0) continue;
        if (a * x * x + b * y * y + c * z * z == 0) return true;
      }
  return false;
}

inline bool squarefree(long n) {
  n = std::labs(n);
  for (long p = 2; p * p <= n; ++p)
    if (n % (p * p) == 0) return false;
  return n != 0;
}

// ---------------------------------------------------------------------------
// Exact rational linear algebra (plain Gauss-Jordan).

using RatMat = std::vector<std::vector<Rat>>;

inline std::size_t row_reduce(RatMat& m, std::size_t cols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[r], m[piv]);
    const Rat inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rat f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

inline std::size_t rank_of(const std::vector<Vec>& rows, std::size_t cols) {
  RatMat m;
  for (const auto& r : rows) m.emplace_back(r.begin(), r.end());
  return row_reduce(m, cols);
}

/// Basis of {x : rows . x = 0}.
inline std::vector<std::vector<Rat>> null_space(const std::vector<Vec>& rows, std::size_t cols) {
  RatMat m;
  for (const auto& r : rows) m.emplace_back(r.begin(), r.end());
  const std::size_t rk = row_reduce(m, cols);
  std::vector<std::size_t> pivot_col;
  for (std::size_t i = 0; i < rk; ++i)
    for (std::size_t c = 0; c < cols; ++c)
      if (m[i][c] != 0) {
        pivot_col.push_back(c);
        break;
      }
  std::vector<std::vector<Rat>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (std::find(pivot_col.begin(), pivot_col.end(), f) != pivot_col.end()) continue;
    std::vector<Rat> v(cols, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < rk; ++i) v[pivot_col[i]] = -m[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline Vec primitive_of(const std::vector<Rat>& v) {
  Int l = 1;
  for (const auto& x : v) l = boost::multiprecision::lcm(l, Int(denominator(x)));
  Vec out;
  Int g = 0;
  for (const auto& x : v) {
    out.push_back(Int(numerator(x)) * (l / Int(denominator(x))));
    g = boost::multiprecision::gcd(g, out.back());
  }
  if (g != 0)
    for (auto& x : out) x /= g;
  return out;
}

inline Int dot(const Vec& a, const Vec& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Extreme rays of {x : a.x >= 0 for all rows a}, taken inside the row space
/// (the Euclidean complement of the lineality space). Every subset of rows
/// whose rank is one less than the full rank cuts out a candidate line.
inline std::set<Vec> extreme_rays_brute(const std::vector<Vec>& rows, std::size_t dim) {
  std::set<Vec> out;
  const std::size_t r = rank_of(rows, dim);
  if (r == 0) return out;
  std::vector<Vec> lineality_basis;
  for (const auto& v : null_space(rows, dim)) lineality_basis.push_back(primitive_of(v));
  const std::size_t m = rows.size();
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<Vec> sub;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1) sub.push_back(rows[i]);
    if (rank_of(sub, dim) + 1 != r) continue;
    // x orthogonal to the lineality space keeps x in the row space.
    std::vector<Vec> eqs = sub;
    eqs.insert(eqs.end(), lineality_basis.begin(), lineality_basis.end());
    const auto ns = null_space(eqs, dim);
    if (ns.size() != 1) continue;
    Vec v = primitive_of(ns.front());
    for (int sign : {1, -1}) {
      Vec w = v;
      if (sign < 0)
        for (auto& x : w) x = -x;
      if (std::all_of(rows.begin(), rows.end(), [&](const Vec& a) { return dot(a, w) >= 0; })) out.insert(w);
    }
  }
  return out;
}

// Spectral radius in 50-digit floating point via Eigen's dense eigensolver
// (defined in spectral_oracle.cpp to keep the heavy template out of every
// test translation unit).
Float50 spectral_radius(const std::vector<std::vector<long>>& m);

}  // namespace oracle
