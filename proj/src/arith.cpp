#include "hyperlat/arith.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace hyperlat {

namespace mp = boost::multiprecision;

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

RatVector to_rational(const IntVector& v) {
  RatVector r;
  r.reserve(v.size());
  for (const auto& x : v) r.emplace_back(x);
  return r;
}

Integer gcd_of(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) g = mp::gcd(g, x);
  return g;
}

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

bool is_zero(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

IntVector primitive(const IntVector& v) {
  Integer g = gcd_of(v);
  if (g == 0 || g == 1) return v;
  IntVector r = v;
  for (auto& x : r) x /= g;
  return r;
}

IntVector primitive(const RatVector& v) {
  Integer l = 1;
  for (const auto& x : v) {
    const Integer d = mp::denominator(x);
    l = l / mp::gcd(l, d) * d;
  }
  IntVector r;
  r.reserve(v.size());
  for (const auto& x : v) r.push_back(mp::numerator(x) * (l / mp::denominator(x)));
  return primitive(r);
}

Integer height(const IntVector& v) {
  Integer h = 0;
  for (const auto& x : v) h = std::max<Integer>(h, mp::abs(x));
  return h;
}

IntVector sign_normalized(IntVector v) {
  for (const auto& x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : v) y = -y;
    break;
  }
  return v;
}

bool simpler_vector(const IntVector& a, const IntVector& b) {
  const Integer ha = height(a), hb = height(b);
  if (ha != hb) return ha < hb;
  std::vector<std::size_t> sa, sb;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) sa.push_back(i);
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i] != 0) sb.push_back(i);
  if (sa.size() != sb.size()) return sa.size() < sb.size();
  if (sa != sb) return sa < sb;
  return a < b;
}

bool height_less(const IntVector& a, const IntVector& b) {
  const Integer ha = height(a), hb = height(b);
  if (ha != hb) return ha < hb;
  return a < b;
}

std::string vector_string(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += v[i].str();
  }
  return s + ")";
}

Integer determinant(const IntMatrix& m) {
  if (!m.square()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    const Rational inv = 1 / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Rational f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::optional<RatMatrix> inverse(const RatMatrix& m) {
  const std::size_t n = m.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

std::size_t rank(const RatMatrix& m) {
  RatMatrix a = m;
  return rref(a).size();
}

std::vector<RatVector> kernel(const RatMatrix& m) {
  RatMatrix a = m;
  const auto pivots = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVector v(a.cols());
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

Integer pow_int(const Integer& base, unsigned exp) { return mp::pow(base, exp); }

Integer isqrt(const Integer& n) {
  if (n < 0) throw std::domain_error("isqrt of negative");
  return mp::sqrt(n);
}

bool is_square(const Integer& n) {
  if (n < 0) return false;
  const Integer r = mp::sqrt(n);
  return r * r == n;
}

std::string to_string(const Integer& v) { return v.str(); }

std::string to_string(const Rational& v) {
  if (mp::denominator(v) == 1) return mp::numerator(v).str();
  return mp::numerator(v).str() + "/" + mp::denominator(v).str();
}

double to_double(const Rational& v) {
  using Float = mp::cpp_bin_float_double_extended;
  Float num(mp::numerator(v));
  Float den(mp::denominator(v));
  return static_cast<double>(num / den);
}

std::optional<std::int64_t> to_int64(const Integer& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    return std::nullopt;
  return static_cast<std::int64_t>(v);
}

}  // namespace hyperlat
