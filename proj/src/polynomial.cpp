#include "hyperlat/polynomial.hpp"

#include "hyperlat/error.hpp"

#include <map>
#include <mutex>
#include <optional>

namespace hyperlat {

int degree(const IntPoly& p) { return static_cast<int>(p.size()) - 1; }
int degree(const RatPoly& p) { return static_cast<int>(p.size()) - 1; }

void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}
void trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

RatPoly add(const RatPoly& a, const RatPoly& b) {
  RatPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

RatPoly sub(const RatPoly& a, const RatPoly& b) {
  RatPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

RatPoly mul(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

IntPoly mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
  if (b.empty()) throw Error(ErrorCode::InvalidParameter, "polynomial division by zero");
  RatPoly r = a;
  trim(r);
  if (r.size() < b.size()) return {{}, r};
  RatPoly q(r.size() - b.size() + 1);
  while (!r.empty() && r.size() >= b.size()) {
    const std::size_t shift = r.size() - b.size();
    const Rational c = r.back() / b.back();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
    r.pop_back();
    trim(r);
  }
  trim(q);
  return {q, r};
}

std::optional<IntPoly> divide_exact(const IntPoly& a, const IntPoly& b) {
  if (b.empty() || b.back() != 1) throw Error(ErrorCode::InvalidParameter, "divisor must be monic");
  IntPoly r = a;
  trim(r);
  if (r.size() < b.size()) return r.empty() ? std::optional<IntPoly>(IntPoly{}) : std::nullopt;
  IntPoly q(r.size() - b.size() + 1);
  while (!r.empty() && r.size() >= b.size()) {
    const std::size_t shift = r.size() - b.size();
    const Integer c = r.back();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
    r.pop_back();
    trim(r);
  }
  if (!r.empty()) return std::nullopt;
  trim(q);
  return q;
}

RatPoly derivative(const RatPoly& p) {
  RatPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

RatPoly monic(RatPoly p) {
  trim(p);
  if (p.empty()) return p;
  const Rational lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

RatPoly gcd(RatPoly a, RatPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

Rational evaluate(const RatPoly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int sign_at(const RatPoly& p, const Rational& x) {
  const Rational v = evaluate(p, x);
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

IntPoly characteristic_polynomial(const IntMatrix& a) {
  const std::size_t n = a.rows();
  // c_n = 1; M_k = A M_{k-1} + c_{n-k+1} I; c_{n-k} = -tr(A M_k) / k.
  IntPoly c(n + 1);
  c[n] = 1;
  IntMatrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    IntMatrix next = a * m;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    m = std::move(next);
    const IntMatrix am = a * m;
    Integer tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = -tr / static_cast<long>(k);
  }
  trim(c);
  return c;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t r = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    r -= r / p;
  }
  if (n > 1) r -= r / n;
  return r;
}

namespace {

const IntPoly& cyclotomic_locked(std::uint64_t k, std::map<std::uint64_t, IntPoly>& cache) {
  if (auto it = cache.find(k); it != cache.end()) return it->second;
  // x^k - 1 = prod_{d | k} Phi_d.
  IntPoly p(k + 1);
  p[0] = -1;
  p[k] = 1;
  for (std::uint64_t d = 1; d < k; ++d)
    if (k % d == 0) p = *divide_exact(p, cyclotomic_locked(d, cache));
  return cache.emplace(k, std::move(p)).first->second;
}

}  // namespace

const IntPoly& cyclotomic(std::uint64_t k) {
  static std::mutex mu;
  static std::map<std::uint64_t, IntPoly> cache;
  if (k == 0) throw Error(ErrorCode::InvalidParameter, "cyclotomic index must be positive");
  std::lock_guard<std::mutex> lock(mu);
  return cyclotomic_locked(k, cache);
}

std::pair<IntPoly, std::vector<std::uint64_t>> strip_cyclotomic(IntPoly p) {
  trim(p);
  std::vector<std::uint64_t> orders;
  const std::uint64_t n = static_cast<std::uint64_t>(std::max(degree(p), 0));
  // phi(k) >= sqrt(k/2), so phi(k) <= n forces k <= 2 n^2.
  for (std::uint64_t k = 1; k <= 2 * n * n + 2 && degree(p) > 0; ++k) {
    if (euler_phi(k) > static_cast<std::uint64_t>(degree(p))) continue;
    while (degree(p) > 0) {
      auto q = divide_exact(p, cyclotomic(k));
      if (!q) break;
      p = std::move(*q);
      orders.push_back(k);
    }
  }
  return {p, orders};
}

std::vector<RatPoly> sturm_chain(const RatPoly& p) {
  std::vector<RatPoly> chain{p, derivative(p)};
  trim(chain[0]);
  while (!chain.back().empty() && degree(chain.back()) > 0) {
    auto r = divmod(chain[chain.size() - 2], chain.back()).second;
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  if (chain.back().empty()) chain.pop_back();
  return chain;
}

namespace {

int variations(const std::vector<int>& signs) {
  int v = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

int variations_at(const std::vector<RatPoly>& chain, const Rational& x) {
  std::vector<int> s;
  for (const auto& f : chain) s.push_back(sign_at(f, x));
  return variations(s);
}

int variations_at_infinity(const std::vector<RatPoly>& chain) {
  std::vector<int> s;
  for (const auto& f : chain) s.push_back(f.empty() ? 0 : (f.back() > 0 ? 1 : -1));
  return variations(s);
}

}  // namespace

int count_roots(const std::vector<RatPoly>& chain, const Rational& a, const Rational& b) {
  return variations_at(chain, a) - variations_at(chain, b);
}

int count_roots_above(const std::vector<RatPoly>& chain, const Rational& a) {
  return variations_at(chain, a) - variations_at_infinity(chain);
}

Rational root_bound(const RatPoly& p) {
  Rational m = 0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) m = std::max(m, Rational(abs(p[i] / p.back())));
  return 1 + m;
}

std::pair<Rational, Rational> refine_root(const RatPoly& p, Rational lo, Rational hi, const Rational& width) {
  int slo = sign_at(p, lo);
  if (sign_at(p, hi) == 0) {
    // The root sits exactly at hi; keep a degenerate bracket.
    return {hi, hi};
  }
  while (hi - lo > width) {
    const Rational mid = (lo + hi) / 2;
    const int s = sign_at(p, mid);
    if (s == 0) return {mid, mid};
    if (s == slo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

}  // namespace hyperlat
