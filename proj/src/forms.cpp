#include "hyperlat/forms.hpp"

#include "hyperlat/error.hpp"
#include "hyperlat/parallel.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace hyperlat {

namespace mp = boost::multiprecision;

// ---------------------------------------------------------------------------
// Integer factorization (small inputs: Gram entries and diagonal classes)

namespace {

bool probably_prime(const Integer& n) {
  static thread_local std::mt19937_64 gen(12345);
  return mp::miller_rabin_test(n, 25, gen);
}

Integer pollard_brent(const Integer& n) {
  if (n % 2 == 0) return 2;
  for (Integer c = 1;; ++c) {
    Integer y = 2, x = 2, g = 1, q = 1, ys;
    const std::uint64_t m = 64;
    std::uint64_t r = 1;
    auto f = [&](const Integer& v) { return (v * v + c) % n; };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = (q * mp::abs(x - y)) % n;
        }
        g = mp::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = mp::gcd(mp::abs(x - ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(Integer n, std::map<Integer, unsigned>& out) {
  if (n == 1) return;
  if (probably_prime(n)) {
    ++out[n];
    return;
  }
  const Integer d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

std::map<Integer, unsigned> factorize(Integer n) {
  std::map<Integer, unsigned> out;
  n = mp::abs(n);
  if (n == 0) throw Error(ErrorCode::InvalidParameter, "cannot factor 0");
  for (unsigned p = 2; p < 10000 && Integer(p) * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      ++out[Integer(p)];
      n /= p;
    }
  }
  if (n > 1) factor_into(n, out);
  return out;
}

// n = p^v * u with p not dividing u.
std::pair<unsigned, Integer> split_valuation(Integer n, const Integer& p) {
  unsigned v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return {v, n};
}

int legendre(const Integer& u, const Integer& p) {
  Integer r = u % p;
  if (r < 0) r += p;
  if (r == 0) return 0;
  const Integer e = mp::powm(r, (p - 1) / 2, p);
  return e == 1 ? 1 : -1;
}

Integer integer_class(const Rational& r) { return mp::numerator(r) * mp::denominator(r); }

}  // namespace

std::vector<Integer> prime_factors(const Integer& n) {
  std::vector<Integer> ps;
  for (const auto& [p, e] : factorize(n)) ps.push_back(p);
  return ps;
}

Integer squarefree_class(const Rational& r) {
  if (r == 0) throw Error(ErrorCode::InvalidParameter, "squarefree class of 0");
  const Integer n = integer_class(r);
  Integer s = n < 0 ? -1 : 1;
  for (const auto& [p, e] : factorize(n))
    if (e % 2 == 1) s *= p;
  return s;
}

int hilbert_symbol(const Rational& a_in, const Rational& b_in, const Place& place) {
  if (a_in == 0 || b_in == 0) throw Error(ErrorCode::InvalidParameter, "Hilbert symbol of zero");
  const Integer a = integer_class(a_in);
  const Integer b = integer_class(b_in);
  if (place.is_infinite()) return (a < 0 && b < 0) ? -1 : 1;
  const Integer& p = place.prime;
  const auto [alpha, u] = split_valuation(a, p);
  const auto [beta, v] = split_valuation(b, p);
  if (p == 2) {
    auto eps = [](const Integer& x) {
      Integer r = x % 4;
      if (r < 0) r += 4;
      return r == 3 ? 1 : 0;
    };
    auto omega = [](const Integer& x) {
      Integer r = x % 8;
      if (r < 0) r += 8;
      return (r == 3 || r == 5) ? 1 : 0;
    };
    const int e = eps(u) * eps(v) + static_cast<int>(alpha) * omega(v) + static_cast<int>(beta) * omega(u);
    return e % 2 == 0 ? 1 : -1;
  }
  int s = 1;
  const Integer half = (p - 1) / 2;
  if ((alpha * beta) % 2 == 1 && half % 2 == 1) s = -s;
  if (beta % 2 == 1) s *= legendre(u, p);
  if (alpha % 2 == 1) s *= legendre(v, p);
  return s;
}

bool is_local_square(const Rational& r, const Place& place) {
  if (r == 0) return true;
  const Integer n = integer_class(r);
  if (place.is_infinite()) return n > 0;
  const auto [v, u] = split_valuation(n, place.prime);
  if (v % 2 == 1) return false;
  if (place.prime == 2) {
    Integer m = u % 8;
    if (m < 0) m += 8;
    return m == 1;
  }
  return legendre(u, place.prime) == 1;
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

using i128 = __int128;

struct SmallGram {
  std::size_t n = 0;
  std::vector<std::int64_t> g;
  std::int64_t at(std::size_t i, std::size_t j) const { return g[i * n + j]; }
};

SmallGram small_gram(const GramLattice& lattice, int height) {
  SmallGram s;
  s.n = lattice.rank();
  s.g.reserve(s.n * s.n);
  Integer maxabs = 0;
  for (const auto& x : lattice.gram().data()) {
    const auto v = to_int64(x);
    if (!v) throw Error(ErrorCode::InvalidParameter, "Gram entries too large for enumeration");
    s.g.push_back(*v);
    maxabs = std::max<Integer>(maxabs, mp::abs(x));
  }
  const Integer bound = maxabs * s.n * s.n * Integer(height) * height * 4;
  if (bound > (Integer(1) << 100)) throw Error(ErrorCode::InvalidParameter, "enumeration values exceed 2^100");
  return s;
}

i128 isqrt128(i128 d) {
  if (d < 0) return -1;
  i128 r = static_cast<i128>(std::sqrt(static_cast<long double>(d)));
  while (r > 0 && r * r > d) --r;
  while ((r + 1) * (r + 1) <= d) ++r;
  return r;
}

Integer to_integer(i128 x) {
  const bool neg = x < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(x + 1)) + 1 : static_cast<unsigned __int128>(x);
  Integer r = static_cast<std::uint64_t>(u >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(u);
  return neg ? Integer(-r) : r;
}

bool positive_representative(const std::vector<std::int64_t>& v) {
  for (auto x : v)
    if (x != 0) return x > 0;
  return false;
}

// Scans prefixes with first coordinate fixed to `first`; appends solutions.
void scan_slice(const SmallGram& s, i128 target, int height, std::int64_t first,
                std::vector<std::vector<std::int64_t>>& out) {
  const std::size_t n = s.n;
  std::vector<std::int64_t> v(n, 0);
  if (n == 1) {
    for (std::int64_t t = 1; t <= height; ++t)
      if (static_cast<i128>(s.at(0, 0)) * t * t == target) out.push_back({t});
    return;
  }
  // lin[d][j] = sum_{i<d} 2 g_ij v_i, q[d] = Q(v_0..v_{d-1}).
  std::vector<std::vector<i128>> lin(n, std::vector<i128>(n, 0));
  std::vector<i128> q(n, 0);
  const std::size_t last = n - 1;

  auto solve_last = [&](std::size_t) {
    const i128 a = s.at(last, last);
    const i128 b = lin[last][last];
    const i128 c = q[last] - target;
    auto emit = [&](std::int64_t t) {
      v[last] = t;
      if (positive_representative(v)) out.push_back(v);
    };
    if (a == 0) {
      if (b == 0) {
        if (c == 0)
          for (std::int64_t t = -height; t <= height; ++t) emit(t);
        return;
      }
      if ((-c) % b != 0) return;
      const i128 t = -c / b;
      if (t >= -height && t <= height) emit(static_cast<std::int64_t>(t));
      return;
    }
    const i128 disc = b * b - 4 * a * c;
    if (disc < 0) return;
    const i128 r = isqrt128(disc);
    if (r * r != disc) return;
    for (int sgn : {-1, 1}) {
      if (sgn == 1 && r == 0) break;
      const i128 num = -b + sgn * r;
      if (num % (2 * a) != 0) continue;
      const i128 t = num / (2 * a);
      if (t >= -height && t <= height) emit(static_cast<std::int64_t>(t));
    }
  };

  auto place = [&](std::size_t d, std::int64_t t) {
    v[d] = t;
    q[d + 1] = q[d] + lin[d][d] * t + static_cast<i128>(s.at(d, d)) * t * t;
    for (std::size_t j = d + 1; j < n; ++j) lin[d + 1][j] = lin[d][j] + 2 * static_cast<i128>(s.at(d, j)) * t;
  };

  place(0, first);
  if (n == 2) {
    solve_last(0);
    return;
  }
  // Odometer over coordinates 1..n-2.
  std::size_t d = 1;
  std::vector<std::int64_t> cur(n, -height - 1);
  while (true) {
    if (cur[d] < height) {
      ++cur[d];
      place(d, cur[d]);
      if (d + 1 == last) {
        solve_last(d);
      } else {
        ++d;
        cur[d] = -height - 1;
      }
    } else {
      if (d == 1) break;
      --d;
    }
  }
}

}  // namespace

std::vector<LatticeVector> enumerate_norm_vectors(const GramLattice& lattice, const Integer& norm, int height,
                                                  const EnumerationOptions& options) {
  if (height < 1) throw Error(ErrorCode::InvalidParameter, "height bound must be >= 1");
  const std::size_t n = lattice.rank();
  const double prefixes = std::pow(2.0 * height + 1.0, static_cast<double>(n - 1));
  if (prefixes > static_cast<double>(options.candidate_cap))
    throw Error(ErrorCode::BudgetExceeded, "enumeration needs " + std::to_string(prefixes) + " prefixes, cap " +
                                               std::to_string(options.candidate_cap));
  const SmallGram s = small_gram(lattice, height);
  const auto target64 = to_int64(norm);
  if (!target64) return {};
  const i128 target = *target64;

  // Only first coordinates >= 0 can start a positive representative.
  const std::size_t slices = static_cast<std::size_t>(height) + 1;
  std::vector<std::vector<std::vector<std::int64_t>>> found(slices);
  parallel_for(slices, [&](std::size_t i) { scan_slice(s, target, height, static_cast<std::int64_t>(i), found[i]); });

  std::vector<LatticeVector> result;
  for (const auto& slice : found)
    for (const auto& v : slice) {
      LatticeVector w;
      w.reserve(n);
      for (auto x : v) w.emplace_back(x);
      result.push_back(std::move(w));
    }
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  (void)to_integer;
  return result;
}

// ---------------------------------------------------------------------------
// Congruence obstructions

namespace {

std::vector<Integer> primitivity_primes(const Integer& modulus, const Integer& target) {
  // A solution divisible by p has norm divisible by p^2, so a p-unit
  // coordinate can be demanded when target = 0 (rescale) or p^2 does not
  // divide the target.
  std::vector<Integer> out;
  for (const auto& p : prime_factors(modulus))
    if (target == 0 || target % (p * p) != 0) out.push_back(p);
  return out;
}

// Returns true if some residue vector satisfies the congruence.
bool residue_scan(const GramLattice& lattice, const Integer& modulus, const Integer& target,
                  const std::vector<Integer>& prim, std::uint64_t& scanned) {
  const std::size_t n = lattice.rank();
  const std::int64_t m = static_cast<std::int64_t>(modulus);
  std::vector<std::int64_t> g(n * n);
  for (std::size_t i = 0; i < n * n; ++i) {
    Integer r = lattice.gram().data()[i] % modulus;
    if (r < 0) r += modulus;
    g[i] = static_cast<std::int64_t>(r);
  }
  Integer tr = target % modulus;
  if (tr < 0) tr += modulus;
  const std::int64_t want = static_cast<std::int64_t>(tr);
  std::vector<std::int64_t> ps;
  for (const auto& p : prim) ps.push_back(static_cast<std::int64_t>(p));
  const unsigned full = (1u << ps.size()) - 1;

  std::vector<std::vector<std::int64_t>> lin(n + 1, std::vector<std::int64_t>(n, 0));
  std::vector<std::int64_t> q(n + 1, 0);
  std::vector<unsigned> mask(n + 1, 0);
  std::vector<std::int64_t> cur(n, -1);
  std::size_t d = 0;
  while (true) {
    if (cur[d] + 1 < m) {
      const std::int64_t t = ++cur[d];
      q[d + 1] = (q[d] + lin[d][d] * t + g[d * n + d] * ((t * t) % m)) % m;
      unsigned mk = mask[d];
      for (std::size_t k = 0; k < ps.size(); ++k)
        if (t % ps[k] != 0) mk |= 1u << k;
      mask[d + 1] = mk;
      if (d + 1 == n) {
        ++scanned;
        if (q[n] == want && mk == full && !(ps.empty() && want == 0 && std::all_of(cur.begin(), cur.end(), [](auto x) { return x == 0; })))
          return true;
      } else {
        for (std::size_t j = d + 1; j < n; ++j) lin[d + 1][j] = (lin[d][j] + 2 * g[d * n + j] * t) % m;
        ++d;
        cur[d] = -1;
      }
    } else {
      if (d == 0) return false;
      --d;
    }
  }
}

}  // namespace

std::optional<CongruenceCertificate> congruence_obstruction(const GramLattice& lattice, const Integer& target,
                                                            std::vector<Integer> moduli, std::uint64_t residue_cap) {
  std::sort(moduli.begin(), moduli.end());
  moduli.erase(std::unique(moduli.begin(), moduli.end()), moduli.end());
  for (const auto& modulus : moduli) {
    if (modulus < 2) throw Error(ErrorCode::InvalidParameter, "moduli must be >= 2");
    const double count = std::pow(static_cast<double>(modulus), static_cast<double>(lattice.rank()));
    if (count > static_cast<double>(residue_cap) || modulus > 3'000'000'000)
      throw Error(ErrorCode::BudgetExceeded, "residue scan mod " + to_string(modulus) + " exceeds cap");
    CongruenceCertificate c{modulus, target, primitivity_primes(modulus, target), 0};
    if (!residue_scan(lattice, modulus, target, c.primitive_at, c.residues_scanned)) return c;
  }
  return std::nullopt;
}

bool replay(const GramLattice& lattice, const CongruenceCertificate& c) {
  if (c.primitive_at != primitivity_primes(c.modulus, c.target)) return false;
  std::uint64_t scanned = 0;
  return !residue_scan(lattice, c.modulus, c.target, c.primitive_at, scanned);
}

// ---------------------------------------------------------------------------
// Rational isotropy

std::string_view to_string(LocalTest t) {
  switch (t) {
    case LocalTest::RankOne: return "rank-one";
    case LocalTest::Definite: return "definite";
    case LocalTest::BinaryDiscriminant: return "binary-discriminant";
    case LocalTest::TernaryHilbert: return "ternary-hilbert";
    case LocalTest::QuaternaryHasse: return "quaternary-hasse";
  }
  return "unknown";
}

namespace {

GramLattice augmented(const GramLattice& lattice, const Integer& target) {
  if (target == 0) return lattice;
  return direct_sum(lattice, rank_one(-target));
}

std::vector<Integer> squarefree_diagonal(const GramLattice& lattice, Diagonalization* out = nullptr) {
  auto d = diagonalize(to_rational(lattice.gram()));
  std::vector<Integer> s;
  s.reserve(d.diagonal.size());
  for (const auto& x : d.diagonal) s.push_back(squarefree_class(x));
  if (out) *out = std::move(d);
  return s;
}

std::vector<Place> relevant_places(const std::vector<Integer>& diag) {
  Integer prod = 2;
  for (const auto& s : diag) prod *= s;
  std::vector<Place> places{Place::infinity()};
  for (const auto& p : prime_factors(prod)) places.push_back(Place::at(p));
  return places;
}

// Local invariant at `place`; returns (observed, required), anisotropic iff they differ.
std::pair<int, int> local_invariant(const std::vector<Integer>& s, LocalTest test, const Place& place) {
  switch (test) {
    case LocalTest::BinaryDiscriminant:
      return {is_local_square(Rational(-s[0] * s[1]), place) ? 1 : -1, 1};
    case LocalTest::TernaryHilbert:
      return {hilbert_symbol(Rational(-s[0] * s[2]), Rational(-s[1] * s[2]), place), 1};
    case LocalTest::QuaternaryHasse: {
      const Integer d = s[0] * s[1] * s[2] * s[3];
      if (!is_local_square(Rational(d), place)) return {1, 1};
      int eps = 1;
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) eps *= hilbert_symbol(Rational(s[i]), Rational(s[j]), place);
      return {eps, hilbert_symbol(Rational(-1), Rational(-1), place)};
    }
    case LocalTest::Definite: {
      const bool pos = std::all_of(s.begin(), s.end(), [](const Integer& x) { return x > 0; });
      const bool neg = std::all_of(s.begin(), s.end(), [](const Integer& x) { return x < 0; });
      return {(pos || neg) ? -1 : 1, 1};
    }
    case LocalTest::RankOne:
      return {-1, 1};
  }
  return {1, 1};
}

std::optional<AnisotropyCertificate> anisotropy(const GramLattice& form, const Integer& target) {
  const auto s = squarefree_diagonal(form);
  const std::size_t n = s.size();
  auto cert = [&](LocalTest t, const Place& p, std::pair<int, int> inv) {
    return AnisotropyCertificate{target, s, p, t, inv.first, inv.second};
  };
  if (n == 1) return cert(LocalTest::RankOne, Place::infinity(), {-1, 1});
  if (auto inv = local_invariant(s, LocalTest::Definite, Place::infinity()); inv.first != inv.second)
    return cert(LocalTest::Definite, Place::infinity(), inv);
  if (n >= 5) return std::nullopt;
  const LocalTest test = n == 2   ? LocalTest::BinaryDiscriminant
                         : n == 3 ? LocalTest::TernaryHilbert
                                  : LocalTest::QuaternaryHasse;
  for (const auto& place : relevant_places(s)) {
    const auto inv = local_invariant(s, test, place);
    if (inv.first != inv.second) return cert(test, place, inv);
  }
  return std::nullopt;
}

std::optional<LatticeVector> binary_isotropic_vector(const GramLattice& lattice) {
  Diagonalization d;
  squarefree_diagonal(lattice, &d);
  // d0 x^2 + d1 y^2 = 0 with x = r y, r^2 = -d1/d0.
  const Rational ratio = -d.diagonal[1] / d.diagonal[0];
  if (ratio < 0) return std::nullopt;
  const Integer num = mp::numerator(ratio), den = mp::denominator(ratio);
  if (!is_square(num) || !is_square(den)) return std::nullopt;
  const Rational r(isqrt(num), isqrt(den));
  RatVector v(2);
  for (std::size_t i = 0; i < 2; ++i) v[i] = d.basis(i, 0) * r + d.basis(i, 1);
  return sign_normalized(primitive(v));
}

}  // namespace

bool replay(const GramLattice& lattice, const AnisotropyCertificate& c) {
  const GramLattice form = augmented(lattice, c.target);
  const auto s = squarefree_diagonal(form);
  if (s != c.diagonal) return false;
  const auto inv = local_invariant(s, c.test, c.place);
  return inv.first == c.observed && inv.second == c.required && inv.first != inv.second;
}

bool replay(const GramLattice& lattice, const Certificate& c) {
  return std::visit([&](const auto& x) { return replay(lattice, x); }, c);
}

IsotropyVerdict rational_isotropy(const GramLattice& lattice, int witness_height) {
  IsotropyVerdict verdict;
  if (auto cert = anisotropy(lattice, 0)) {
    verdict.certificate = std::move(cert);
    return verdict;
  }
  verdict.isotropic = true;
  const std::size_t n = lattice.rank();
  for (int h = 1; h <= witness_height; ++h) {
    if (std::pow(2.0 * h + 1, static_cast<double>(n - 1)) > 2e6) break;
    std::vector<LatticeVector> prim;
    for (auto& v : enumerate_norm_vectors(lattice, 0, h))
      if (gcd_of(v) == 1) prim.push_back(std::move(v));
    if (!prim.empty()) {
      verdict.witness = simplest(prim);
      return verdict;
    }
  }
  if (n == 2) verdict.witness = binary_isotropic_vector(lattice);
  return verdict;
}

std::optional<AnisotropyCertificate> rational_nonrepresentation(const GramLattice& lattice, const Integer& target) {
  return anisotropy(augmented(lattice, target), target);
}

// ---------------------------------------------------------------------------
// Root search

std::string_view to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Witness: return "Witness";
    case VerdictKind::NoneUpToHeight: return "NoneUpToHeight";
    case VerdictKind::CertifiedNone: return "CertifiedNone";
  }
  return "Unknown";
}

SearchVerdict SearchVerdict::make_witness(const GramLattice& lattice, const Integer& target, LatticeVector v,
                                          int height) {
  if (lattice.norm(v) != target) throw Error(ErrorCode::InvalidParameter, "witness does not have the queried norm");
  SearchVerdict s;
  s.kind = VerdictKind::Witness;
  s.target = target;
  s.witness = std::move(v);
  s.height_bound = height;
  return s;
}

const LatticeVector& simplest(const std::vector<LatticeVector>& vs) {
  return *std::min_element(vs.begin(), vs.end(), simpler_vector);
}

SearchVerdict root_existence(const GramLattice& lattice, const Integer& root_norm, int height,
                             const RootSearchOptions& options) {
  SearchVerdict v;
  v.target = root_norm;
  v.height_bound = height;
  if (auto cert = rational_nonrepresentation(lattice, root_norm)) {
    v.kind = VerdictKind::CertifiedNone;
    v.certificate = std::move(*cert);
    return v;
  }
  if (auto cert = congruence_obstruction(lattice, root_norm, options.moduli, options.residue_cap)) {
    v.kind = VerdictKind::CertifiedNone;
    v.certificate = std::move(*cert);
    return v;
  }
  const auto found = enumerate_norm_vectors(lattice, root_norm, height, options.enumeration);
  if (!found.empty()) return SearchVerdict::make_witness(lattice, root_norm, simplest(found), height);
  v.kind = VerdictKind::NoneUpToHeight;
  return v;
}

std::vector<LatticeVector> primitive_isotropic_vectors(const GramLattice& lattice, int height,
                                                       const IsotropicFilter& filter,
                                                       const EnumerationOptions& options) {
  if (filter.restrict_to_cone && !filter.cone)
    throw Error(ErrorCode::NoPositiveConeSet, "cone restriction requested without a designated positive cone");
  std::vector<LatticeVector> out;
  for (auto& v : enumerate_norm_vectors(lattice, 0, height, options)) {
    if (gcd_of(v) != 1) continue;
    if (filter.restrict_to_cone && filter.cone->lattice().inner(v, filter.cone->v0()) < 0)
      for (auto& x : v) x = -x;
    out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hyperlat
