#include "hyperlat/isometry.hpp"

#include "hyperlat/error.hpp"
#include "hyperlat/forms.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <atomic>
#include <mutex>
#include <numeric>

namespace hyperlat {

namespace mp = boost::multiprecision;
using Float50 = mp::cpp_bin_float_50;

namespace {

Float50 to_float(const Rational& r) { return Float50(mp::numerator(r)) / Float50(mp::denominator(r)); }

IntMatrix matrix_power(IntMatrix base, std::uint64_t e) {
  IntMatrix r = IntMatrix::identity(base.rows());
  while (e) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

constexpr std::uint64_t kOrderCap = 1'000'000;

}  // namespace

std::string_view to_string(IsometryKind k) {
  switch (k) {
    case IsometryKind::Elliptic: return "Elliptic";
    case IsometryKind::Parabolic: return "Parabolic";
    case IsometryKind::Loxodromic: return "Loxodromic";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------

NumberField::NumberField(RatPoly minpoly, Rational lo, Rational hi)
    : minpoly_(monic(std::move(minpoly))), lo_(std::move(lo)), hi_(std::move(hi)) {}

NumberField::Element NumberField::reduce(const Element& a) const { return divmod(a, minpoly_).second; }

NumberField::Element NumberField::mul(const Element& a, const Element& b) const { return reduce(hyperlat::mul(a, b)); }

NumberField::Element NumberField::inverse(const Element& a_in) const {
  Element a = reduce(a_in);
  if (a.empty()) throw Error(ErrorCode::InvalidParameter, "inverse of zero in number field");
  // Extended Euclid: s*a + t*m = gcd = const.
  Element r0 = minpoly_, r1 = a, s0 = {}, s1 = {Rational(1)};
  while (hyperlat::degree(r1) > 0) {
    auto [q, r] = divmod(r0, r1);
    Element s = sub(s0, hyperlat::mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r1.empty()) throw Error(ErrorCode::InvalidParameter, "element is a zero divisor; minimal polynomial is reducible");
  const Rational c = r1[0];
  for (auto& x : s1) x /= c;
  return reduce(s1);
}

double NumberField::value(const Element& a) const {
  const Float50 x = to_float((lo_ + hi_) / 2);
  Float50 acc = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * x + to_float(*it);
  return static_cast<double>(acc);
}

int NumberField::sign(const Element& a) const {
  if (a.empty()) return 0;
  const double v = value(a);
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

// ---------------------------------------------------------------------------

struct Isometry::State {
  State(ConeOrientation o, IntMatrix matrix) : orientation(std::move(o)), m(std::move(matrix)) {}
  ConeOrientation orientation;
  IntMatrix m;
  std::once_flag charpoly_once;
  IntPoly charpoly;
  std::once_flag class_once;
  Classification classification;
  std::atomic<bool> classified{false};
};

const ConeOrientation& Isometry::orientation() const { return state_->orientation; }
const IntMatrix& Isometry::matrix() const { return state_->m; }

const IntPoly& Isometry::charpoly() const {
  std::call_once(state_->charpoly_once, [&] { state_->charpoly = characteristic_polynomial(state_->m); });
  return state_->charpoly;
}

bool Isometry::has_cached_classification() const { return state_->classified.load(std::memory_order_acquire); }

Isometry make_isometry(const ConeOrientation& o, IntMatrix m) {
  const auto& l = o.lattice();
  if (!m.square() || m.rows() != l.rank()) throw Error(ErrorCode::DimensionMismatch, "isometry size vs lattice rank");
  if (!(m.transpose() * l.gram() * m == l.gram()))
    throw Error(ErrorCode::NotOrthogonal, "matrix does not preserve the form");
  if (l.inner(m * o.v0(), o.v0()) <= 0)
    throw Error(ErrorCode::WrongComponent, "matrix swaps the two components of the positive cone");
  return Isometry(std::make_shared<Isometry::State>(o, std::move(m)));
}

Isometry make_isometry(const GramLattice& lattice, IntMatrix m, const ConeOrientation& o) {
  if (!(lattice == o.lattice())) throw Error(ErrorCode::DifferentAmbient, "cone orientation is over another lattice");
  return make_isometry(o, std::move(m));
}

Isometry identity_isometry(const ConeOrientation& o) { return make_isometry(o, IntMatrix::identity(o.lattice().rank())); }

Isometry compose(const Isometry& a, const Isometry& b) {
  if (!a.orientation().same_ambient(b.orientation()))
    throw Error(ErrorCode::DifferentAmbient, "isometries act on different cones");
  return make_isometry(a.orientation(), a.matrix() * b.matrix());
}

Isometry inverse(const Isometry& g) {
  // g^-1 = G^-1 g^T G.
  const auto& l = g.lattice();
  const RatMatrix gi = *hyperlat::inverse(to_rational(l.gram()));
  const RatMatrix r = gi * to_rational(g.matrix().transpose() * l.gram());
  IntMatrix m(r.rows(), r.cols());
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j) m(i, j) = mp::numerator(r(i, j));
  return make_isometry(g.orientation(), std::move(m));
}

Isometry power(const Isometry& g, long n) {
  const Isometry base = n < 0 ? inverse(g) : g;
  return make_isometry(g.orientation(), matrix_power(base.matrix(), static_cast<std::uint64_t>(n < 0 ? -n : n)));
}

// ---------------------------------------------------------------------------

namespace {

Classification compute_classification(const Isometry& g) {
  Classification c;
  const auto [rest, orders] = strip_cyclotomic(g.charpoly());
  c.cyclotomic_orders = orders;
  if (degree(rest) > 0) {
    const RatPoly p = to_rational(rest);
    const RatPoly sqf = divmod(p, gcd(p, derivative(p))).first;
    const auto chain = sturm_chain(sqf);
    if (count_roots_above(chain, 1) >= 1) {
      Rational lo = 1, hi = root_bound(sqf);
      // Isolate the largest root.
      while (count_roots(chain, lo, hi) > 1) {
        const Rational mid = (lo + hi) / 2;
        if (count_roots(chain, mid, hi) >= 1) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      std::tie(lo, hi) = refine_root(sqf, lo, hi, Rational(1, Integer(1) << 60));
      c.kind = IsometryKind::Loxodromic;
      c.lambda_minpoly = rest;
      c.lambda_lo = lo;
      c.lambda_hi = hi;
      c.lambda = static_cast<double>(to_float((lo + hi) / 2));
      return c;
    }
  }
  std::uint64_t lcm = 1;
  for (auto k : orders) {
    lcm = std::lcm(lcm, k);
    if (lcm > kOrderCap) throw Error(ErrorCode::BudgetExceeded, "candidate elliptic order exceeds 10^6");
  }
  const IntMatrix id = IntMatrix::identity(g.matrix().rows());
  if (degree(rest) <= 0 && matrix_power(g.matrix(), lcm) == id) {
    std::uint64_t order = lcm;
    for (const auto& p : prime_factors(Integer(lcm))) {
      const auto q = static_cast<std::uint64_t>(p);
      while (order % q == 0 && matrix_power(g.matrix(), order / q) == id) order /= q;
    }
    c.kind = IsometryKind::Elliptic;
    c.order = order;
    return c;
  }
  c.kind = IsometryKind::Parabolic;
  return c;
}

}  // namespace

const Classification& classify(const Isometry& g) {
  auto& s = *g.state_;
  std::call_once(s.class_once, [&] {
    s.classification = compute_classification(g);
    s.classified.store(true, std::memory_order_release);
  });
  return s.classification;
}

double entropy(const Isometry& g) {
  const auto& c = classify(g);
  if (c.kind != IsometryKind::Loxodromic) return 0.0;
  return static_cast<double>(mp::log(to_float((c.lambda_lo + c.lambda_hi) / 2)));
}

// ---------------------------------------------------------------------------

namespace {

std::vector<double> ball_direction(const ConeOrientation& o, const std::vector<double>& v) {
  const auto m = o.minkowski_numeric(v);
  std::vector<double> b(m.begin() + 1, m.end());
  for (auto& x : b) x /= m[0];
  return b;
}

FixedRay parabolic_ray(const Isometry& g) {
  const auto& l = g.lattice();
  const std::size_t n = l.rank();
  RatMatrix a = to_rational(g.matrix());
  for (std::size_t i = 0; i < n; ++i) a(i, i) -= 1;
  const auto basis = kernel(a);
  RatMatrix restricted(basis.size(), basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) restricted(i, j) = l.inner(basis[i], basis[j]);
  const auto radical = kernel(restricted);
  if (radical.size() != 1) throw Error(ErrorCode::InvalidParameter, "fixed space has no unique isotropic line");
  RatVector v(n);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t k = 0; k < n; ++k) v[k] += radical[0][i] * basis[i][k];
  LatticeVector e = primitive(v);
  if (l.inner(e, g.orientation().v0()) < 0)
    for (auto& x : e) x = -x;

  FixedRay r;
  r.rational = true;
  r.vector.rational = true;
  const Rational scale = Rational(1) / Rational(l.inner(e, g.orientation().v0()));
  for (const auto& x : e) {
    r.vector.coords.push_back(x == 0 ? RatPoly{} : RatPoly{Rational(x)});
    r.vector.numeric.push_back(to_double(Rational(x) * scale));
  }
  r.lattice_ray = e;
  r.ball = to_ball(g.orientation(), BoundaryRay::make(g.orientation(), e));
  return r;
}

// Kernel vector of (M - mu I) over the field, where mu is a simple eigenvalue.
std::vector<NumberField::Element> eigenvector(const NumberField& k, const IntMatrix& m,
                                              const NumberField::Element& mu) {
  const std::size_t n = m.rows();
  std::vector<std::vector<NumberField::Element>> a(n, std::vector<NumberField::Element>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      RatPoly e = m(i, j) == 0 ? RatPoly{} : RatPoly{Rational(m(i, j))};
      if (i == j) e = sub(e, mu);
      a[i][j] = k.reduce(e);
    }
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t p = row;
    while (p < n && a[p][col].empty()) ++p;
    if (p == n) continue;
    std::swap(a[p], a[row]);
    const auto inv = k.inverse(a[row][col]);
    for (auto& x : a[row]) x = k.mul(x, inv);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == row || a[r][col].empty()) continue;
      const auto f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) a[r][j] = sub(a[r][j], k.mul(f, a[row][j]));
    }
    pivot_col.push_back(col);
    ++row;
  }
  std::size_t free_col = n;
  for (std::size_t col = 0, pi = 0; col < n; ++col) {
    if (pi < pivot_col.size() && pivot_col[pi] == col) {
      ++pi;
      continue;
    }
    free_col = col;
    break;
  }
  if (free_col == n) throw Error(ErrorCode::InvalidParameter, "eigenvalue has trivial eigenspace");
  std::vector<NumberField::Element> v(n);
  v[free_col] = {Rational(1)};
  for (std::size_t r = 0; r < pivot_col.size(); ++r) {
    auto x = a[r][free_col];
    for (auto& c : x) c = -c;
    v[pivot_col[r]] = x;
  }
  return v;
}

FixedRay algebraic_ray(const Isometry& g, const NumberField& k, const NumberField::Element& mu) {
  const auto& l = g.lattice();
  const auto& o = g.orientation();
  const std::size_t n = l.rank();
  auto v = eigenvector(k, g.matrix(), mu);
  // Pairing with v0, exactly in the field.
  const IntVector gv0 = l.apply_gram(o.v0());
  NumberField::Element pair;
  for (std::size_t i = 0; i < n; ++i)
    if (gv0[i] != 0 && !v[i].empty()) {
      RatPoly t = v[i];
      for (auto& c : t) c *= Rational(gv0[i]);
      pair = add(pair, t);
    }
  if (k.sign(pair) < 0) {
    for (auto& x : v)
      for (auto& c : x) c = -c;
    for (auto& c : pair) c = -c;
  }
  FixedRay r;
  r.vector.coords = v;
  r.vector.rational = std::all_of(v.begin(), v.end(), NumberField::is_rational);
  r.rational = r.vector.rational;
  const double pv = k.value(pair);
  for (const auto& x : v) r.vector.numeric.push_back(k.value(x) / pv);
  r.ball = ball_direction(o, r.vector.numeric);
  return r;
}

}  // namespace

std::vector<FixedRay> fixed_boundary_points(const Isometry& g) {
  const auto& c = classify(g);
  switch (c.kind) {
    case IsometryKind::Elliptic:
      throw Error(ErrorCode::EllipticHasNoBoundaryFixedPoint, "elliptic isometries fix an interior point");
    case IsometryKind::Parabolic:
      return {parabolic_ray(g)};
    case IsometryKind::Loxodromic: {
      const NumberField k(to_rational(c.lambda_minpoly), c.lambda_lo, c.lambda_hi);
      const auto lambda = k.generator();
      return {algebraic_ray(g, k, lambda), algebraic_ray(g, k, k.inverse(lambda))};
    }
  }
  return {};
}

Isometry reflection(const ConeOrientation& o, const LatticeVector& delta) {
  const auto& l = o.lattice();
  if (delta.size() != l.rank()) throw Error(ErrorCode::DimensionMismatch, "root length vs rank");
  if (l.norm(delta) != -2) throw Error(ErrorCode::WrongNorm, "reflection vector must have norm -2");
  const IntVector gd = l.apply_gram(delta);
  IntMatrix m = IntMatrix::identity(l.rank());
  for (std::size_t i = 0; i < l.rank(); ++i)
    for (std::size_t j = 0; j < l.rank(); ++j) m(i, j) += delta[i] * gd[j];
  return make_isometry(o, std::move(m));
}

Isometry eichler_transvection(const ConeOrientation& o, const LatticeVector& e, const LatticeVector& a) {
  const auto& l = o.lattice();
  const std::size_t n = l.rank();
  if (e.size() != n || a.size() != n) throw Error(ErrorCode::DimensionMismatch, "vector length vs rank");
  if (is_zero(e) || l.norm(e) != 0) throw Error(ErrorCode::NotIsotropic, "transvection center must be isotropic");
  if (gcd_of(e) != 1) throw Error(ErrorCode::NotPrimitive, "transvection center must be primitive");
  if (l.inner(e, a) != 0) throw Error(ErrorCode::InvalidParameter, "translation vector must be orthogonal to e");
  const Integer aa = l.norm(a);
  if (aa % 2 != 0) throw Error(ErrorCode::NonIntegralResult, "(a,a) is odd; transvection is not integral");
  const IntVector ge = l.apply_gram(e);
  const IntVector ga = l.apply_gram(a);
  const Integer half = aa / 2;
  IntMatrix m = IntMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) += ge[j] * a[i] - ga[j] * e[i] - half * ge[j] * e[i];
  return make_isometry(o, std::move(m));
}

}  // namespace hyperlat
