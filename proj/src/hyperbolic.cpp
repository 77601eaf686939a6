#include "hyperlat/hyperbolic.hpp"

#include "hyperlat/error.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>

namespace hyperlat {

namespace mp = boost::multiprecision;
using Float50 = mp::cpp_bin_float_50;

namespace {

Float50 to_float(const Rational& r) {
  return Float50(mp::numerator(r)) / Float50(mp::denominator(r));
}

}  // namespace

struct ConeOrientation::State {
  GramLattice lattice;
  LatticeVector v0;
  std::vector<RatVector> frame;
  std::vector<Rational> frame_norms;
  std::vector<Float50> frame_scale;  // 1 / sqrt|N_i|
  // Row i maps lattice coordinates to Minkowski coordinate i: +-(G f_i) / sqrt|N_i|.
  std::vector<std::vector<Float50>> rows;
};

const GramLattice& ConeOrientation::lattice() const { return state_->lattice; }
const LatticeVector& ConeOrientation::v0() const { return state_->v0; }
const std::vector<RatVector>& ConeOrientation::frame() const { return state_->frame; }
const std::vector<Rational>& ConeOrientation::frame_norms() const { return state_->frame_norms; }

ConeOrientation ConeOrientation::make(const GramLattice& lattice, const LatticeVector& v0) {
  const auto sig = lattice.signature();
  if (sig.positive != 1)
    throw Error(ErrorCode::WrongSignature, "need signature (1,n), got (" + std::to_string(sig.positive) + "," +
                                               std::to_string(sig.negative) + ")");
  if (lattice.norm(v0) <= 0) throw Error(ErrorCode::InvalidParameter, "cone anchor must have positive norm");

  auto s = std::make_shared<State>(State{lattice, v0, {}, {}, {}, {}});
  const std::size_t n = lattice.rank();
  s->frame.push_back(to_rational(v0));
  s->frame_norms.push_back(Rational(lattice.norm(v0)));
  for (std::size_t i = 0; i < n && s->frame.size() < n; ++i) {
    RatVector f(n);
    f[i] = 1;
    for (std::size_t j = 0; j < s->frame.size(); ++j) {
      const Rational c = lattice.inner(f, s->frame[j]) / s->frame_norms[j];
      if (c == 0) continue;
      for (std::size_t k = 0; k < n; ++k) f[k] -= c * s->frame[j][k];
    }
    if (is_zero(f)) continue;
    const Rational nf = lattice.inner(f, f);
    s->frame.push_back(std::move(f));
    s->frame_norms.push_back(nf);
  }
  for (const auto& nv : s->frame_norms) s->frame_scale.push_back(1 / mp::sqrt(mp::abs(to_float(nv))));
  for (std::size_t i = 0; i < s->frame.size(); ++i) {
    std::vector<Float50> row(n);
    for (std::size_t k = 0; k < n; ++k) {
      Rational gf = 0;
      for (std::size_t l = 0; l < n; ++l) gf += Rational(lattice.gram()(k, l)) * s->frame[i][l];
      row[k] = to_float(gf) * s->frame_scale[i];
      if (i > 0) row[k] = -row[k];
    }
    s->rows.push_back(std::move(row));
  }
  return ConeOrientation(std::move(s));
}

ConeOrientation ConeOrientation::automatic(const GramLattice& lattice) {
  const std::size_t n = lattice.rank();
  std::optional<LatticeVector> best;
  for (int h = 1; h <= 6 && !best; ++h) {
    double count = std::pow(2.0 * h + 1, static_cast<double>(n));
    if (count > 2e6) break;
    LatticeVector v(n, Integer(-h));
    while (true) {
      if (lattice.norm(v) > 0) {
        LatticeVector c = sign_normalized(v);
        if (!best || simpler_vector(c, *best)) best = c;
      }
      std::size_t k = 0;
      while (k < n && v[k] == h) v[k++] = -h;
      if (k == n) break;
      ++v[k];
    }
  }
  if (!best) {
    const auto d = diagonalize(to_rational(lattice.gram()));
    for (std::size_t i = 0; i < n; ++i)
      if (d.diagonal[i] > 0) {
        best = sign_normalized(primitive(d.basis.column(i)));
        break;
      }
  }
  if (!best) throw Error(ErrorCode::WrongSignature, "lattice has no positive vectors");
  return make(lattice, *best);
}

bool ConeOrientation::contains(const RatVector& v) const {
  return lattice().inner(v, v) > 0 && lattice().inner(v, to_rational(v0())) > 0;
}

bool ConeOrientation::contains(const LatticeVector& v) const {
  return lattice().norm(v) > 0 && lattice().inner(v, v0()) > 0;
}

bool ConeOrientation::in_closure(const LatticeVector& v) const {
  if (is_zero(v)) return false;
  return lattice().norm(v) >= 0 && lattice().inner(v, v0()) > 0;
}

bool ConeOrientation::same_ambient(const ConeOrientation& other) const {
  if (state_ == other.state_) return true;
  return lattice() == other.lattice() && v0() == other.v0();
}

std::vector<double> ConeOrientation::minkowski(const RatVector& v, bool normalize) const {
  const Float50 scale = normalize ? 1 / mp::sqrt(to_float(lattice().inner(v, v))) : Float50(1);
  std::vector<Float50> fv;
  fv.reserve(v.size());
  for (const auto& x : v) fv.push_back(to_float(x));
  std::vector<double> c;
  c.reserve(state_->rows.size());
  for (const auto& row : state_->rows) {
    Float50 acc = 0;
    for (std::size_t k = 0; k < fv.size(); ++k)
      if (v[k] != 0) acc += fv[k] * row[k];
    c.push_back(static_cast<double>(acc * scale));
  }
  return c;
}

std::vector<double> ConeOrientation::minkowski_numeric(std::span<const double> v) const {
  std::vector<double> c;
  c.reserve(state_->rows.size());
  for (const auto& row : state_->rows) {
    Float50 acc = 0;
    for (std::size_t k = 0; k < v.size(); ++k)
      if (v[k] != 0) acc += Float50(v[k]) * row[k];
    c.push_back(static_cast<double>(acc));
  }
  return c;
}

std::vector<double> ConeOrientation::from_minkowski(std::span<const double> coords) const {
  // v = sum_i c_i u_i with u_i = f_i / sqrt|N_i|.
  const std::size_t n = lattice().rank();
  std::vector<Float50> acc(n, Float50(0));
  for (std::size_t i = 0; i < frame().size(); ++i) {
    const Float50 w = Float50(coords[i]) * state_->frame_scale[i];
    for (std::size_t k = 0; k < n; ++k)
      if (frame()[i][k] != 0) acc[k] += w * to_float(frame()[i][k]);
  }
  std::vector<double> out;
  out.reserve(n);
  for (const auto& a : acc) out.push_back(static_cast<double>(a));
  return out;
}

bool contains_in_cone(const ConeOrientation& o, const LatticeVector& v) { return o.contains(v); }

HyperboloidPoint HyperboloidPoint::make(const ConeOrientation& o, const LatticeVector& ray) {
  if (ray.size() != o.lattice().rank()) throw Error(ErrorCode::DimensionMismatch, "ray length vs rank");
  if (!o.contains(ray)) throw Error(ErrorCode::NotInCone, "ray is not inside the positive cone");
  HyperboloidPoint p(o);
  p.ray_ = primitive(ray);
  p.norm_ = o.lattice().norm(p.ray_);
  const Float50 inv = 1 / mp::sqrt(Float50(p.norm_));
  p.numeric_.reserve(ray.size());
  for (const auto& x : p.ray_) p.numeric_.push_back(static_cast<double>(Float50(x) * inv));
  p.minkowski_ = o.minkowski(to_rational(p.ray_), true);
  return p;
}

HyperboloidPoint HyperboloidPoint::make(const ConeOrientation& o, const RatVector& ray) {
  return make(o, primitive(ray));
}

BoundaryRay BoundaryRay::make(const ConeOrientation& o, const LatticeVector& v) {
  if (is_zero(v) || o.lattice().norm(v) != 0) throw Error(ErrorCode::NotIsotropic, "boundary ray must have norm 0");
  if (!o.in_closure(v)) throw Error(ErrorCode::NotInCone, "isotropic ray lies on the opposite nappe");
  return BoundaryRay{primitive(v), true};
}

double distance(const HyperboloidPoint& x, const HyperboloidPoint& y) {
  if (!x.orientation().same_ambient(y.orientation()))
    throw Error(ErrorCode::DifferentAmbient, "points belong to different lattices or cones");
  const auto& l = x.orientation().lattice();
  const Integer p = l.inner(x.ray(), y.ray());
  const Rational q = Rational(p * p) / Rational(x.ray_norm() * y.ray_norm());  // cosh^2 d
  if (q <= 1) return 0.0;
  const Float50 c = mp::sqrt(to_float(q));
  const Float50 s = mp::sqrt(to_float(q - 1));  // sinh d, exact argument
  return static_cast<double>(mp::log(c + s));
}

std::vector<double> minkowski_to_ball(std::span<const double> m) {
  std::vector<double> b(m.begin() + 1, m.end());
  const double denom = 1.0 + m[0];
  for (auto& x : b) x /= denom;
  return b;
}

std::vector<double> ball_to_minkowski(std::span<const double> b) {
  double r2 = 0;
  for (double x : b) r2 += x * x;
  const double s = 1.0 - r2;
  std::vector<double> m;
  m.reserve(b.size() + 1);
  m.push_back((1.0 + r2) / s);
  for (double x : b) m.push_back(2.0 * x / s);
  return m;
}

std::vector<double> minkowski_to_upper_half(std::span<const double> m) {
  const std::size_t n = m.size() - 1;
  const double denom = m[0] - m[n];
  std::vector<double> u;
  u.reserve(n);
  for (std::size_t i = 1; i < n; ++i) u.push_back(m[i] / denom);
  u.push_back(1.0 / denom);
  return u;
}

std::vector<double> to_ball(const HyperboloidPoint& x) { return minkowski_to_ball(x.minkowski()); }

std::vector<double> to_ball(const ConeOrientation& o, const BoundaryRay& c) {
  auto m = o.minkowski(to_rational(c.ray));
  std::vector<double> b(m.begin() + 1, m.end());
  for (auto& v : b) v /= m[0];
  return b;
}

std::vector<double> from_ball(const ConeOrientation& o, std::span<const double> ball) {
  const auto m = ball_to_minkowski(ball);
  return o.from_minkowski(m);
}

std::vector<double> to_upper_half(const HyperboloidPoint& x) { return minkowski_to_upper_half(x.minkowski()); }

Horoball Horoball::make(const ConeOrientation& o, const LatticeVector& e, Rational bound) {
  if (e.size() != o.lattice().rank()) throw Error(ErrorCode::DimensionMismatch, "center length vs rank");
  if (is_zero(e) || o.lattice().norm(e) != 0) throw Error(ErrorCode::NotIsotropic, "horoball center must be isotropic");
  if (gcd_of(e) != 1) throw Error(ErrorCode::NotPrimitive, "horoball center must be primitive");
  if (bound <= 0) throw Error(ErrorCode::InvalidParameter, "horoball bound must be positive");
  Horoball b(o);
  b.center_ = BoundaryRay::make(o, e);
  b.bound_ = std::move(bound);
  return b;
}

bool horoball_contains(const Horoball& b, const HyperboloidPoint& x) {
  if (!b.orientation().same_ambient(x.orientation()))
    throw Error(ErrorCode::DifferentAmbient, "horoball and point belong to different cones");
  // (ray,e) > 0 for ray in C and e in its closure, so squaring keeps order.
  const Integer p = b.orientation().lattice().inner(x.ray(), b.center().ray);
  return Rational(p * p) < b.bound() * b.bound() * Rational(x.ray_norm());
}

DisjointnessProof horoballs_disjoint(const Horoball& a, const Horoball& b) {
  if (!a.orientation().same_ambient(b.orientation()))
    throw Error(ErrorCode::DifferentAmbient, "horoballs belong to different cones");
  if (a.center().ray == b.center().ray) throw Error(ErrorCode::SameRay, "horoballs share their center");
  DisjointnessProof proof;
  proof.pairing = a.orientation().lattice().inner(a.center().ray, b.center().ray);
  proof.disjoint = proof.pairing >= 1;
  proof.inequality = "1 <= (e,e') = " + to_string(proof.pairing) + " <= 2(x,e)(x,e') for every x in H^n";
  if (!proof.disjoint) proof.inequality = "(e,e') = " + to_string(proof.pairing) + " < 1";
  return proof;
}

DisjointnessProof horoballs_disjoint(const ConeOrientation& o, const LatticeVector& e, const LatticeVector& f) {
  return horoballs_disjoint(Horoball::make(o, e), Horoball::make(o, f));
}

}  // namespace hyperlat
