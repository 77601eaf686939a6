#include "hyperlat/error.hpp"
#include "hyperlat/forms.hpp"
#include "hyperlat/hyperbolic.hpp"
#include "hyperlat/isometry.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

using namespace hyperlat;

namespace {

GramLattice u_minus2() { return direct_sum(standard_lattice(StandardName::U), rank_one(-2)); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::MalformedInput;  // "no error" sentinel for these tests
}

double ball_distance(const std::vector<double>& p, const std::vector<double>& q) {
  double pp = 0, qq = 0, d = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    pp += p[i] * p[i];
    qq += q[i] * q[i];
    d += (p[i] - q[i]) * (p[i] - q[i]);
  }
  return std::acosh(1 + 2 * d / ((1 - pp) * (1 - qq)));
}

std::vector<HyperboloidPoint> sample_points(const ConeOrientation& o, int count, std::uint64_t seed, long box) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> d(-box, box);
  std::vector<HyperboloidPoint> pts;
  while (static_cast<int>(pts.size()) < count) {
    LatticeVector v(o.lattice().rank());
    for (auto& x : v) x = d(rng);
    if (o.contains(v)) pts.push_back(HyperboloidPoint::make(o, v));
  }
  return pts;
}

}  // namespace

TEST(Cone, Containment) {
  const auto u = standard_lattice(StandardName::U);
  const auto o = ConeOrientation::make(u, {1, 1});
  EXPECT_TRUE(contains_in_cone(o, {1, 1}));
  EXPECT_FALSE(contains_in_cone(o, {-1, -1}));
  EXPECT_TRUE(contains_in_cone(o, {2, 1}));
  EXPECT_TRUE(o.in_closure({1, 0}));
  EXPECT_FALSE(o.contains(LatticeVector{1, 0}));
}

TEST(Cone, OrientationErrors) {
  EXPECT_EQ(code_of([] { ConeOrientation::make(standard_lattice(StandardName::U), {1, -1}); }),
            ErrorCode::InvalidParameter);
  EXPECT_EQ(code_of([] { ConeOrientation::automatic(standard_lattice(StandardName::A2)); }), ErrorCode::WrongSignature);
  EXPECT_EQ(ConeOrientation::automatic(u_minus2()).v0(), (LatticeVector{1, 1, 0}));
}

TEST(Points, NotInCone) {
  const auto o = ConeOrientation::automatic(diagonal_lattice({1, -2}));
  EXPECT_EQ(code_of([&] { HyperboloidPoint::make(o, LatticeVector{-1, 0}); }), ErrorCode::NotInCone);
  EXPECT_EQ(code_of([&] { HyperboloidPoint::make(o, LatticeVector{1, 1}); }), ErrorCode::NotInCone);
}

TEST(Distance, Examples) {
  const auto o = ConeOrientation::automatic(diagonal_lattice({1, -2}));
  const auto x = HyperboloidPoint::make(o, LatticeVector{1, 0});
  const auto y = HyperboloidPoint::make(o, LatticeVector{3, 2});
  EXPECT_EQ(distance(x, x), 0.0);
  EXPECT_NEAR(distance(x, y), std::acosh(3.0), 1e-12);

  const auto ou = ConeOrientation::make(standard_lattice(StandardName::U), {1, 1});
  const auto a = HyperboloidPoint::make(ou, LatticeVector{1, 1});
  const auto b = HyperboloidPoint::make(ou, LatticeVector{2, 1});
  EXPECT_NEAR(distance(a, b), std::acosh(3 / (2 * std::sqrt(2.0))), 1e-12);
}

TEST(Distance, SymmetryAndTriangleInequality) {
  const auto o = ConeOrientation::automatic(u_minus2());
  const auto pts = sample_points(o, 30, 1, 6);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j) {
      EXPECT_NEAR(distance(pts[i], pts[j]), distance(pts[j], pts[i]), 1e-10);
      for (std::size_t k = 0; k < pts.size(); k += 7)
        EXPECT_LE(distance(pts[i], pts[j]), distance(pts[i], pts[k]) + distance(pts[k], pts[j]) + 1e-10);
    }
}

TEST(Models, BallOriginAndBoundary) {
  const auto o = ConeOrientation::automatic(u_minus2());
  for (double c : to_ball(HyperboloidPoint::make(o, o.v0()))) EXPECT_NEAR(c, 0.0, 1e-15);
  const auto e = to_ball(o, BoundaryRay::make(o, {1, 0, 0}));
  double n = 0;
  for (double c : e) n += c * c;
  EXPECT_NEAR(std::sqrt(n), 1.0, 1e-10);
}

TEST(Models, BallDistanceMatchesHyperboloid) {
  const auto a2 = standard_lattice(StandardName::A2);
  for (const auto& l : {u_minus2(), direct_sum(standard_lattice(StandardName::U), a2)}) {
    const auto o = ConeOrientation::automatic(l);
    const auto pts = sample_points(o, 25, 2, 4);
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        const double d = distance(pts[i], pts[j]);
        EXPECT_NEAR(ball_distance(to_ball(pts[i]), to_ball(pts[j])), d, 1e-9 * std::max(1.0, d));
      }
  }
}

TEST(Models, RoundTrips) {
  const auto o = ConeOrientation::automatic(u_minus2());
  for (const auto& p : sample_points(o, 20, 3, 5)) {
    const auto back = from_ball(o, to_ball(p));
    for (std::size_t i = 0; i < back.size(); ++i) EXPECT_NEAR(back[i], p.numeric()[i], 1e-9);
    const auto& m = p.minkowski();
    double form = m[0] * m[0];
    for (std::size_t i = 1; i < m.size(); ++i) form -= m[i] * m[i];
    EXPECT_NEAR(form, 1.0, 1e-12);
    const auto up = to_upper_half(p);
    EXPECT_GT(up.back(), 0.0);
  }
}

TEST(Horoball, Containment) {
  const auto o = ConeOrientation::make(standard_lattice(StandardName::U), {1, 1});
  const auto b = Horoball::make(o, {1, 0});
  EXPECT_TRUE(horoball_contains(b, HyperboloidPoint::make(o, LatticeVector{4, 1})));
  EXPECT_FALSE(horoball_contains(b, HyperboloidPoint::make(o, LatticeVector{1, 1})));
  // Ray (2,1): pairing 1, norm 4, so (x,e) = 1/2 sits on the boundary.
  EXPECT_FALSE(horoball_contains(b, HyperboloidPoint::make(o, LatticeVector{2, 1})));
}

TEST(Horoball, Disjointness) {
  const auto ou = ConeOrientation::make(standard_lattice(StandardName::U), {1, 1});
  const auto p = horoballs_disjoint(ou, {1, 0}, {0, 1});
  EXPECT_TRUE(p.disjoint);
  EXPECT_EQ(p.pairing, 1);
  const auto o = ConeOrientation::automatic(u_minus2());
  EXPECT_EQ(code_of([&] { horoballs_disjoint(o, {1, 0, 0}, {1, 2, 1}); }), ErrorCode::NotIsotropic);
  const auto q = horoballs_disjoint(o, {1, 0, 0}, {0, 1, 0});
  EXPECT_TRUE(q.disjoint);
  EXPECT_EQ(q.pairing, 1);
  EXPECT_EQ(code_of([&] { horoballs_disjoint(o, {1, 0, 0}, {1, 0, 0}); }), ErrorCode::SameRay);
  EXPECT_EQ(code_of([&] { Horoball::make(o, {2, 0, 0}); }), ErrorCode::NotPrimitive);
}

TEST(Horoball, LemmaOnSamples) {
  const auto o = ConeOrientation::automatic(u_minus2());
  auto cusps = primitive_isotropic_vectors(o.lattice(), 4, {true, o});
  ASSERT_GE(cusps.size(), 4u);
  const auto pts = sample_points(o, 20, 4, 5);
  for (std::size_t i = 0; i < cusps.size(); ++i)
    for (std::size_t j = i + 1; j < cusps.size(); ++j) {
      const auto& e = cusps[i];
      const auto& f = cusps[j];
      const Integer ef = o.lattice().inner(e, f);
      EXPECT_GE(ef, 1);
      const auto be = Horoball::make(o, e), bf = Horoball::make(o, f);
      for (const auto& x : pts) {
        const Integer xe = o.lattice().inner(x.ray(), e), xf = o.lattice().inner(x.ray(), f);
        EXPECT_LE(ef * x.ray_norm(), 2 * xe * xf);
        EXPECT_FALSE(horoball_contains(be, x) && horoball_contains(bf, x));
      }
    }
}

TEST(Horoball, Equivariance) {
  const auto o = ConeOrientation::automatic(u_minus2());
  const auto g = eichler_transvection(o, {1, 0, 0}, {0, 0, 1});
  const auto s = reflection(o, {0, 0, 1});
  const auto pts = sample_points(o, 30, 5, 4);
  for (const auto& h : {g, s, inverse(g)})
    for (const LatticeVector& e : {LatticeVector{1, 0, 0}, LatticeVector{0, 1, 0}, LatticeVector{1, 1, 1}}) {
      const auto be = Horoball::make(o, e), bge = Horoball::make(o, h.apply(e));
      for (const auto& x : pts)
        EXPECT_EQ(horoball_contains(be, x), horoball_contains(bge, HyperboloidPoint::make(o, h.apply(x.ray()))));
    }
}
