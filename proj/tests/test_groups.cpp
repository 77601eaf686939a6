#include "hyperlat/error.hpp"
#include "hyperlat/groups.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <set>

using namespace hyperlat;

namespace {

GramLattice u_minus2() { return direct_sum(standard_lattice(StandardName::U), rank_one(-2)); }

IntMatrix mat(std::vector<std::vector<long>> rows) {
  std::vector<IntVector> r;
  for (auto& row : rows) r.emplace_back(row.begin(), row.end());
  return IntMatrix::from_rows(r);
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::MalformedInput;
}

struct Pell {
  ConeOrientation o = ConeOrientation::automatic(diagonal_lattice({1, -2}));
  Isometry g = make_isometry(o, mat({{3, 4}, {2, 3}}));
  FGGroup group = FGGroup::make({g});
  HyperboloidPoint h = HyperboloidPoint::make(o, LatticeVector{1, 0});
};

struct Transvection {
  ConeOrientation o = ConeOrientation::automatic(u_minus2());
  Isometry t = eichler_transvection(o, {1, 0, 0}, {0, 0, 1});
  FGGroup group = FGGroup::make({t});
};

}  // namespace

TEST(Words, EnumerationAndWords) {
  Pell p;
  const auto els = elements_up_to(p.group, 2);
  ASSERT_EQ(els.size(), 5u);
  EXPECT_EQ(els[0].matrix, IntMatrix::identity(2));
  EXPECT_EQ(word_of(els, 0), std::vector<int>{});
  EXPECT_EQ(word_string({1, -1, 2}), "g1 g1^-1 g2");
  for (std::size_t i = 0; i < els.size(); ++i) EXPECT_EQ(word_of(els, i).size(), els[i].length);
  WordOptions cap;
  cap.element_cap = 3;
  EXPECT_EQ(code_of([&] { elements_up_to(p.group, 5, cap); }), ErrorCode::BudgetExceeded);
}

TEST(Orbit, Examples) {
  Pell p;
  EXPECT_EQ(orbit(p.group, p.h, 0).size(), 1u);
  const auto pts = orbit(p.group, p.h, 2);
  std::set<LatticeVector> rays;
  for (const auto& x : pts) rays.insert(x.ray());
  EXPECT_EQ(rays, (std::set<LatticeVector>{{1, 0}, {3, 2}, {3, -2}, {17, 12}, {17, -12}}));
  for (int d = 0; d <= 6; ++d) EXPECT_EQ(orbit(p.group, p.h, d).size(), static_cast<std::size_t>(2 * d + 1));

  const auto o = ConeOrientation::automatic(u_minus2());
  const auto s = FGGroup::make({reflection(o, {0, 0, 1})});
  EXPECT_EQ(orbit(s, HyperboloidPoint::make(o, LatticeVector{2, 1, 1}), 3).size(), 2u);
}

TEST(Limits, PellHasTwoClusters) {
  Pell p;
  const auto ls = limit_points_sample(p.group, p.h, 20);
  ASSERT_EQ(ls.clusters.size(), 2u);
  // Ball images of (sqrt 2, +-1) are the two points +-1 of the 1-ball.
  std::set<int> signs;
  for (const auto& c : ls.clusters) signs.insert(c.direction[0] > 0 ? 1 : -1);
  EXPECT_EQ(signs, (std::set<int>{-1, 1}));
  const auto rays = fixed_boundary_points(p.g);
  for (const auto& c : ls.clusters) {
    bool matched = false;
    for (const auto& r : rays) matched = matched || std::abs(r.ball[0] - c.direction[0]) < 1e-6;
    EXPECT_TRUE(matched);
  }
}

TEST(Limits, FiniteGroupHasNone) {
  const auto o = ConeOrientation::automatic(u_minus2());
  const auto s = FGGroup::make({reflection(o, {0, 0, 1})});
  EXPECT_TRUE(limit_points_sample(s, HyperboloidPoint::make(o, LatticeVector{2, 1, 1}), 10).clusters.empty());
}

TEST(Limits, ParabolicHasOneCluster) {
  Transvection t;
  const auto x = HyperboloidPoint::make(t.o, LatticeVector{1, 1, 0});
  const auto ls = limit_points_sample(t.group, x, 50000);
  ASSERT_EQ(ls.clusters.size(), 1u);
  const auto e = to_ball(t.o, BoundaryRay::make(t.o, {1, 0, 0}));
  for (std::size_t i = 0; i < e.size(); ++i) EXPECT_NEAR(ls.clusters[0].direction[i], e[i], 1e-3);
}

TEST(Elementary, Types) {
  Pell p;
  Transvection t;
  EXPECT_EQ(elementary_type(p.group, 4), ElementaryType::LoxodromicType);
  EXPECT_EQ(elementary_type(t.group, 4), ElementaryType::ParabolicType);
  const auto s = FGGroup::make({reflection(t.o, {0, 0, 1})});
  EXPECT_EQ(elementary_type(s, 4), ElementaryType::EllipticType);
  // Two transvections with different centers generate a non-elementary group.
  const auto t2 = eichler_transvection(t.o, {0, 1, 0}, {0, 0, 1});
  EXPECT_EQ(elementary_type(FGGroup::make({t.t, t2}), 4), ElementaryType::NotDetectedElementary);
}

TEST(Dirichlet, Halfspace) {
  Pell p;
  EXPECT_EQ(dirichlet_halfspace(p.h, p.g).normal, (LatticeVector{1, -1}));
  EXPECT_EQ(code_of([&] { dirichlet_halfspace(p.h, identity_isometry(p.o)); }), ErrorCode::FixedBasepoint);
}

TEST(Dirichlet, PellSlab) {
  Pell p;
  auto d = dirichlet_domain(p.group, p.h, 3);
  std::set<LatticeVector> normals;
  for (const auto& hs : d.cone.halfspaces()) normals.insert(hs.normal);
  EXPECT_EQ(normals, (std::set<LatticeVector>{{1, 1}, {1, -1}}));
  const auto& v = extreme_rays(d.cone);
  for (auto t : d.cone.ray_tags()) EXPECT_NE(t, RayTag::RationalIsotropic);
  EXPECT_EQ(std::set<LatticeVector>(v.rays.begin(), v.rays.end()), (std::set<LatticeVector>{{2, 1}, {2, -1}}));
  const auto rep = polytope_hypothesis_check(d.cone, p.o);
  EXPECT_TRUE(rep.passes);
  EXPECT_EQ(rep.sides, 2u);
  EXPECT_TRUE(rep.cusp_candidates.empty());
}

TEST(Dirichlet, TrivialGroupGivesWholeCone) {
  Pell p;
  auto d = dirichlet_domain(FGGroup::make({identity_isometry(p.o)}), p.h, 3);
  EXPECT_TRUE(d.cone.whole_space());
}

TEST(Dirichlet, ReflectionBisectorIsTheMirror) {
  const auto o = ConeOrientation::automatic(u_minus2());
  const auto s = FGGroup::make({reflection(o, {0, 0, 1})});
  auto d = dirichlet_domain(s, HyperboloidPoint::make(o, LatticeVector{2, 1, 1}), 3);
  ASSERT_EQ(d.cone.halfspaces().size(), 1u);
  EXPECT_EQ(d.cone.halfspaces()[0].normal, (LatticeVector{0, 0, -1}));
  // A basepoint on the mirror is fixed by the generator.
  EXPECT_EQ(code_of([&] { dirichlet_domain(s, HyperboloidPoint::make(o, LatticeVector{1, 1, 0}), 3); }),
            ErrorCode::FixedBasepoint);
}

TEST(Dirichlet, NormalsAndRaysAreIntegral) {
  Transvection t;
  const auto t2 = eichler_transvection(t.o, {0, 1, 0}, {0, 0, 1});
  auto d = dirichlet_domain(FGGroup::make({t.t, t2}), HyperboloidPoint::make(t.o, LatticeVector{1, 1, 0}), 3);
  const auto rep = polytope_hypothesis_check(d.cone, t.o);
  EXPECT_TRUE(rep.zero_norm_rays_rational);
  EXPECT_TRUE(rep.positive_vertices_rational);
}

TEST(Tiling, PellPasses) {
  Pell p;
  auto d = dirichlet_domain(p.group, p.h, 3);
  const auto r = tiling_check(d.cone, p.group, 100, 8);
  EXPECT_EQ(r.samples, 100u);
  EXPECT_EQ(r.overlaps, 0u);
  EXPECT_EQ(r.unreachable, 0u);
  EXPECT_TRUE(r.passes());
}

TEST(Tiling, TrivialGroupWholeConeVacuouslyPasses) {
  Pell p;
  const auto id = FGGroup::make({identity_isometry(p.o)});
  PolyhedralCone whole(p.o.lattice(), {});
  EXPECT_TRUE(tiling_check(whole, id, 50, 3).passes());
}

TEST(Tiling, NegativeControls) {
  Pell p;
  // Half of the slab: translates cannot reach everything.
  PolyhedralCone shrunk(p.o.lattice(), {{{1, 1}}, {{1, -1}}, {{0, -1}}});
  EXPECT_GT(tiling_check(shrunk, p.group, 100, 8).unreachable, 0u);
  // Twice the slab: translates overlap.
  PolyhedralCone doubled(p.o.lattice(), {{{4, 3}}, {{4, -3}}});
  EXPECT_GT(tiling_check(doubled, p.group, 100, 8).overlaps, 0u);
}

TEST(ChamberWalk, Examples) {
  const auto o = ConeOrientation::automatic(u_minus2());
  // (2,2,1) lies on the wall of the root (0,1,1).
  EXPECT_EQ(code_of([&] { chamber_walk(o, {2, 2, 1}, -2, 3, 100); }), ErrorCode::OnWall);
  const auto w = chamber_walk(o, {3, 4, 1}, -2, 3, 100);
  EXPECT_EQ(w.image, (LatticeVector{3, 4, -1}));
  EXPECT_EQ(w.word, (std::vector<LatticeVector>{{0, 0, 1}}));

  const auto again = chamber_walk(o, w.image, -2, 3, 100);
  EXPECT_TRUE(again.word.empty());
  EXPECT_EQ(again.image, w.image);

  const auto od = ConeOrientation::automatic(diagonal_lattice({4, -8, -12}));
  const auto none = chamber_walk(od, {1, 0, 0}, -2, 5, 100);
  EXPECT_TRUE(none.word.empty());
  EXPECT_EQ(none.roots_considered, 0u);
}

TEST(ChamberWalk, Errors) {
  const auto o = ConeOrientation::automatic(u_minus2());
  EXPECT_EQ(code_of([&] { chamber_walk(o, {1, -1, 0}, -2, 3, 100); }), ErrorCode::NotInCone);
  EXPECT_EQ(code_of([&] { chamber_walk(o, {3, 4, 1}, -2, 3, 0); }), ErrorCode::BudgetExhausted);
}

TEST(FGGroup, Errors) {
  EXPECT_EQ(code_of([] { FGGroup::make({}); }), ErrorCode::InvalidParameter);
  Pell p;
  Transvection t;
  EXPECT_EQ(code_of([&] { FGGroup::make({p.g, t.t}); }), ErrorCode::DifferentAmbient);
}
