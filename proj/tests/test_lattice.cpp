#include "hyperlat/error.hpp"
#include "hyperlat/lattice.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hyperlat;

namespace {

IntMatrix mat(std::vector<std::vector<long>> rows) {
  std::vector<IntVector> r;
  for (auto& row : rows) r.emplace_back(row.begin(), row.end());
  return IntMatrix::from_rows(r);
}

// Unimodular matrix from a product of random elementary operations.
IntMatrix random_unimodular(std::size_t n, std::mt19937_64& rng) {
  IntMatrix t = IntMatrix::identity(n);
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int step = 0; step < 6; ++step) {
    const std::size_t i = idx(rng), j = idx(rng);
    if (i == j) continue;
    const int c = coef(rng);
    IntMatrix next = t;
    for (std::size_t k = 0; k < n; ++k) next(k, j) = t(k, j) + c * t(k, i);
    bool small = true;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) small = small && abs(next(a, b)) <= 5;
    if (small) t = next;
  }
  return t;
}

}  // namespace

TEST(Build, HyperbolicPlane) {
  const auto u = GramLattice::build(mat({{0, 1}, {1, 0}}));
  EXPECT_EQ(u.rank(), 2u);
  EXPECT_EQ(u.determinant(), -1);
}

TEST(Build, TranscendentalMatrixHasDeterminantThree) {
  EXPECT_EQ(GramLattice::build(mat({{2, 1}, {1, 2}})).determinant(), 3);
}

TEST(Build, Errors) {
  try {
    GramLattice::build(mat({{1, 2}, {2, 4}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Degenerate);
  }
  try {
    GramLattice::build(mat({{1, 2}, {3, 4}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSymmetric);
  }
  try {
    GramLattice::build(IntMatrix(2, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidParameter);
  }
}

TEST(Signature, Examples) {
  EXPECT_EQ(signature(standard_lattice(StandardName::U)), (Signature{1, 1}));
  EXPECT_EQ(signature(GramLattice::build(mat({{2, 1}, {1, 2}}))), (Signature{2, 0}));
  EXPECT_EQ(signature(diagonal_lattice({4, -8, -12})), (Signature{1, 2}));
}

TEST(DirectSum, Examples) {
  const auto l = direct_sum(standard_lattice(StandardName::U), rank_one(-2));
  EXPECT_EQ(l.gram(), mat({{0, 1, 0}, {1, 0, 0}, {0, 0, -2}}));
  const auto d4 = direct_sum(rank_one(32), standard_lattice(StandardName::D4));
  EXPECT_EQ(d4.rank(), 5u);
  EXPECT_EQ(d4.signature(), (Signature{1, 4}));
  const auto a2 = standard_lattice(StandardName::A2);
  const auto a = direct_sum(direct_sum(rank_one(54), a2), a2);
  EXPECT_EQ(a.rank(), 5u);
  EXPECT_EQ(a.signature(), (Signature{1, 4}));
}

TEST(StandardLattices, Shapes) {
  EXPECT_EQ(rank_one(4).gram(), mat({{4}}));
  const auto a2 = standard_lattice(StandardName::A2);
  EXPECT_EQ(a2.gram(), mat({{-2, 1}, {1, -2}}));
  EXPECT_EQ(a2.signature(), (Signature{0, 2}));
  const auto d4 = standard_lattice(StandardName::D4);
  EXPECT_EQ(d4.determinant(), 4);
  EXPECT_EQ(d4.signature(), (Signature{0, 4}));
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(d4.gram()(i, i), -2);
  const auto e8 = standard_lattice(StandardName::E8);
  EXPECT_EQ(e8.determinant(), 1);
  EXPECT_EQ(e8.signature(), (Signature{0, 8}));
  EXPECT_EQ(standard_lattice(StandardName::A2, RootLatticeSign::Positive).signature(), (Signature{2, 0}));
}

TEST(InnerProduct, Examples) {
  EXPECT_EQ(inner_product(standard_lattice(StandardName::U), {1, 0}, {0, 1}), 1);
  EXPECT_EQ(inner_product(diagonal_lattice({1, -2}), {1, 0}, {3, 2}), 3);
  const auto l = direct_sum(standard_lattice(StandardName::U), rank_one(-2));
  EXPECT_EQ(inner_product(l, {0, 0, 1}, {0, 0, 1}), -2);
  try {
    inner_product(l, {1, 0}, {0, 0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(Properties, SignatureAddsUnderDirectSum) {
  const std::vector<GramLattice> ls = {standard_lattice(StandardName::U), standard_lattice(StandardName::A2),
                                       standard_lattice(StandardName::D4), diagonal_lattice({4, -8, -12}),
                                       GramLattice::build(mat({{2, 1}, {1, 2}})), rank_one(-6)};
  for (const auto& a : ls)
    for (const auto& b : ls) EXPECT_EQ(signature(direct_sum(a, b)), signature(a) + signature(b));
}

TEST(Properties, SignatureInvariantUnderUnimodularChange) {
  std::mt19937_64 rng(7);
  const std::vector<GramLattice> ls = {direct_sum(standard_lattice(StandardName::U), rank_one(-2)),
                                       diagonal_lattice({4, -8, -12, -12}),
                                       direct_sum(rank_one(32), standard_lattice(StandardName::D4)),
                                       GramLattice::build(mat({{2, 1}, {1, 2}}))};
  for (const auto& l : ls)
    for (int trial = 0; trial < 25; ++trial) {
      const IntMatrix t = random_unimodular(l.rank(), rng);
      ASSERT_EQ(abs(determinant(t)), 1);
      const auto moved = GramLattice::build(t.transpose() * l.gram() * t);
      EXPECT_EQ(moved.signature(), l.signature());
      EXPECT_EQ(moved.determinant(), l.determinant());
    }
}

TEST(Properties, InnerProductSymmetricBilinear) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> c(-9, 9);
  const auto l = direct_sum(rank_one(54), direct_sum(standard_lattice(StandardName::A2),
                                                     standard_lattice(StandardName::A2)));
  auto rv = [&] {
    IntVector v(5);
    for (auto& x : v) x = c(rng);
    return v;
  };
  for (int i = 0; i < 200; ++i) {
    const IntVector u = rv(), v = rv(), w = rv();
    const Integer a = c(rng), b = c(rng);
    IntVector comb(5);
    for (std::size_t k = 0; k < 5; ++k) comb[k] = a * u[k] + b * v[k];
    EXPECT_EQ(l.inner(u, v), l.inner(v, u));
    EXPECT_EQ(l.inner(comb, w), a * l.inner(u, w) + b * l.inner(v, w));
  }
}
