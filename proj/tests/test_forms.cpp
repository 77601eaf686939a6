#include "hyperlat/error.hpp"
#include "hyperlat/forms.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace hyperlat;

namespace {

GramLattice u_minus2() { return direct_sum(standard_lattice(StandardName::U), rank_one(-2)); }
GramLattice d4_family(unsigned k) { return direct_sum(rank_one(pow_int(2, k)), standard_lattice(StandardName::D4)); }
GramLattice a2_family() {
  const auto a2 = standard_lattice(StandardName::A2);
  return direct_sum(direct_sum(rank_one(54), a2), a2);
}

bool contains(const std::vector<LatticeVector>& vs, const LatticeVector& v) {
  return std::find(vs.begin(), vs.end(), v) != vs.end();
}

std::vector<long> primes_of(long n) {
  std::vector<long> ps;
  n = std::labs(n);
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) ps.push_back(n);
  return ps;
}

}  // namespace

TEST(Enumerate, Examples) {
  EXPECT_TRUE(contains(enumerate_norm_vectors(u_minus2(), -2, 1), {0, 0, 1}));
  EXPECT_TRUE(enumerate_norm_vectors(diagonal_lattice({4, -8, -12}), -2, 10).empty());
  const auto roots = enumerate_norm_vectors(d4_family(5), -2, 1);
  EXPECT_TRUE(contains(roots, {0, 1, 0, 0, 0}));
}

TEST(Enumerate, MatchesNaiveScan) {
  const auto l = diagonal_lattice({2, -3, -5});
  for (long m : {-3, -1, 0, 2, 7}) {
    std::vector<LatticeVector> naive;
    for (long x = -4; x <= 4; ++x)
      for (long y = -4; y <= 4; ++y)
        for (long z = -4; z <= 4; ++z) {
          if (x == 0 && y == 0 && z == 0) continue;
          if (2 * x * x - 3 * y * y - 5 * z * z != m) continue;
          LatticeVector v{x, y, z};
          if (sign_normalized(v) == v) naive.push_back(v);
        }
    std::sort(naive.begin(), naive.end());
    EXPECT_EQ(enumerate_norm_vectors(l, m, 4), naive) << "norm " << m;
  }
}

TEST(Enumerate, CapThrowsBudgetExceeded) {
  EnumerationOptions tight;
  tight.candidate_cap = 10;
  try {
    enumerate_norm_vectors(u_minus2(), -2, 5, tight);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
  }
}

TEST(Congruence, Examples) {
  for (long k : {1, 4, 7}) {
    const auto c = congruence_obstruction(diagonal_lattice({4, -8, Integer(-12 * k)}), -2, {4});
    ASSERT_TRUE(c.has_value());
    EXPECT_EQ(c->modulus, 4);
    EXPECT_TRUE(replay(diagonal_lattice({4, -8, Integer(-12 * k)}), *c));
  }
  EXPECT_FALSE(congruence_obstruction(standard_lattice(StandardName::U), 0, {4, 8}).has_value());
  EXPECT_FALSE(congruence_obstruction(diagonal_lattice({2, -2}), -2, {8}).has_value());
}

TEST(Hilbert, Examples) {
  for (const Place& v : {Place::infinity(), Place::at(2), Place::at(3), Place::at(5)})
    EXPECT_EQ(hilbert_symbol(1, 1, v), 1);
  EXPECT_EQ(hilbert_symbol(-1, -1, Place::at(2)), -1);
  EXPECT_EQ(hilbert_symbol(2, 3, Place::at(3)), -1);
  EXPECT_EQ(oracle::hilbert_brute(-1, -1, 2), -1);
  EXPECT_EQ(oracle::hilbert_brute(2, 3, 3), -1);
}

TEST(Hilbert, RationalArgumentsUseSquareClasses) {
  EXPECT_EQ(hilbert_symbol(Rational(2, 9), 3, Place::at(3)), hilbert_symbol(2, 3, Place::at(3)));
  EXPECT_EQ(hilbert_symbol(Rational(-1, 4), Rational(-1, 25), Place::at(2)), -1);
}

TEST(Hilbert, AgreesWithResidueCountingOracle) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> d(-50, 50);
  int checked = 0;
  while (checked < 200) {
    const long a = d(rng), b = d(rng);
    if (a == 0 || b == 0) continue;
    ++checked;
    EXPECT_EQ(hilbert_symbol(a, b, Place::infinity()), oracle::hilbert_real(a, b));
    for (long p : {2L, 3L, 5L, 7L}) EXPECT_EQ(hilbert_symbol(a, b, Place::at(p)), oracle::hilbert_brute(a, b, p)) << a << "," << b << " at " << p;
  }
}

TEST(Hilbert, SymmetryBimultiplicativityProductFormula) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> d(-50, 50);
  int pairs = 0;
  while (pairs < 200) {
    const long a = d(rng), b = d(rng), a2 = d(rng);
    if (a == 0 || b == 0 || a2 == 0) continue;
    ++pairs;
    std::vector<long> ps = primes_of(2 * a * b * a2);
    int product = hilbert_symbol(a, b, Place::infinity());
    for (long p : ps) {
      const Place v = Place::at(p);
      EXPECT_EQ(hilbert_symbol(a, b, v), hilbert_symbol(b, a, v));
      EXPECT_EQ(hilbert_symbol(a * a2, b, v), hilbert_symbol(a, b, v) * hilbert_symbol(a2, b, v));
      product *= hilbert_symbol(a, b, v);
    }
    EXPECT_EQ(product, 1) << a << "," << b;
  }
}

TEST(Isotropy, Examples) {
  const auto u = rational_isotropy(standard_lattice(StandardName::U));
  EXPECT_TRUE(u.isotropic);
  ASSERT_TRUE(u.witness.has_value());
  EXPECT_EQ(*u.witness, (LatticeVector{1, 0}));

  const auto d = rational_isotropy(diagonal_lattice({2, -6}));
  EXPECT_FALSE(d.isotropic);
  ASSERT_TRUE(d.certificate.has_value());
  EXPECT_TRUE(replay(diagonal_lattice({2, -6}), *d.certificate));

  EXPECT_TRUE(rational_isotropy(a2_family()).isotropic);
}

TEST(Isotropy, BinaryWitnessIsConstructed) {
  const auto l = diagonal_lattice({3, -75});  // 3x^2 = 75y^2 at (5,1)
  const auto v = rational_isotropy(l, 1);
  ASSERT_TRUE(v.isotropic);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_EQ(l.norm(*v.witness), 0);
}

// Every diagonal ternary form with entries in {+-1,+-2,+-3,+-6}: Isotropic
// exactly when a nonzero zero of sup-norm <= 30 exists.
TEST(Isotropy, TernaryAgreesWithBoundedSearch) {
  const std::vector<long> entries = {1, -1, 2, -2, 3, -3, 6, -6};
  for (long a : entries)
    for (long b : entries)
      for (long c : entries) {
        bool found = false;
        for (long x = 0; x <= 30 && !found; ++x)
          for (long y = -30; y <= 30 && !found; ++y)
            for (long z = -30; z <= 30 && !found; ++z)
              if ((x || y || z) && a * x * x + b * y * y + c * z * z == 0) found = true;
        const auto l = diagonal_lattice({a, b, c});
        const auto v = rational_isotropy(l);
        EXPECT_EQ(v.isotropic, found) << a << "," << b << "," << c;
        if (v.certificate) EXPECT_TRUE(replay(l, *v.certificate));
        if (v.witness) EXPECT_EQ(l.norm(*v.witness), 0);
      }
}

// Holzer's bound turns bounded search into an exact oracle.
TEST(Isotropy, TernaryAgreesWithHolzerOracle) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> d(-40, 40);
  int checked = 0;
  while (checked < 150) {
    const long a = d(rng), b = d(rng), c = d(rng);
    if (!oracle::squarefree(a * b * c)) continue;
    ++checked;
    const auto l = diagonal_lattice({a, b, c});
    EXPECT_EQ(rational_isotropy(l).isotropic, oracle::ternary_isotropic_brute(a, b, c)) << a << "," << b << "," << c;
  }
}

TEST(Isotropy, AnisotropicQuaternaryHasNoSmallZero) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<long> d(-12, 12);
  int anisotropic = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const long a = d(rng), b = d(rng), c = d(rng), e = d(rng);
    if (!a || !b || !c || !e) continue;
    const auto l = diagonal_lattice({a, b, c, e});
    const auto v = rational_isotropy(l);
    if (v.isotropic) {
      if (v.witness) EXPECT_EQ(l.norm(*v.witness), 0);
      continue;
    }
    ++anisotropic;
    EXPECT_TRUE(replay(l, *v.certificate));
    for (long x = 0; x <= 8; ++x)
      for (long y = -8; y <= 8; ++y)
        for (long z = -8; z <= 8; ++z)
          for (long w = -8; w <= 8; ++w)
            if (x || y || z || w) ASSERT_NE(a * x * x + b * y * y + c * z * z + e * w * w, 0);
  }
  EXPECT_GT(anisotropic, 0);
}

TEST(Roots, Examples) {
  const auto f = root_existence(diagonal_lattice({4, -8, -12}), -2, 5);
  EXPECT_EQ(f.kind, VerdictKind::CertifiedNone);
  ASSERT_TRUE(f.certificate.has_value());
  ASSERT_TRUE(std::holds_alternative<CongruenceCertificate>(*f.certificate));
  EXPECT_EQ(std::get<CongruenceCertificate>(*f.certificate).modulus, 4);
  EXPECT_TRUE(replay(diagonal_lattice({4, -8, -12}), *f.certificate));

  const auto u = root_existence(u_minus2(), -2, 3);
  EXPECT_EQ(u.kind, VerdictKind::Witness);
  EXPECT_EQ(*u.witness, (LatticeVector{0, 0, 1}));

  const auto d = root_existence(d4_family(5), -2, 1);
  EXPECT_EQ(d.kind, VerdictKind::Witness);
  EXPECT_EQ(d4_family(5).norm(*d.witness), -2);
  EXPECT_EQ((*d.witness)[0], 0);
}

TEST(Roots, WitnessesVerifyAndCertificatesReplay) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> d(-14, 14);
  for (int trial = 0; trial < 60; ++trial) {
    const long a = std::labs(d(rng)) + 1, b = -std::labs(d(rng)) - 1, c = -std::labs(d(rng)) - 1;
    const auto l = diagonal_lattice({a, b, c});
    for (long m : {-2L, -4L, 2L}) {
      const auto v = root_existence(l, m, 3);
      if (v.kind == VerdictKind::Witness) EXPECT_EQ(l.norm(*v.witness), m);
      if (v.kind == VerdictKind::CertifiedNone) {
        EXPECT_TRUE(replay(l, *v.certificate));
        EXPECT_TRUE(enumerate_norm_vectors(l, m, 6).empty());
      }
    }
  }
}

TEST(Roots, WitnessConstructorRejectsWrongNorm) {
  try {
    SearchVerdict::make_witness(u_minus2(), -2, {1, 0, 0}, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidParameter);
  }
}

TEST(IsotropicVectors, Examples) {
  EXPECT_EQ(primitive_isotropic_vectors(standard_lattice(StandardName::U), 1),
            (std::vector<LatticeVector>{{0, 1}, {1, 0}}));
  EXPECT_TRUE(primitive_isotropic_vectors(diagonal_lattice({4, -8, -12}), 20).empty());
  EXPECT_TRUE(contains(primitive_isotropic_vectors(u_minus2(), 1), {1, 0, 0}));
}

TEST(IsotropicVectors, ConeFilter) {
  IsotropicFilter f;
  f.restrict_to_cone = true;
  try {
    primitive_isotropic_vectors(standard_lattice(StandardName::U), 1, f);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoPositiveConeSet);
  }
  const auto u = standard_lattice(StandardName::U);
  f.cone = ConeOrientation::make(u, {1, 1});
  for (const auto& v : primitive_isotropic_vectors(u, 3, f)) EXPECT_GT(u.inner(v, {1, 1}), 0);
}

TEST(Simplest, Ordering) {
  const std::vector<LatticeVector> vs = {{1, 1, 0}, {0, 0, 1}, {0, 1, 0}, {2, 0, 0}};
  EXPECT_EQ(simplest(vs), (LatticeVector{0, 1, 0}));
}
