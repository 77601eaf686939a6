#pragma once

// Elements of O+(L): integer matrices preserving the form and the chosen
// positive cone, with exact elliptic/parabolic/loxodromic classification.

#include "hyperlat/hyperbolic.hpp"
#include "hyperlat/polynomial.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace hyperlat {

enum class IsometryKind { Elliptic, Parabolic, Loxodromic };

std::string_view to_string(IsometryKind k);

struct Classification {
  IsometryKind kind = IsometryKind::Elliptic;
  std::uint64_t order = 0;                    // elliptic only
  std::vector<std::uint64_t> cyclotomic_orders;  // factors of the charpoly, with multiplicity
  IntPoly lambda_minpoly;                     // loxodromic only
  Rational lambda_lo, lambda_hi;              // isolating bracket, width <= 2^-60
  double lambda = 1.0;
};

/// Q(lambda) for an irreducible monic polynomial with a distinguished real
/// root. Elements are polynomials in the generator reduced mod the minpoly.
class NumberField {
 public:
  using Element = RatPoly;

  NumberField(RatPoly minpoly, Rational lo, Rational hi);

  const RatPoly& minpoly() const { return minpoly_; }
  int degree() const { return hyperlat::degree(minpoly_); }

  Element reduce(const Element& a) const;
  Element mul(const Element& a, const Element& b) const;
  /// Throws InvalidParameter for zero.
  Element inverse(const Element& a) const;
  Element generator() const { return {Rational(0), Rational(1)}; }
  static bool is_rational(const Element& a) { return a.size() <= 1; }
  /// Value at the distinguished root, in 50-digit arithmetic then rounded.
  double value(const Element& a) const;
  int sign(const Element& a) const;

 private:
  RatPoly minpoly_;
  Rational lo_, hi_;
};

/// An eigenvector over Q(lambda), normalized so its first nonzero
/// coordinate is 1 before orienting into the cone.
struct AlgebraicVector {
  std::vector<NumberField::Element> coords;
  bool rational = false;
  std::vector<double> numeric;  // lattice coordinates, scaled so (v, v0) = 1
};

struct FixedRay {
  AlgebraicVector vector;
  bool rational = false;
  std::optional<LatticeVector> lattice_ray;  // primitive, when rational
  std::vector<double> ball;                  // unit-sphere point
};

class Isometry {
 public:
  const ConeOrientation& orientation() const;
  const GramLattice& lattice() const { return orientation().lattice(); }
  const IntMatrix& matrix() const;
  const IntPoly& charpoly() const;
  bool has_cached_classification() const;

  LatticeVector apply(const LatticeVector& v) const { return matrix() * v; }
  bool operator==(const Isometry& o) const { return matrix() == o.matrix(); }

  struct State;

 private:
  friend Isometry make_isometry(const ConeOrientation& o, IntMatrix m);
  friend const Classification& classify(const Isometry& g);
  explicit Isometry(std::shared_ptr<State> s) : state_(std::move(s)) {}
  std::shared_ptr<State> state_;
};

/// Throws DimensionMismatch, NotOrthogonal, WrongComponent.
Isometry make_isometry(const ConeOrientation& o, IntMatrix m);
/// As above, additionally checking that `o` is over `lattice` (DifferentAmbient).
Isometry make_isometry(const GramLattice& lattice, IntMatrix m, const ConeOrientation& o);

Isometry identity_isometry(const ConeOrientation& o);
Isometry compose(const Isometry& a, const Isometry& b);  // a after b
Isometry inverse(const Isometry& g);
Isometry power(const Isometry& g, long n);

/// Computed once per isometry and shared between copies. Throws
/// BudgetExceeded if the candidate elliptic order exceeds 10^6.
const Classification& classify(const Isometry& g);
double entropy(const Isometry& g);

/// Throws EllipticHasNoBoundaryFixedPoint.
std::vector<FixedRay> fixed_boundary_points(const Isometry& g);

/// x -> x + (x,d) d for (d,d) = -2; throws WrongNorm.
Isometry reflection(const ConeOrientation& o, const LatticeVector& delta);
/// v -> v + (v,e)a - (v,a)e - (a,a)/2 (v,e) e. Throws NotIsotropic,
/// NotPrimitive, InvalidParameter ((e,a) != 0), NonIntegralResult ((a,a) odd).
Isometry eichler_transvection(const ConeOrientation& o, const LatticeVector& e, const LatticeVector& a);

}  // namespace hyperlat
