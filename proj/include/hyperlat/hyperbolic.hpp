#pragma once

// Hyperboloid, ball and upper half-space models attached to a lattice of
// signature (1,n), together with the horoballs B_e = {x : (x,e) < 1/2}.

#include "hyperlat/lattice.hpp"

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace hyperlat {

/// A lattice of signature (1,n) plus a vector v0 with (v0,v0) > 0 picking
/// the component C of {v : (v,v) > 0}. Also carries the model frame: a
/// rational orthogonal basis f0 = v0, f1..fn built by Gram-Schmidt, which
/// fixes ball and half-space coordinates (v0 maps to the ball origin).
class ConeOrientation {
 public:
  /// Throws WrongSignature unless the lattice is hyperbolic, InvalidParameter
  /// if (v0,v0) <= 0.
  static ConeOrientation make(const GramLattice& lattice, const LatticeVector& v0);
  /// Uses the simplest vector of positive norm (see simpler_vector) as v0.
  static ConeOrientation automatic(const GramLattice& lattice);

  const GramLattice& lattice() const;
  const LatticeVector& v0() const;
  std::size_t dimension() const { return lattice().rank() - 1; }

  /// Open cone membership: (v,v) > 0 and (v,v0) > 0.
  bool contains(const RatVector& v) const;
  bool contains(const LatticeVector& v) const;
  /// Closure of C minus the origin.
  bool in_closure(const LatticeVector& v) const;

  bool same_ambient(const ConeOrientation& other) const;

  const std::vector<RatVector>& frame() const;
  const std::vector<Rational>& frame_norms() const;

  /// Minkowski coordinates (t, y1..yn) of v in the normalized frame, so that
  /// t^2 - |y|^2 = (v,v), or = 1 when `normalize` divides by sqrt((v,v)).
  /// Evaluated in 50-digit arithmetic, rounded once.
  std::vector<double> minkowski(const RatVector& v, bool normalize = false) const;
  /// Same for an approximate vector given in lattice coordinates.
  std::vector<double> minkowski_numeric(std::span<const double> v) const;
  /// Lattice coordinates of the vector with the given Minkowski coordinates.
  std::vector<double> from_minkowski(std::span<const double> coords) const;

 private:
  struct State;
  explicit ConeOrientation(std::shared_ptr<const State> s) : state_(std::move(s)) {}
  std::shared_ptr<const State> state_;
};

bool contains_in_cone(const ConeOrientation& o, const LatticeVector& v);

/// A point of H^n, stored exactly as a primitive integral ray in C, with
/// numeric coordinates of ray / sqrt((ray,ray)).
class HyperboloidPoint {
 public:
  /// Throws NotInCone when the ray is not in the open cone.
  static HyperboloidPoint make(const ConeOrientation& o, const RatVector& ray);
  static HyperboloidPoint make(const ConeOrientation& o, const LatticeVector& ray);

  const ConeOrientation& orientation() const { return orientation_; }
  const LatticeVector& ray() const { return ray_; }
  const Integer& ray_norm() const { return norm_; }
  /// Normalized point in lattice coordinates.
  const std::vector<double>& numeric() const { return numeric_; }
  /// Normalized Minkowski coordinates (cosh r, ...).
  const std::vector<double>& minkowski() const { return minkowski_; }

 private:
  HyperboloidPoint(ConeOrientation o) : orientation_(std::move(o)) {}
  ConeOrientation orientation_;
  LatticeVector ray_;
  Integer norm_;
  std::vector<double> numeric_;
  std::vector<double> minkowski_;
};

/// A point of the boundary sphere given by an integral isotropic ray in the
/// closure of C. Integral rays are always rational.
struct BoundaryRay {
  LatticeVector ray;
  bool rational = true;

  /// Throws NotIsotropic or NotInCone; the ray is made primitive.
  static BoundaryRay make(const ConeOrientation& o, const LatticeVector& v);
};

double distance(const HyperboloidPoint& x, const HyperboloidPoint& y);

std::vector<double> to_ball(const HyperboloidPoint& x);
std::vector<double> to_ball(const ConeOrientation& o, const BoundaryRay& c);
/// Ball point -> normalized hyperboloid point in lattice coordinates.
std::vector<double> from_ball(const ConeOrientation& o, std::span<const double> ball);
/// Upper half-space coordinates (z1..z_{n-1}, height). The boundary point
/// sent to infinity is the isotropic direction f0/|f0| + fn/|fn|.
std::vector<double> to_upper_half(const HyperboloidPoint& x);

std::vector<double> minkowski_to_ball(std::span<const double> minkowski);
std::vector<double> ball_to_minkowski(std::span<const double> ball);
std::vector<double> minkowski_to_upper_half(std::span<const double> minkowski);

class Horoball {
 public:
  /// Throws NotIsotropic, NotPrimitive, NotInCone.
  static Horoball make(const ConeOrientation& o, const LatticeVector& e, Rational bound = Rational(1, 2));

  const ConeOrientation& orientation() const { return orientation_; }
  const BoundaryRay& center() const { return center_; }
  const Rational& bound() const { return bound_; }

 private:
  Horoball(ConeOrientation o) : orientation_(std::move(o)) {}
  ConeOrientation orientation_;
  BoundaryRay center_;
  Rational bound_;
};

/// (x,e) < bound decided as (ray,e)^2 < bound^2 (ray,ray); no radicals.
bool horoball_contains(const Horoball& b, const HyperboloidPoint& x);

struct DisjointnessProof {
  bool disjoint = false;
  Integer pairing;         // (e,e')
  std::string inequality;  // instance of 1 <= (e,e') <= 2(x,e)(x,e')
};

/// Throws SameRay, DifferentAmbient.
DisjointnessProof horoballs_disjoint(const Horoball& a, const Horoball& b);
/// Validating overload on raw vectors; throws NotIsotropic, NotPrimitive, SameRay.
DisjointnessProof horoballs_disjoint(const ConeOrientation& o, const LatticeVector& e, const LatticeVector& f);

}  // namespace hyperlat
