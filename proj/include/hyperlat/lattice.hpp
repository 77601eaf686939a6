#pragma once

#include "hyperlat/arith.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace hyperlat {

/// Coordinates of a lattice vector in the basis the Gram matrix is written in.
using LatticeVector = IntVector;

struct Signature {
  int positive = 0;
  int negative = 0;

  bool operator==(const Signature&) const = default;
  Signature operator+(const Signature& o) const { return {positive + o.positive, negative + o.negative}; }
};

/// Congruence diagonalization P^T G P = diag(d) over the rationals. The
/// columns of `basis` are the new basis vectors in the original coordinates.
/// Degenerate input yields zero diagonal entries.
struct Diagonalization {
  RatMatrix basis;
  std::vector<Rational> diagonal;
};

Diagonalization diagonalize(const RatMatrix& symmetric);

/// An integral nondegenerate symmetric bilinear form on Z^rank.
///
/// Values are immutable. Copies share the lazily computed signature, which is
/// filled at most once and is safe to read from several threads.
class GramLattice {
 public:
  /// Throws NotSymmetric, Degenerate, or InvalidParameter (empty/non-square).
  static GramLattice build(IntMatrix gram, std::vector<std::string> labels = {});

  const IntMatrix& gram() const { return state_->gram; }
  std::size_t rank() const { return state_->gram.rows(); }
  const Integer& determinant() const { return state_->det; }
  const std::vector<std::string>& labels() const { return state_->labels; }

  Signature signature() const;
  bool has_cached_signature() const;

  /// u^T G v; throws DimensionMismatch.
  Integer inner(const LatticeVector& u, const LatticeVector& v) const;
  Rational inner(const RatVector& u, const RatVector& v) const;
  Integer norm(const LatticeVector& v) const { return inner(v, v); }

  /// G v, used to turn a form pairing into a Euclidean dot product.
  IntVector apply_gram(const LatticeVector& v) const;

  bool operator==(const GramLattice& o) const { return gram() == o.gram(); }

 private:
  struct State {
    IntMatrix gram;
    Integer det;
    std::vector<std::string> labels;
    mutable std::once_flag signature_once;
    mutable std::optional<Signature> signature;
  };
  explicit GramLattice(std::shared_ptr<State> s) : state_(std::move(s)) {}
  std::shared_ptr<State> state_;
};

Signature signature(const GramLattice& lattice);
Integer inner_product(const GramLattice& lattice, const LatticeVector& u, const LatticeVector& v);

GramLattice direct_sum(const GramLattice& a, const GramLattice& b);

enum class RootLatticeSign { Negative, Positive };

enum class StandardName { U, A2, D4, E8 };

/// Root lattices come out negative definite (root norm -2) unless flipped.
GramLattice standard_lattice(StandardName name, RootLatticeSign sign = RootLatticeSign::Negative);
/// The rank one lattice <m>; throws InvalidParameter for m = 0.
GramLattice rank_one(const Integer& m);
GramLattice diagonal_lattice(const std::vector<Integer>& entries);

}  // namespace hyperlat
