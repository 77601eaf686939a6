#pragma once

// Decision procedures on integral quadratic forms: bounded enumeration of
// vectors of a given norm, congruence nonexistence certificates, local
// Hilbert symbols and rational isotropy (Hasse-Minkowski).

#include "hyperlat/hyperbolic.hpp"
#include "hyperlat/lattice.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace hyperlat {

/// A place of Q: a prime, or the real place (stored as prime 0).
struct Place {
  Integer prime;

  static Place infinity() { return Place{0}; }
  static Place at(const Integer& p) { return Place{p}; }
  bool is_infinite() const { return prime == 0; }
  std::string str() const { return is_infinite() ? "inf" : to_string(prime); }
  bool operator==(const Place&) const = default;
};

/// Local Hilbert symbol (a,b)_v in {+1,-1}; a, b nonzero.
int hilbert_symbol(const Rational& a, const Rational& b, const Place& place);

/// Distinct primes dividing |n| in increasing order (n != 0).
std::vector<Integer> prime_factors(const Integer& n);
/// The squarefree integer s with r = s * q^2 for some rational q.
Integer squarefree_class(const Rational& r);
/// Is r a square in Q_v?
bool is_local_square(const Rational& r, const Place& place);

struct EnumerationOptions {
  std::uint64_t candidate_cap = 100'000'000;
};

/// All nonzero v with sup-norm <= height and (v,v) = norm, one per +/- pair
/// (first nonzero coordinate positive), in lexicographic order. The last
/// coordinate is solved for exactly, so the scan costs (2H+1)^(rank-1)
/// prefixes; more than candidate_cap prefixes throws BudgetExceeded.
std::vector<LatticeVector> enumerate_norm_vectors(const GramLattice& lattice, const Integer& norm, int height,
                                                  const EnumerationOptions& options = {});

/// No residue vector mod `modulus` represents `target`, under the
/// primitivity constraint recorded in `primitive_at`.
struct CongruenceCertificate {
  Integer modulus;
  Integer target;
  std::vector<Integer> primitive_at;  // primes p | M where a p-unit coordinate was required
  std::uint64_t residues_scanned = 0;
};

std::optional<CongruenceCertificate> congruence_obstruction(const GramLattice& lattice, const Integer& target,
                                                            std::vector<Integer> moduli,
                                                            std::uint64_t residue_cap = 100'000'000);

enum class LocalTest { RankOne, Definite, BinaryDiscriminant, TernaryHilbert, QuaternaryHasse };

std::string_view to_string(LocalTest t);

/// The rational form L (or L + <-target> when target != 0) is anisotropic
/// at `place`. `diagonal` is a squarefree diagonalization; `observed` is the
/// local invariant found there and `required` the value isotropy needs.
struct AnisotropyCertificate {
  Integer target;
  std::vector<Integer> diagonal;
  Place place;
  LocalTest test = LocalTest::Definite;
  int observed = 0;
  int required = 0;
};

using Certificate = std::variant<CongruenceCertificate, AnisotropyCertificate>;

bool replay(const GramLattice& lattice, const CongruenceCertificate& c);
bool replay(const GramLattice& lattice, const AnisotropyCertificate& c);
bool replay(const GramLattice& lattice, const Certificate& c);

struct IsotropyVerdict {
  bool isotropic = false;
  std::optional<LatticeVector> witness;               // integral, primitive
  std::optional<AnisotropyCertificate> certificate;  // set iff anisotropic
};

/// Decides whether the form has a nonzero rational isotropic vector. For
/// isotropic forms a small integral witness is searched up to
/// `witness_height` (and always constructed for rank 2).
IsotropyVerdict rational_isotropy(const GramLattice& lattice, int witness_height = 6);

/// Certificate that `target` is not represented over Q, if one exists.
std::optional<AnisotropyCertificate> rational_nonrepresentation(const GramLattice& lattice, const Integer& target);

enum class VerdictKind { Witness, NoneUpToHeight, CertifiedNone };

std::string_view to_string(VerdictKind k);

struct SearchVerdict {
  VerdictKind kind = VerdictKind::NoneUpToHeight;
  Integer target;
  std::optional<LatticeVector> witness;
  std::optional<Certificate> certificate;
  int height_bound = 0;

  /// Throws InvalidParameter if the witness does not have the target norm.
  static SearchVerdict make_witness(const GramLattice& lattice, const Integer& target, LatticeVector v, int height);
};

struct RootSearchOptions {
  std::vector<Integer> moduli = {3, 4, 5, 7, 8, 9, 16, 25, 27};
  EnumerationOptions enumeration;
  std::uint64_t residue_cap = 100'000'000;
};

/// Rational test, then the modulus ladder, then bounded enumeration.
SearchVerdict root_existence(const GramLattice& lattice, const Integer& root_norm, int height,
                             const RootSearchOptions& options = {});

struct IsotropicFilter {
  bool restrict_to_cone = false;
  std::optional<ConeOrientation> cone;
};

/// Primitive isotropic vectors of sup-norm <= height in lexicographic order.
/// Unfiltered: one per +/- pair. Cone-restricted: the representative with
/// (v,v0) > 0. Throws NoPositiveConeSet if restriction is asked without a cone.
std::vector<LatticeVector> primitive_isotropic_vectors(const GramLattice& lattice, int height,
                                                       const IsotropicFilter& filter = {},
                                                       const EnumerationOptions& options = {});

/// Picks the simplest vector of a nonempty list (see simpler_vector).
const LatticeVector& simplest(const std::vector<LatticeVector>& vs);

}  // namespace hyperlat
