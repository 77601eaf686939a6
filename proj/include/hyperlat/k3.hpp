#pragma once

// Criteria for automorphism groups of K3 surfaces, evaluated on a
// Neron-Severi lattice given as a Gram matrix, plus the lattice families
// used as reference cases.

#include "hyperlat/forms.hpp"
#include "hyperlat/groups.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hyperlat {

enum class LatticeVerdictKind { IsLattice, NotLattice, Unresolved };
enum class FibrationVerdictKind { NoGenusOneFibration, FibrationExists, Unresolved };

std::string_view to_string(LatticeVerdictKind k);
std::string_view to_string(FibrationVerdictKind k);

struct LatticeVerdict {
  LatticeVerdictKind kind = LatticeVerdictKind::Unresolved;
  SearchVerdict search;  // witness root or nonexistence certificate
};

struct FibrationVerdict {
  FibrationVerdictKind kind = FibrationVerdictKind::Unresolved;
  std::optional<LatticeVector> witness;               // primitive isotropic
  std::optional<AnisotropyCertificate> certificate;  // set for NoGenusOneFibration
  int height = 0;
};

/// Throws WrongSignature unless the signature is (1, rho-1).
LatticeVerdict lattice_criterion(const GramLattice& ns, int height);
FibrationVerdict genus_one_fibration_test(const GramLattice& ns, int height);

/// diag(4,-8,-12k) and diag(4,-8,-12,-12k); k > 0, k = 1 mod 3.
std::pair<GramLattice, GramLattice> uniform_lattice_family(long k);

struct RankFiveSelector {
  enum class Kind { D4, A2Squared } kind = Kind::D4;
  long parameter = 0;
};

/// <2^k> + D4 (k >= 5) or <2*3^(2m-1)> + A2 + A2 (m >= 2).
GramLattice convex_cocompact_rank5_family(const RankFiveSelector& s);

/// Determinant-and-signature comparison with the rank five families. This is
/// a weak screen: lattices can agree on both and still be non-isomorphic.
struct FamilyScreen {
  std::optional<RankFiveSelector> candidate;
  std::string note;
};

FamilyScreen screen_rank5_families(const GramLattice& ns);

struct EntropyFinding {
  std::vector<int> word;
  IsometryKind kind = IsometryKind::Elliptic;
  double entropy = 0.0;
};

struct EntropyReport {
  std::vector<EntropyFinding> findings;
  bool positive_entropy_found = false;
  int word_budget = 0;
  std::string verdict;
  std::string context;  // informational, for Picard numbers 2..4
  std::vector<std::string> conditional_flags;
};

/// Classifies every non-identity element of word length <= word_budget.
EntropyReport entropy_report(const FGGroup& g, int word_budget, int rho, const WordOptions& options = {});

struct CriterionReport {
  Signature signature;
  Integer determinant;
  LatticeVerdict lattice_verdict;
  FibrationVerdict fibration_verdict;
  FamilyScreen family_screen;
  std::string convex_cocompact_note;
  std::optional<EntropyReport> entropy;
  std::vector<std::string> conditional_flags;
};

CriterionReport k3_criteria(const GramLattice& ns, int height, const std::optional<FGGroup>& generators, int rho,
                            int word_budget);

}  // namespace hyperlat
