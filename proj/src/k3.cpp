#include "hyperlat/k3.hpp"

#include "hyperlat/error.hpp"

#include <cmath>
#include <sstream>

namespace hyperlat {

std::string_view to_string(LatticeVerdictKind k) {
  switch (k) {
    case LatticeVerdictKind::IsLattice: return "IsLattice";
    case LatticeVerdictKind::NotLattice: return "NotLattice";
    case LatticeVerdictKind::Unresolved: return "Unresolved";
  }
  return "Unknown";
}

std::string_view to_string(FibrationVerdictKind k) {
  switch (k) {
    case FibrationVerdictKind::NoGenusOneFibration: return "NoGenusOneFibration";
    case FibrationVerdictKind::FibrationExists: return "FibrationExists";
    case FibrationVerdictKind::Unresolved: return "Unresolved";
  }
  return "Unknown";
}

namespace {

void require_hyperbolic(const GramLattice& ns) {
  const Signature s = ns.signature();
  if (s.positive != 1)
    throw Error(ErrorCode::WrongSignature, "Neron-Severi lattice must have signature (1, rho-1), got (" +
                                               std::to_string(s.positive) + "," + std::to_string(s.negative) + ")");
}

const char* kIsotropyFlag =
    "assumes a K3 surface has a genus-one fibration exactly when its Neron-Severi lattice has a nonzero isotropic "
    "class";
const char* kRootFlag = "assumes (-2)-curves exist exactly when the Neron-Severi lattice has a vector of norm -2";
const char* kFieldFlag =
    "input is a bare Gram matrix; hypotheses on the base field and characteristic are the user's responsibility";
constexpr double kWitnessScanCap = 2e6;

const char* kGeneratorFlag = "entropy verdicts assume the supplied generators generate the image of Aut(X) in O(NS)";

// Exponent of p in n (n > 0), and the cofactor.
std::pair<unsigned, Integer> split_power(Integer n, long p) {
  unsigned e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return {e, n};
}

}  // namespace

LatticeVerdict lattice_criterion(const GramLattice& ns, int height) {
  require_hyperbolic(ns);
  LatticeVerdict v;
  v.search = root_existence(ns, Integer(-2), height);
  switch (v.search.kind) {
    case VerdictKind::CertifiedNone: v.kind = LatticeVerdictKind::IsLattice; break;
    case VerdictKind::Witness: v.kind = LatticeVerdictKind::NotLattice; break;
    case VerdictKind::NoneUpToHeight: v.kind = LatticeVerdictKind::Unresolved; break;
  }
  return v;
}

FibrationVerdict genus_one_fibration_test(const GramLattice& ns, int height) {
  require_hyperbolic(ns);
  FibrationVerdict v;
  v.height = height;
  IsotropyVerdict iso = rational_isotropy(ns, height);
  if (!iso.isotropic) {
    v.kind = FibrationVerdictKind::NoGenusOneFibration;
    v.certificate = std::move(iso.certificate);
    return v;
  }
  if (!iso.witness) {
    // Rationally isotropic: keep widening the box while the scan stays cheap.
    const double n = static_cast<double>(ns.rank());
    for (int h = height + 1; std::pow(2.0 * h + 1, n - 1) <= kWitnessScanCap; ++h) {
      std::vector<LatticeVector> prim;
      for (auto& x : enumerate_norm_vectors(ns, 0, h))
        if (gcd_of(x) == 1) prim.push_back(std::move(x));
      if (!prim.empty()) {
        iso.witness = simplest(prim);
        v.height = h;
        break;
      }
    }
  }
  if (iso.witness) {
    v.kind = FibrationVerdictKind::FibrationExists;
    v.witness = std::move(iso.witness);
  } else {
    v.kind = FibrationVerdictKind::Unresolved;
  }
  return v;
}

std::pair<GramLattice, GramLattice> uniform_lattice_family(long k) {
  if (k <= 0 || k % 3 != 1)
    throw Error(ErrorCode::InvalidParameter, "uniform family needs k > 0 with k = 1 mod 3, got " + std::to_string(k));
  const Integer c = Integer(-12) * k;
  return {diagonal_lattice({4, -8, c}), diagonal_lattice({4, -8, -12, c})};
}

GramLattice convex_cocompact_rank5_family(const RankFiveSelector& s) {
  if (s.kind == RankFiveSelector::Kind::D4) {
    if (s.parameter < 5) throw Error(ErrorCode::InvalidParameter, "D4 family needs k >= 5");
    if (s.parameter > 4096) throw Error(ErrorCode::InvalidParameter, "D4 family parameter too large");
    return direct_sum(rank_one(pow_int(2, static_cast<unsigned>(s.parameter))), standard_lattice(StandardName::D4));
  }
  if (s.parameter < 2) throw Error(ErrorCode::InvalidParameter, "A2 + A2 family needs m >= 2");
  if (s.parameter > 2048) throw Error(ErrorCode::InvalidParameter, "A2 + A2 family parameter too large");
  const GramLattice a2 = standard_lattice(StandardName::A2);
  return direct_sum(direct_sum(rank_one(2 * pow_int(3, static_cast<unsigned>(2 * s.parameter - 1))), a2), a2);
}

FamilyScreen screen_rank5_families(const GramLattice& ns) {
  FamilyScreen out;
  const Signature s = ns.signature();
  if (ns.rank() != 5 || s.positive != 1) {
    out.note = "not rank 5 with signature (1,4); the rank five families do not apply";
    return out;
  }
  const Integer det = ns.determinant();
  if (det > 0) {
    // <2^k> + D4 has determinant 2^(k+2).
    auto [e2, rest2] = split_power(det, 2);
    if (rest2 == 1 && e2 >= 7) out.candidate = RankFiveSelector{RankFiveSelector::Kind::D4, long(e2) - 2};
    // <2*3^(2m-1)> + A2 + A2 has determinant 2*3^(2m+1).
    auto [e3, rest3] = split_power(det, 3);
    if (rest3 == 2 && e3 % 2 == 1 && e3 >= 5)
      out.candidate = RankFiveSelector{RankFiveSelector::Kind::A2Squared, long(e3 - 1) / 2};
  }
  if (!out.candidate) {
    out.note = "determinant " + to_string(det) + " matches neither rank five family, so the lattice is not isomorphic to either";
  } else if (out.candidate->kind == RankFiveSelector::Kind::D4) {
    out.note = "weak screen only: determinant and signature agree with <2^" + std::to_string(out.candidate->parameter) +
               "> + D4; isomorphism is not tested";
  } else {
    out.note = "weak screen only: determinant and signature agree with <2*3^" +
               std::to_string(2 * out.candidate->parameter - 1) + "> + A2 + A2; isomorphism is not tested";
  }
  return out;
}

EntropyReport entropy_report(const FGGroup& g, int word_budget, int rho, const WordOptions& options) {
  if (word_budget < 0) throw Error(ErrorCode::InvalidParameter, "word budget must be >= 0");
  EntropyReport r;
  r.word_budget = word_budget;
  const auto elements = elements_up_to(g, word_budget, options);
  const IntMatrix id = IntMatrix::identity(g.lattice().rank());
  const EntropyFinding* first_positive = nullptr;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i].matrix == id) continue;
    const Isometry h = make_isometry(g.orientation(), elements[i].matrix);
    EntropyFinding f;
    f.word = word_of(elements, i);
    f.kind = classify(h).kind;
    f.entropy = entropy(h);
    r.findings.push_back(std::move(f));
  }
  for (const auto& f : r.findings)
    if (f.kind == IsometryKind::Loxodromic) {
      first_positive = &f;
      break;
    }
  r.positive_entropy_found = first_positive != nullptr;

  std::ostringstream v;
  if (first_positive) {
    v << "positive entropy: the word " << word_string(first_positive->word) << " is loxodromic";
    if (rho >= 5)
      v << "; for Picard number >= 5 this makes Aut(X) non-elementary relatively hyperbolic, provided the generators "
           "generate the image of Aut(X)";
    else
      v << "; the relative hyperbolicity criterion needs Picard number >= 5";
  } else {
    v << "no positive-entropy word up to budget " << word_budget
      << "; this is not a proof that Aut(X) has zero entropy";
  }
  r.verdict = v.str();

  switch (rho) {
    case 2: r.context = "Picard number 2: an infinite Aut(X) is always virtually cyclic and contains loxodromic elements"; break;
    case 3: r.context = "Picard number 3: an infinite Aut(X) is virtually abelian exactly when it is virtually cyclic"; break;
    case 4:
      r.context =
          "Picard number 4: an infinite Aut(X) is virtually abelian exactly when every automorphism has zero entropy, "
          "or when it is virtually cyclic with some automorphism of positive entropy";
      break;
    default:
      if (rho >= 5)
        r.context = "Picard number >= 5: an infinite Aut(X) is virtually abelian exactly when every automorphism has "
                    "zero entropy";
      break;
  }
  r.conditional_flags.push_back(kGeneratorFlag);
  return r;
}

CriterionReport k3_criteria(const GramLattice& ns, int height, const std::optional<FGGroup>& generators, int rho,
                            int word_budget) {
  require_hyperbolic(ns);
  CriterionReport r;
  r.signature = ns.signature();
  r.determinant = ns.determinant();
  r.lattice_verdict = lattice_criterion(ns, height);
  r.fibration_verdict = genus_one_fibration_test(ns, height);
  r.family_screen = screen_rank5_families(ns);

  std::ostringstream cc;
  const int rank = static_cast<int>(ns.rank());
  if (r.fibration_verdict.kind == FibrationVerdictKind::NoGenusOneFibration) {
    cc << "no genus-one fibration, so Aut(X) acts convex-cocompactly";
    if (r.lattice_verdict.kind == LatticeVerdictKind::IsLattice)
      cc << "; with no (-2)-curves it is moreover a cocompact lattice";
  } else if (rank >= 6) {
    cc << "Picard number >= 6: Aut(X) is never convex-cocompact";
  } else if (rank == 5) {
    cc << "Picard number 5: convex-cocompact exactly for the two classified families <2^k> + D4 (k >= 5) and "
          "<2*3^(2m-1)> + A2 + A2 (m >= 2); "
       << r.family_screen.note;
  } else if (r.fibration_verdict.kind == FibrationVerdictKind::FibrationExists) {
    cc << "genus-one fibrations exist: convex-cocompact exactly when the Jacobian of every such fibration has a "
          "finite Mordell-Weil group, which is not computed here";
  } else {
    cc << "isotropy undecided up to height " << height << "; convex-cocompactness unresolved";
  }
  cc << ". Mordell-Weil finiteness over all fibrations is only certified through the classified rank five families";
  r.convex_cocompact_note = cc.str();

  r.conditional_flags = {kIsotropyFlag, kRootFlag, kFieldFlag};
  if (generators) {
    r.entropy = entropy_report(*generators, word_budget, rho);
    r.conditional_flags.push_back(kGeneratorFlag);
  }
  return r;
}

}  // namespace hyperlat
