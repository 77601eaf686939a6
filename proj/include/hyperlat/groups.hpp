#pragma once

// Finitely generated subgroups of O+(L): bounded word enumeration, orbits,
// limit-point sampling, elementary-type detection, budget-truncated
// Dirichlet domains, tiling checks and reflection chamber walks.

#include "hyperlat/cone.hpp"
#include "hyperlat/isometry.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hyperlat {

class FGGroup {
 public:
  /// Throws InvalidParameter (no generators) or DifferentAmbient.
  static FGGroup make(std::vector<Isometry> generators);

  const std::vector<Isometry>& generators() const { return generators_; }
  const ConeOrientation& orientation() const { return generators_.front().orientation(); }
  const GramLattice& lattice() const { return orientation().lattice(); }

 private:
  explicit FGGroup(std::vector<Isometry> g) : generators_(std::move(g)) {}
  std::vector<Isometry> generators_;
};

/// A group element with a shortest word found by breadth-first search.
/// Letters are +(i+1) for generator i and -(i+1) for its inverse.
/// Words are stored as a parent link into the enumeration list.
struct GroupElement {
  IntMatrix matrix;
  std::size_t parent = 0;
  int letter = 0;  // 0 for the identity
  std::size_t length = 0;
};

std::string word_string(const std::vector<int>& word);
std::vector<int> word_of(const std::vector<GroupElement>& elements, std::size_t index);

struct WordOptions {
  std::size_t element_cap = 1'000'000;
};

/// All distinct elements of word length <= length, identity first, in
/// breadth-first order over the letters 1, -1, 2, -2, ...
std::vector<GroupElement> elements_up_to(const FGGroup& g, int length, const WordOptions& options = {});

/// Points g.x for all elements of length <= depth, deduplicated by ray and
/// sorted by ray.
std::vector<HyperboloidPoint> orbit(const FGGroup& g, const HyperboloidPoint& x, int depth,
                                    const WordOptions& options = {});

struct LimitCluster {
  std::vector<double> direction;  // unit vector in the ball model
  std::size_t size = 0;
};

struct LimitSample {
  std::vector<LimitCluster> clusters;
  std::size_t orbit_points = 0;
  std::size_t near_boundary = 0;
  double radius_threshold = 1 - 1e-6;
  double angular_tolerance = 1e-4;
};

/// Approximation of the limit set: orbit points near the unit sphere,
/// single-linkage clustered at the angular tolerance (directions closer than
/// a tenth of the tolerance are merged before linkage).
LimitSample limit_points_sample(const FGGroup& g, const HyperboloidPoint& x, int depth,
                                const WordOptions& options = {});

enum class ElementaryType { EllipticType, ParabolicType, LoxodromicType, NotDetectedElementary };

std::string_view to_string(ElementaryType t);

ElementaryType elementary_type(const FGGroup& g, int budget);

/// {x : (w,x) >= 0} equivalent to d(h,x) <= d(h,gx). Throws FixedBasepoint.
HalfSpace dirichlet_halfspace(const HyperboloidPoint& h, const Isometry& g);

struct DirichletDomain {
  PolyhedralCone cone;
  int truncated_at = 0;
  std::size_t elements_used = 0;
};

/// Budget-truncated Dirichlet domain with redundant halfspaces removed.
/// Throws FixedBasepoint if a nontrivial generator fixes h.
DirichletDomain dirichlet_domain(const FGGroup& g, const HyperboloidPoint& h, int word_budget,
                                 const WordOptions& options = {});

struct TilingReport {
  std::size_t samples = 0;
  std::size_t interior_samples = 0;
  std::size_t overlaps = 0;
  std::size_t reach_samples = 0;
  std::size_t unreachable = 0;
  std::vector<LatticeVector> overlap_points;      // first few offenders
  std::vector<LatticeVector> unreachable_points;  // first few offenders
  bool passes() const { return overlaps == 0 && unreachable == 0; }
};

/// Sampled check that the translates of the cone by words <= budget have
/// disjoint interiors and cover sampled points of the positive cone. Points
/// are random integer vectors of sup-norm <= 50 drawn from `seed`.
TilingReport tiling_check(const PolyhedralCone& cone, const FGGroup& g, std::size_t samples, int word_budget,
                          std::uint64_t seed = 0);

struct ChamberWalk {
  LatticeVector image;
  std::vector<LatticeVector> word;  // roots reflected in, in order
  std::size_t roots_considered = 0;
};

/// Reflects x in sign-normalized roots delta with (x,delta) < 0, choosing the
/// lowest height then lexicographically smallest each step. Throws NotInCone,
/// OnWall, BudgetExhausted.
ChamberWalk chamber_walk(const ConeOrientation& o, const LatticeVector& x, const Integer& root_norm, int height,
                         std::size_t step_budget);

}  // namespace hyperlat
