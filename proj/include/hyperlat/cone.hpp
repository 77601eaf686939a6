#pragma once

// Rational polyhedral cones in lattice coordinates. Halfspaces are written
// with the lattice form, {x : (w,x) >= 0}; the Euclidean constraint row is Gw.

#include "hyperlat/hyperbolic.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hyperlat {

struct HalfSpace {
  LatticeVector normal;  // primitive, nonzero
};

enum class RayTag { InteriorPositive, RationalIsotropic, Other };

std::string_view to_string(RayTag t);

/// Generators of {x : A x >= 0}. `lines` spans the lineality space; `rays`
/// are primitive, lie in the Euclidean orthogonal complement of the lines,
/// and are sorted lexicographically.
struct ExtremeRays {
  std::vector<IntVector> rays;
  std::vector<IntVector> lines;
};

struct DoubleDescriptionOptions {
  std::size_t max_rank = 6;
};

/// Exact double description over the integers. Constraints are processed in
/// input order. Throws DimensionBudgetExceeded above options.max_rank.
ExtremeRays double_description(const std::vector<IntVector>& constraints, std::size_t dim,
                               const DoubleDescriptionOptions& options = {});

/// Projects rays into the orthogonal complement of `lines`, makes them
/// primitive, drops zeros and duplicates, and sorts.
std::vector<IntVector> canonical_rays(const std::vector<IntVector>& rays, const std::vector<IntVector>& lines);

class PolyhedralCone {
 public:
  /// An empty halfspace list is the whole space.
  PolyhedralCone(GramLattice lattice, std::vector<HalfSpace> halfspaces);

  const GramLattice& lattice() const { return lattice_; }
  const std::vector<HalfSpace>& halfspaces() const { return halfspaces_; }
  bool whole_space() const { return halfspaces_.empty(); }

  /// Euclidean rows G w.
  std::vector<IntVector> constraint_rows() const;

  bool contains(const LatticeVector& x) const;           // closed
  bool contains_interior(const LatticeVector& x) const;  // all inequalities strict

  bool has_vrep() const { return vrep_.has_value(); }
  const ExtremeRays& vrep() const { return *vrep_; }
  const std::vector<RayTag>& ray_tags() const { return tags_; }
  /// Lines are emitted as +/- ray pairs here, followed by the extreme rays.
  std::vector<IntVector> generating_rays() const;

  void set_vrep(ExtremeRays v);

 private:
  GramLattice lattice_;
  std::vector<HalfSpace> halfspaces_;
  std::optional<ExtremeRays> vrep_;
  std::vector<RayTag> tags_;
};

/// Computes and stores the V-representation with ray tags.
const ExtremeRays& extreme_rays(PolyhedralCone& cone, const DoubleDescriptionOptions& options = {});

/// Copy of the cone without duplicate or redundant halfspaces (requires or
/// computes the V-representation).
PolyhedralCone remove_redundant(PolyhedralCone cone, const DoubleDescriptionOptions& options = {});

struct PolytopeReport {
  bool passes = false;
  std::size_t sides = 0;
  bool nonempty = false;
  bool pointed = false;
  bool rays_in_closed_cone = false;
  bool zero_norm_rays_rational = true;
  bool positive_vertices_rational = true;
  std::vector<LatticeVector> cusp_candidates;
  std::vector<LatticeVector> interior_vertices;
  std::vector<std::string> notes;
};

PolytopeReport polytope_hypothesis_check(PolyhedralCone& cone, const ConeOrientation& o);

}  // namespace hyperlat
