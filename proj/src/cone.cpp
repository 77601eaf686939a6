#include "hyperlat/cone.hpp"

#include "hyperlat/error.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>

namespace hyperlat {

std::string_view to_string(RayTag t) {
  switch (t) {
    case RayTag::InteriorPositive: return "InteriorPositive";
    case RayTag::RationalIsotropic: return "RationalIsotropic";
    case RayTag::Other: return "Other";
  }
  return "Unknown";
}

namespace {

Integer dot(const IntVector& a, const IntVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IntVector combine(const Integer& ca, const IntVector& a, const Integer& cb, const IntVector& b) {
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = ca * a[i] + cb * b[i];
  return primitive(r);
}

using Bits = boost::dynamic_bitset<>;

Bits zero_set(const IntVector& r, const std::vector<IntVector>& processed) {
  Bits z(processed.size());
  for (std::size_t i = 0; i < processed.size(); ++i)
    if (dot(processed[i], r) == 0) z.set(i);
  return z;
}

std::size_t vector_rank(const std::vector<IntVector>& vs, std::size_t dim) {
  if (vs.empty()) return 0;
  RatMatrix m(vs.size(), dim);
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = vs[i][j];
  return rank(m);
}

}  // namespace

std::vector<IntVector> canonical_rays(const std::vector<IntVector>& rays, const std::vector<IntVector>& lines) {
  std::vector<IntVector> out;
  if (lines.empty()) {
    for (const auto& r : rays)
      if (!is_zero(r)) out.push_back(primitive(r));
  } else {
    // r - L (L^T L)^-1 L^T r, with L the matrix whose columns are the lines.
    const std::size_t d = lines.front().size(), k = lines.size();
    RatMatrix gram(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) gram(i, j) = dot(lines[i], lines[j]);
    const RatMatrix gi = *inverse(gram);
    for (const auto& r : rays) {
      RatVector lr(k);
      for (std::size_t i = 0; i < k; ++i) lr[i] = dot(lines[i], r);
      const RatVector c = gi * lr;
      RatVector p(d);
      for (std::size_t t = 0; t < d; ++t) {
        p[t] = r[t];
        for (std::size_t i = 0; i < k; ++i) p[t] -= c[i] * lines[i][t];
      }
      if (!is_zero(p)) out.push_back(primitive(p));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ExtremeRays double_description(const std::vector<IntVector>& constraints, std::size_t dim,
                               const DoubleDescriptionOptions& options) {
  if (dim > options.max_rank)
    throw Error(ErrorCode::DimensionBudgetExceeded,
                "double description limited to rank " + std::to_string(options.max_rank));
  std::vector<IntVector> lines, rays, processed;
  for (std::size_t i = 0; i < dim; ++i) {
    IntVector e(dim);
    e[i] = 1;
    lines.push_back(std::move(e));
  }
  for (const auto& a : constraints) {
    if (a.size() != dim) throw Error(ErrorCode::DimensionMismatch, "constraint length vs dimension");
    if (is_zero(a)) continue;
    auto pivot = std::find_if(lines.begin(), lines.end(), [&](const IntVector& l) { return dot(a, l) != 0; });
    if (pivot != lines.end()) {
      IntVector l = *pivot;
      lines.erase(pivot);
      Integer al = dot(a, l);
      if (al < 0) {
        for (auto& x : l) x = -x;
        al = -al;
      }
      for (auto& m : lines) m = combine(al, m, -dot(a, m), l);
      for (auto& r : rays) r = combine(al, r, -dot(a, r), l);
      rays.push_back(l);
      processed.push_back(a);
      continue;
    }
    std::vector<Integer> s;
    s.reserve(rays.size());
    for (const auto& r : rays) s.push_back(dot(a, r));
    std::vector<Bits> z;
    z.reserve(rays.size());
    for (const auto& r : rays) z.push_back(zero_set(r, processed));
    // A pair is adjacent in the pointed quotient only if it shares at least
    // (dim - lines - 2) tight constraints.
    const std::size_t pointed_dim = dim - lines.size();
    const std::size_t need = pointed_dim >= 2 ? pointed_dim - 2 : 0;

    std::vector<IntVector> next;
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (s[i] >= 0) next.push_back(rays[i]);
    for (std::size_t p = 0; p < rays.size(); ++p) {
      if (s[p] <= 0) continue;
      for (std::size_t n = 0; n < rays.size(); ++n) {
        if (s[n] >= 0) continue;
        const Bits common = z[p] & z[n];
        if (common.count() < need) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == n) continue;
          if (common.is_subset_of(z[r])) adjacent = false;
        }
        if (adjacent) next.push_back(combine(s[p], rays[n], -s[n], rays[p]));
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    rays = std::move(next);
    processed.push_back(a);
  }
  ExtremeRays out;
  out.rays = canonical_rays(rays, lines);
  std::sort(lines.begin(), lines.end());
  out.lines = std::move(lines);
  return out;
}

// ---------------------------------------------------------------------------

PolyhedralCone::PolyhedralCone(GramLattice lattice, std::vector<HalfSpace> halfspaces)
    : lattice_(std::move(lattice)), halfspaces_(std::move(halfspaces)) {
  for (auto& h : halfspaces_) {
    if (h.normal.size() != lattice_.rank()) throw Error(ErrorCode::DimensionMismatch, "halfspace normal length");
    if (is_zero(h.normal)) throw Error(ErrorCode::InvalidParameter, "halfspace normal must be nonzero");
    h.normal = primitive(h.normal);
  }
}

std::vector<IntVector> PolyhedralCone::constraint_rows() const {
  std::vector<IntVector> rows;
  rows.reserve(halfspaces_.size());
  for (const auto& h : halfspaces_) rows.push_back(lattice_.apply_gram(h.normal));
  return rows;
}

bool PolyhedralCone::contains(const LatticeVector& x) const {
  return std::all_of(halfspaces_.begin(), halfspaces_.end(),
                     [&](const HalfSpace& h) { return lattice_.inner(h.normal, x) >= 0; });
}

bool PolyhedralCone::contains_interior(const LatticeVector& x) const {
  return std::all_of(halfspaces_.begin(), halfspaces_.end(),
                     [&](const HalfSpace& h) { return lattice_.inner(h.normal, x) > 0; });
}

std::vector<IntVector> PolyhedralCone::generating_rays() const {
  std::vector<IntVector> out;
  if (!vrep_) return out;
  for (const auto& l : vrep_->lines) {
    out.push_back(l);
    IntVector m = l;
    for (auto& x : m) x = -x;
    out.push_back(std::move(m));
  }
  out.insert(out.end(), vrep_->rays.begin(), vrep_->rays.end());
  return out;
}

void PolyhedralCone::set_vrep(ExtremeRays v) {
  tags_.clear();
  for (const auto& r : v.rays) {
    const Integer n = lattice_.norm(r);
    tags_.push_back(n > 0 ? RayTag::InteriorPositive : (n == 0 ? RayTag::RationalIsotropic : RayTag::Other));
  }
  vrep_ = std::move(v);
}

const ExtremeRays& extreme_rays(PolyhedralCone& cone, const DoubleDescriptionOptions& options) {
  if (!cone.has_vrep()) cone.set_vrep(double_description(cone.constraint_rows(), cone.lattice().rank(), options));
  return cone.vrep();
}

namespace {

std::vector<std::size_t> facet_indices(PolyhedralCone& cone, const DoubleDescriptionOptions& options) {
  const auto& v = extreme_rays(cone, options);
  const std::size_t d = cone.lattice().rank();
  const auto rows = cone.constraint_rows();
  std::vector<std::size_t> keep;
  std::vector<IntVector> seen;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const IntVector w = primitive(rows[i]);
    if (std::find(seen.begin(), seen.end(), w) != seen.end()) continue;
    seen.push_back(w);
    if (v.rays.empty() && v.lines.empty()) {
      keep.push_back(i);
      continue;
    }
    std::vector<IntVector> tight = v.lines;
    for (const auto& r : v.rays)
      if (dot(w, r) == 0) tight.push_back(r);
    if (vector_rank(tight, d) + 1 == d) keep.push_back(i);
  }
  return keep;
}

}  // namespace

PolyhedralCone remove_redundant(PolyhedralCone cone, const DoubleDescriptionOptions& options) {
  const auto keep = facet_indices(cone, options);
  std::vector<HalfSpace> hs;
  for (auto i : keep) hs.push_back(cone.halfspaces()[i]);
  PolyhedralCone out(cone.lattice(), std::move(hs));
  out.set_vrep(cone.vrep());
  return out;
}

PolytopeReport polytope_hypothesis_check(PolyhedralCone& cone, const ConeOrientation& o) {
  PolytopeReport r;
  if (!(cone.lattice() == o.lattice())) throw Error(ErrorCode::DifferentAmbient, "cone and orientation differ");
  const auto& v = extreme_rays(cone);
  r.sides = facet_indices(cone, {}).size();
  r.nonempty = !v.rays.empty() || !v.lines.empty();
  r.pointed = v.lines.empty();
  r.rays_in_closed_cone = std::all_of(v.rays.begin(), v.rays.end(), [&](const IntVector& x) { return o.in_closure(x); });
  for (std::size_t i = 0; i < v.rays.size(); ++i) {
    if (cone.ray_tags()[i] == RayTag::RationalIsotropic) r.cusp_candidates.push_back(v.rays[i]);
    if (cone.ray_tags()[i] == RayTag::InteriorPositive) r.interior_vertices.push_back(v.rays[i]);
  }
  if (cone.whole_space()) r.notes.push_back("no halfspaces: the whole space is not a generalized polytope");
  if (!r.nonempty) r.notes.push_back("cone is {0}");
  if (!r.pointed) r.notes.push_back("cone contains a line");
  if (!r.rays_in_closed_cone) r.notes.push_back("some extreme ray leaves the closed positive cone");
  r.passes = !cone.whole_space() && r.nonempty && r.pointed && r.rays_in_closed_cone && r.zero_norm_rays_rational &&
             r.positive_vertices_rational;
  return r;
}

}  // namespace hyperlat
