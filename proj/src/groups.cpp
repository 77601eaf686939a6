#include "hyperlat/groups.hpp"

#include "hyperlat/error.hpp"
#include "hyperlat/forms.hpp"
#include "hyperlat/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <unordered_map>

namespace hyperlat {

FGGroup FGGroup::make(std::vector<Isometry> generators) {
  if (generators.empty()) throw Error(ErrorCode::InvalidParameter, "a group needs at least one generator");
  for (const auto& g : generators)
    if (!g.orientation().same_ambient(generators.front().orientation()))
      throw Error(ErrorCode::DifferentAmbient, "generators act on different lattices or cones");
  return FGGroup(std::move(generators));
}

std::string word_string(const std::vector<int>& word) {
  if (word.empty()) return "e";
  std::string s;
  for (int l : word) {
    if (!s.empty()) s += ' ';
    s += "g" + std::to_string(std::abs(l));
    if (l < 0) s += "^-1";
  }
  return s;
}

std::vector<int> word_of(const std::vector<GroupElement>& elements, std::size_t index) {
  std::vector<int> w;
  for (std::size_t i = index; elements[i].letter != 0; i = elements[i].parent) w.push_back(elements[i].letter);
  std::reverse(w.begin(), w.end());
  return w;
}

std::vector<GroupElement> elements_up_to(const FGGroup& g, int length, const WordOptions& options) {
  if (length < 0) throw Error(ErrorCode::InvalidParameter, "word length must be >= 0");
  const std::size_t n = g.lattice().rank();
  const IntMatrix id = IntMatrix::identity(n);
  std::vector<std::pair<int, IntMatrix>> letters;
  for (std::size_t i = 0; i < g.generators().size(); ++i) {
    const auto& gen = g.generators()[i];
    if (gen.matrix() == id) continue;
    letters.emplace_back(static_cast<int>(i) + 1, gen.matrix());
    letters.emplace_back(-static_cast<int>(i) - 1, inverse(gen).matrix());
  }
  std::vector<GroupElement> out{{id, 0, 0, 0}};
  std::map<IntMatrix, std::size_t> seen{{id, 0}};
  std::size_t begin = 0, end = 1;
  for (int len = 1; len <= length && begin < end; ++len) {
    const std::size_t frontier = end - begin;
    std::vector<IntMatrix> products(frontier * letters.size());
    auto body = [&](std::size_t k) {
      const auto& e = out[begin + k / letters.size()];
      products[k] = e.matrix * letters[k % letters.size()].second;
    };
    if (products.size() >= 64) {
      parallel_for(products.size(), body);
    } else {
      for (std::size_t k = 0; k < products.size(); ++k) body(k);
    }
    for (std::size_t k = 0; k < products.size(); ++k) {
      if (seen.count(products[k])) continue;
      if (out.size() >= options.element_cap)
        throw Error(ErrorCode::BudgetExceeded, "more than " + std::to_string(options.element_cap) + " group elements");
      seen.emplace(products[k], out.size());
      const std::size_t parent = begin + k / letters.size();
      out.push_back({std::move(products[k]), parent, letters[k % letters.size()].first, out[parent].length + 1});
    }
    begin = end;
    end = out.size();
  }
  return out;
}

std::vector<HyperboloidPoint> orbit(const FGGroup& g, const HyperboloidPoint& x, int depth, const WordOptions& options) {
  if (!g.orientation().same_ambient(x.orientation()))
    throw Error(ErrorCode::DifferentAmbient, "point and group live on different cones");
  const auto elements = elements_up_to(g, depth, options);
  std::vector<LatticeVector> rays;
  rays.reserve(elements.size());
  for (const auto& e : elements) rays.push_back(primitive(e.matrix * x.ray()));
  std::sort(rays.begin(), rays.end());
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
  std::vector<HyperboloidPoint> pts;
  pts.reserve(rays.size());
  for (const auto& r : rays) pts.push_back(HyperboloidPoint::make(x.orientation(), r));
  return pts;
}

// ---------------------------------------------------------------------------

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

struct CellHash {
  std::size_t operator()(const std::vector<long long>& c) const {
    std::size_t h = 1469598103934665603ull;
    for (auto v : c) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
    return h;
  }
};

}  // namespace

LimitSample limit_points_sample(const FGGroup& g, const HyperboloidPoint& x, int depth, const WordOptions& options) {
  if (depth < 1) throw Error(ErrorCode::InvalidParameter, "depth must be >= 1");
  LimitSample s;
  const auto pts = orbit(g, x, depth, options);
  s.orbit_points = pts.size();
  std::vector<std::vector<double>> dirs;
  for (const auto& p : pts) {
    auto b = to_ball(p);
    double r = 0;
    for (double v : b) r += v * v;
    r = std::sqrt(r);
    if (r <= s.radius_threshold) continue;
    for (auto& v : b) v /= r;
    dirs.push_back(std::move(b));
  }
  s.near_boundary = dirs.size();
  const double tol = s.angular_tolerance;
  UnionFind uf(dirs.size());
  auto cell_of = [](const std::vector<double>& d, double size) {
    std::vector<long long> c;
    for (double v : d) c.push_back(static_cast<long long>(std::floor(v / size)));
    return c;
  };
  // Points sharing a microcell (side tol/10) are merged outright; only one
  // representative per microcell enters the pairwise linkage below.
  std::unordered_map<std::vector<long long>, std::size_t, CellHash> micro;
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    auto [it, fresh] = micro.emplace(cell_of(dirs[i], tol / 10), i);
    if (fresh) {
      reps.push_back(i);
    } else {
      uf.unite(it->second, i);
    }
  }
  std::unordered_map<std::vector<long long>, std::vector<std::size_t>, CellHash> grid;
  for (auto i : reps) grid[cell_of(dirs[i], tol)].push_back(i);
  for (auto i : reps) {
    const auto base = cell_of(dirs[i], tol);
    const std::size_t dim = base.size();
    std::vector<long long> off(dim, -1);
    while (true) {
      std::vector<long long> c = base;
      for (std::size_t k = 0; k < dim; ++k) c[k] += off[k];
      if (auto it = grid.find(c); it != grid.end())
        for (auto j : it->second) {
          if (j <= i || uf.find(i) == uf.find(j)) continue;
          double d2 = 0;
          for (std::size_t k = 0; k < dim; ++k) d2 += (dirs[i][k] - dirs[j][k]) * (dirs[i][k] - dirs[j][k]);
          if (std::sqrt(d2) < tol) uf.unite(i, j);
        }
      std::size_t k = 0;
      while (k < dim && off[k] == 1) off[k++] = -1;
      if (k == dim) break;
      ++off[k];
    }
  }
  std::map<std::size_t, LimitCluster> roots;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    auto& c = roots[uf.find(i)];
    if (c.direction.empty()) c.direction.assign(dirs[i].size(), 0.0);
    for (std::size_t k = 0; k < dirs[i].size(); ++k) c.direction[k] += dirs[i][k];
    ++c.size;
  }
  for (auto& [_, c] : roots) {
    double r = 0;
    for (double v : c.direction) r += v * v;
    r = std::sqrt(r);
    for (auto& v : c.direction) v /= r;
    s.clusters.push_back(std::move(c));
  }
  std::sort(s.clusters.begin(), s.clusters.end(),
            [](const LimitCluster& a, const LimitCluster& b) { return a.direction < b.direction; });
  return s;
}

// ---------------------------------------------------------------------------

std::string_view to_string(ElementaryType t) {
  switch (t) {
    case ElementaryType::EllipticType: return "EllipticType";
    case ElementaryType::ParabolicType: return "ParabolicType";
    case ElementaryType::LoxodromicType: return "LoxodromicType";
    case ElementaryType::NotDetectedElementary: return "NotDetectedElementary";
  }
  return "Unknown";
}

namespace {

using Elements = std::vector<NumberField::Element>;

Elements apply_over_field(const NumberField& k, const IntMatrix& m, const Elements& v) {
  Elements out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (m(i, j) == 0 || v[j].empty()) continue;
      RatPoly t = v[j];
      for (auto& c : t) c *= Rational(m(i, j));
      out[i] = add(out[i], t);
    }
  for (auto& e : out) e = k.reduce(e);
  return out;
}

bool proportional(const NumberField& k, const Elements& a, const Elements& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (!sub(k.mul(a[i], b[j]), k.mul(a[j], b[i])).empty()) return false;
  return true;
}

bool preserves_axis(const FGGroup& g, const Isometry& lox) {
  const auto& c = classify(lox);
  const NumberField k(to_rational(c.lambda_minpoly), c.lambda_lo, c.lambda_hi);
  const auto rays = fixed_boundary_points(lox);
  for (const auto& h : g.generators()) {
    const auto image = apply_over_field(k, h.matrix(), rays[0].vector.coords);
    if (!proportional(k, image, rays[0].vector.coords) && !proportional(k, image, rays[1].vector.coords)) return false;
  }
  return true;
}

}  // namespace

ElementaryType elementary_type(const FGGroup& g, int budget) {
  if (budget < 1) throw Error(ErrorCode::InvalidParameter, "budget must be >= 1");
  for (const auto& gen : g.generators())
    if (classify(gen).kind == IsometryKind::Loxodromic)
      return preserves_axis(g, gen) ? ElementaryType::LoxodromicType : ElementaryType::NotDetectedElementary;

  // Common fixed subspace of all generators.
  const auto& l = g.lattice();
  const std::size_t n = l.rank();
  RatMatrix stacked(n * g.generators().size(), n);
  for (std::size_t t = 0; t < g.generators().size(); ++t)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        stacked(t * n + i, j) = Rational(g.generators()[t].matrix()(i, j)) - (i == j ? 1 : 0);
  const auto fixed = kernel(stacked);
  if (fixed.empty()) return ElementaryType::NotDetectedElementary;
  RatMatrix restricted(fixed.size(), fixed.size());
  for (std::size_t i = 0; i < fixed.size(); ++i)
    for (std::size_t j = 0; j < fixed.size(); ++j) restricted(i, j) = l.inner(fixed[i], fixed[j]);
  const auto d = diagonalize(restricted);
  const bool has_positive = std::any_of(d.diagonal.begin(), d.diagonal.end(), [](const Rational& x) { return x > 0; });
  if (has_positive) return ElementaryType::EllipticType;
  if (kernel(restricted).size() != 1) return ElementaryType::NotDetectedElementary;
  // A unique common isotropic fixed ray. A discrete group fixing a boundary
  // point has no loxodromic elements; scan short words as a consistency check.
  for (const auto& e : elements_up_to(g, budget))
    if (classify(make_isometry(g.orientation(), e.matrix)).kind == IsometryKind::Loxodromic)
      return ElementaryType::NotDetectedElementary;
  return ElementaryType::ParabolicType;
}

// ---------------------------------------------------------------------------

HalfSpace dirichlet_halfspace(const HyperboloidPoint& h, const Isometry& g) {
  if (!g.orientation().same_ambient(h.orientation()))
    throw Error(ErrorCode::DifferentAmbient, "point and isometry live on different cones");
  // d(h,x) <= d(h,gx) iff (h,x) <= (g^-1 h, x); both rays have the same norm.
  const LatticeVector back = inverse(g).apply(h.ray());
  LatticeVector w(back.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = back[i] - h.ray()[i];
  if (is_zero(w)) throw Error(ErrorCode::FixedBasepoint, "isometry fixes the basepoint");
  return HalfSpace{primitive(w)};
}

DirichletDomain dirichlet_domain(const FGGroup& g, const HyperboloidPoint& h, int word_budget,
                                 const WordOptions& options) {
  if (!g.orientation().same_ambient(h.orientation()))
    throw Error(ErrorCode::DifferentAmbient, "point and group live on different cones");
  const IntMatrix id = IntMatrix::identity(g.lattice().rank());
  for (const auto& gen : g.generators())
    if (!(gen.matrix() == id) && gen.apply(h.ray()) == h.ray())
      throw Error(ErrorCode::FixedBasepoint, "a generator fixes the basepoint; choose another");
  DirichletDomain dom{PolyhedralCone(g.lattice(), {}), word_budget, 0};
  std::vector<HalfSpace> hs;
  std::vector<LatticeVector> seen;
  // The element set is closed under inversion, so e.h - h runs over the
  // same normals as e^-1.h - h.
  for (const auto& e : elements_up_to(g, word_budget, options)) {
    const LatticeVector img = e.matrix * h.ray();
    if (img == h.ray()) continue;
    ++dom.elements_used;
    LatticeVector w(img.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = img[i] - h.ray()[i];
    w = primitive(w);
    if (std::find(seen.begin(), seen.end(), w) != seen.end()) continue;
    seen.push_back(w);
    hs.push_back(HalfSpace{w});
  }
  PolyhedralCone cone(g.lattice(), std::move(hs));
  if (!cone.whole_space()) cone = remove_redundant(std::move(cone));
  else extreme_rays(cone);
  dom.cone = std::move(cone);
  return dom;
}

// ---------------------------------------------------------------------------

TilingReport tiling_check(const PolyhedralCone& cone, const FGGroup& g, std::size_t samples, int word_budget,
                          std::uint64_t seed) {
  if (!(cone.lattice() == g.lattice())) throw Error(ErrorCode::DifferentAmbient, "cone and group lattices differ");
  const auto& o = g.orientation();
  const std::size_t n = g.lattice().rank();
  const auto elements = elements_up_to(g, word_budget);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coord(-50, 50);
  auto draw = [&] {
    LatticeVector v(n);
    for (auto& x : v) x = coord(rng);
    return v;
  };
  const std::size_t max_attempts = samples * 10000 + 1000;

  TilingReport r;
  r.samples = samples;
  std::vector<LatticeVector> interior, reach;
  for (std::size_t a = 0; a < max_attempts && interior.size() < samples; ++a) {
    auto v = draw();
    if (o.contains(v) && cone.contains_interior(v)) interior.push_back(std::move(v));
  }
  for (std::size_t a = 0; a < max_attempts && reach.size() < samples; ++a) {
    auto v = draw();
    if (o.contains(v)) reach.push_back(std::move(v));
  }
  r.interior_samples = interior.size();
  r.reach_samples = reach.size();

  std::vector<char> overlap(interior.size(), 0), reached(reach.size(), 0);
  parallel_for(interior.size(), [&](std::size_t i) {
    for (std::size_t e = 1; e < elements.size(); ++e)
      if (cone.contains_interior(elements[e].matrix * interior[i])) {
        overlap[i] = 1;
        return;
      }
  });
  parallel_for(reach.size(), [&](std::size_t i) {
    for (const auto& e : elements)
      if (cone.contains(e.matrix * reach[i])) {
        reached[i] = 1;
        return;
      }
  });
  constexpr std::size_t kKeep = 5;
  for (std::size_t i = 0; i < interior.size(); ++i)
    if (overlap[i] && r.overlaps++ < kKeep) r.overlap_points.push_back(interior[i]);
  for (std::size_t i = 0; i < reach.size(); ++i)
    if (!reached[i] && r.unreachable++ < kKeep) r.unreachable_points.push_back(reach[i]);
  return r;
}

// ---------------------------------------------------------------------------

ChamberWalk chamber_walk(const ConeOrientation& o, const LatticeVector& x, const Integer& root_norm, int height,
                         std::size_t step_budget) {
  const auto& l = o.lattice();
  if (x.size() != l.rank()) throw Error(ErrorCode::DimensionMismatch, "point length vs rank");
  if (!o.contains(x)) throw Error(ErrorCode::NotInCone, "chamber walk starts inside the positive cone");
  if (root_norm >= 0) throw Error(ErrorCode::InvalidParameter, "root norm must be negative");
  auto roots = enumerate_norm_vectors(l, root_norm, height);
  std::stable_sort(roots.begin(), roots.end(),
                   [](const LatticeVector& a, const LatticeVector& b) { return height_less(a, b); });
  ChamberWalk w;
  w.image = x;
  w.roots_considered = roots.size();
  for (std::size_t step = 0;; ++step) {
    const LatticeVector* chosen = nullptr;
    Integer pairing;
    for (const auto& d : roots) {
      const Integer p = l.inner(w.image, d);
      if (p == 0)
        throw Error(ErrorCode::OnWall, "point lies on the wall of root " + vector_string(d));
      if (p < 0 && !chosen) {
        chosen = &d;
        pairing = p;
      }
    }
    if (!chosen) return w;
    if (step == step_budget) throw Error(ErrorCode::BudgetExhausted, "chamber walk exceeded its step budget");
    // s(x) = x - 2 (x,d)/(d,d) d
    const Integer num = 2 * pairing;
    if (num % root_norm != 0) throw Error(ErrorCode::NonIntegralResult, "reflection is not integral on this point");
    const Integer c = num / root_norm;
    for (std::size_t i = 0; i < w.image.size(); ++i) w.image[i] -= c * (*chosen)[i];
    w.word.push_back(*chosen);
  }
}

}  // namespace hyperlat
