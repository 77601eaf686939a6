#include "hyperlat/lattice.hpp"

#include "hyperlat/error.hpp"

#include <mutex>
#include <optional>

namespace hyperlat {

Diagonalization diagonalize(const RatMatrix& symmetric) {
  const std::size_t n = symmetric.rows();
  RatMatrix a = symmetric;
  RatMatrix p = RatMatrix::identity(n);

  auto swap_index = [&](std::size_t i, std::size_t k) {
    if (i == k) return;
    for (std::size_t j = 0; j < n; ++j) std::swap(a(i, j), a(k, j));
    for (std::size_t j = 0; j < n; ++j) std::swap(a(j, i), a(j, k));
    for (std::size_t j = 0; j < n; ++j) std::swap(p(j, i), p(j, k));
  };
  // b_target += factor * b_source, applied as a congruence.
  auto add_basis = [&](std::size_t target, std::size_t source, const Rational& factor) {
    for (std::size_t j = 0; j < n; ++j) a(target, j) += factor * a(source, j);
    for (std::size_t j = 0; j < n; ++j) a(j, target) += factor * a(j, source);
    for (std::size_t j = 0; j < n; ++j) p(j, target) += factor * p(j, source);
  };

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = n;
    for (std::size_t i = k; i < n; ++i)
      if (a(i, i) != 0) {
        pivot = i;
        break;
      }
    if (pivot == n) {
      // Zero diagonal on the tail: b_i + b_j has norm 2 a_ij.
      for (std::size_t i = k; i < n && pivot == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (a(i, j) != 0) {
            add_basis(i, j, 1);
            pivot = i;
            break;
          }
      if (pivot == n) break;  // remaining block is zero
    }
    swap_index(pivot, k);
    for (std::size_t j = k + 1; j < n; ++j) {
      if (a(j, k) == 0) continue;
      add_basis(j, k, -a(j, k) / a(k, k));
    }
  }

  Diagonalization d{p, {}};
  d.diagonal.reserve(n);
  for (std::size_t i = 0; i < n; ++i) d.diagonal.push_back(a(i, i));
  return d;
}

GramLattice GramLattice::build(IntMatrix gram, std::vector<std::string> labels) {
  if (gram.rows() == 0 || !gram.square())
    throw Error(ErrorCode::InvalidParameter, "Gram matrix must be square and nonempty");
  for (std::size_t i = 0; i < gram.rows(); ++i)
    for (std::size_t j = i + 1; j < gram.cols(); ++j)
      if (gram(i, j) != gram(j, i))
        throw Error(ErrorCode::NotSymmetric,
                    "entry (" + std::to_string(i) + "," + std::to_string(j) + ") differs from its transpose");
  Integer det = hyperlat::determinant(gram);
  if (det == 0) throw Error(ErrorCode::Degenerate, "Gram matrix has determinant 0");
  if (!labels.empty() && labels.size() != gram.rows())
    throw Error(ErrorCode::DimensionMismatch, "label count does not match rank");
  auto s = std::make_shared<State>();
  s->gram = std::move(gram);
  s->det = std::move(det);
  s->labels = std::move(labels);
  return GramLattice(std::move(s));
}

Signature GramLattice::signature() const {
  std::call_once(state_->signature_once, [this] {
    const auto d = diagonalize(to_rational(state_->gram));
    Signature sig;
    for (const auto& x : d.diagonal) {
      if (x > 0) ++sig.positive;
      else if (x < 0) ++sig.negative;
    }
    state_->signature = sig;
  });
  return *state_->signature;
}

bool GramLattice::has_cached_signature() const { return state_->signature.has_value(); }

Integer GramLattice::inner(const LatticeVector& u, const LatticeVector& v) const {
  const std::size_t n = rank();
  if (u.size() != n || v.size() != n)
    throw Error(ErrorCode::DimensionMismatch,
                "vector lengths " + std::to_string(u.size()) + "," + std::to_string(v.size()) +
                    " vs rank " + std::to_string(n));
  Integer s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i] == 0) continue;
    Integer row = 0;
    for (std::size_t j = 0; j < n; ++j) row += gram()(i, j) * v[j];
    s += u[i] * row;
  }
  return s;
}

Rational GramLattice::inner(const RatVector& u, const RatVector& v) const {
  const std::size_t n = rank();
  if (u.size() != n || v.size() != n) throw Error(ErrorCode::DimensionMismatch, "vector length vs rank");
  Rational s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < n; ++j) row += gram()(i, j) * v[j];
    s += u[i] * row;
  }
  return s;
}

IntVector GramLattice::apply_gram(const LatticeVector& v) const {
  if (v.size() != rank()) throw Error(ErrorCode::DimensionMismatch, "vector length vs rank");
  return gram() * v;
}

Signature signature(const GramLattice& lattice) { return lattice.signature(); }

Integer inner_product(const GramLattice& lattice, const LatticeVector& u, const LatticeVector& v) {
  return lattice.inner(u, v);
}

GramLattice direct_sum(const GramLattice& a, const GramLattice& b) {
  const std::size_t n = a.rank(), m = b.rank();
  IntMatrix g(n + m, n + m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = a.gram()(i, j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g(n + i, n + j) = b.gram()(i, j);
  std::vector<std::string> labels;
  if (!a.labels().empty() && !b.labels().empty()) {
    labels = a.labels();
    labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  }
  return GramLattice::build(std::move(g), std::move(labels));
}

namespace {

// Cartan matrices in Bourbaki numbering.
IntMatrix cartan(StandardName name) {
  switch (name) {
    case StandardName::A2:
      return IntMatrix::from_rows({{2, -1}, {-1, 2}});
    case StandardName::D4:
      return IntMatrix::from_rows({{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}});
    case StandardName::E8: {
      IntMatrix m(8, 8);
      for (std::size_t i = 0; i < 8; ++i) m(i, i) = 2;
      auto link = [&](std::size_t i, std::size_t j) { m(i, j) = m(j, i) = -1; };
      link(0, 2);
      link(1, 3);
      link(2, 3);
      link(3, 4);
      link(4, 5);
      link(5, 6);
      link(6, 7);
      return m;
    }
    case StandardName::U:
      break;
  }
  throw Error(ErrorCode::InvalidParameter, "not a root lattice");
}

}  // namespace

GramLattice standard_lattice(StandardName name, RootLatticeSign sign) {
  if (name == StandardName::U) return GramLattice::build(IntMatrix::from_rows({{0, 1}, {1, 0}}));
  IntMatrix m = cartan(name);
  if (sign == RootLatticeSign::Negative)
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = -m(i, j);
  return GramLattice::build(std::move(m));
}

GramLattice rank_one(const Integer& m) {
  if (m == 0) throw Error(ErrorCode::InvalidParameter, "rank one lattice <0> is degenerate");
  IntMatrix g(1, 1);
  g(0, 0) = m;
  return GramLattice::build(std::move(g));
}

GramLattice diagonal_lattice(const std::vector<Integer>& entries) {
  IntMatrix g(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) g(i, i) = entries[i];
  return GramLattice::build(std::move(g));
}

}  // namespace hyperlat
