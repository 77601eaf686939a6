#pragma once

// Dense univariate polynomials with exact coefficients, stored in ascending
// order of degree with no trailing zeros (the zero polynomial is empty).

#include "hyperlat/arith.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace hyperlat {

using IntPoly = std::vector<Integer>;
using RatPoly = std::vector<Rational>;

int degree(const IntPoly& p);
int degree(const RatPoly& p);

void trim(IntPoly& p);
void trim(RatPoly& p);

RatPoly add(const RatPoly& a, const RatPoly& b);
RatPoly sub(const RatPoly& a, const RatPoly& b);
RatPoly mul(const RatPoly& a, const RatPoly& b);
IntPoly mul(const IntPoly& a, const IntPoly& b);
/// Quotient and remainder over Q; b nonzero.
std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b);
/// a / b for monic b when the division is exact, else nullopt.
std::optional<IntPoly> divide_exact(const IntPoly& a, const IntPoly& b);
RatPoly derivative(const RatPoly& p);
/// Monic gcd over Q.
RatPoly gcd(RatPoly a, RatPoly b);
RatPoly monic(RatPoly p);

Rational evaluate(const RatPoly& p, const Rational& x);
int sign_at(const RatPoly& p, const Rational& x);

/// det(tI - M), computed exactly by Faddeev-LeVerrier.
IntPoly characteristic_polynomial(const IntMatrix& m);

std::uint64_t euler_phi(std::uint64_t n);
/// The k-th cyclotomic polynomial.
const IntPoly& cyclotomic(std::uint64_t k);

/// Divides out every cyclotomic factor of a monic integer polynomial.
/// Returns the cofactor and the cyclotomic orders removed (with multiplicity).
std::pair<IntPoly, std::vector<std::uint64_t>> strip_cyclotomic(IntPoly p);

/// Sturm chain of a squarefree polynomial.
std::vector<RatPoly> sturm_chain(const RatPoly& p);
/// Distinct real roots of p in the half-open interval (a, b].
int count_roots(const std::vector<RatPoly>& chain, const Rational& a, const Rational& b);
/// Distinct real roots of p in (a, +inf).
int count_roots_above(const std::vector<RatPoly>& chain, const Rational& a);

/// Upper bound on the absolute value of every root (Cauchy).
Rational root_bound(const RatPoly& p);

/// Narrows (lo, hi], which must isolate a simple root of p with a sign
/// change, until hi - lo <= width.
std::pair<Rational, Rational> refine_root(const RatPoly& p, Rational lo, Rational hi, const Rational& width);

}  // namespace hyperlat
