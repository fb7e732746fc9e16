#pragma once

// Exact real-root isolation: Sturm chains over the rationals, bisection at
// rational points, multiplicities from the gcd(p, p') chain.

#include <vector>

#include "tilelab/poly.hpp"

namespace tilelab {

struct Root {
  Complex value;
  int multiplicity = 1;
  /// |p(value)| under Horner in double precision.
  double residual = 0;
};

struct RootSet {
  std::vector<Root> roots;

  /// Number of distinct roots.
  int tau() const noexcept { return static_cast<int>(roots.size()); }
  int total_multiplicity() const noexcept;
};

/// One distinct real root in the half-open interval (lo, hi], or exactly at lo
/// when lo == hi.
struct RealRootInterval {
  Rational lo;
  Rational hi;
  int multiplicity = 1;
};

/// Isolating intervals in ascending order, each refined to width <= `width`.
/// Rational roots always come back exact (lo == hi). Throws DomainError for
/// the zero polynomial.
std::vector<RealRootInterval> isolate_real_roots(const RationalPoly& p, const Rational& width);

/// Distinct real roots, ascending, bisected to intervals narrower than 1e-12.
RootSet oracle_real_roots(const RationalPoly& p);
/// Coefficients are converted to rationals exactly; nonzero imaginary parts
/// raise DomainError.
RootSet oracle_real_roots(const ComplexPoly& p);
RootSet oracle_real_roots(const AnyPoly& p);

/// Number of distinct complex roots: deg p - deg gcd(p, p').
int count_distinct_roots(const RationalPoly& p);
/// Number of distinct real roots by a single Sturm count.
int count_distinct_real_roots(const RationalPoly& p);

/// Rational roots counted with multiplicity.
int rational_root_count(const RationalPoly& p);

}  // namespace tilelab
