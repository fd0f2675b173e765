#ifndef ORBITPRIMES_COPRIME_HPP
#define ORBITPRIMES_COPRIME_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "orbitprimes/intpoly.hpp"

namespace orbitprimes {

enum class CoprimeRule {
  Preperiodic,  // divide x_n by gcd(x_n, ell(f)); indexed from 0
  Period1,      // f = x^r g: a_{n+1} = g(x_n)/gcd(g(x_n), g(0)); indexed from 1
  Period2,      // f^2 = x^r G: a_{n+2} = G(x_n)/gcd(G(x_n), G(0) f(0)); indexed from 2
};

const char* coprime_rule_name(CoprimeRule rule);

/**
 * A pairwise coprime sequence extracted from an orbit.
 *
 * terms[i] is a_{start_index + i}. Signs follow the orbit: the gcd is
 * taken on absolute values and the quotient keeps the sign of the
 * numerator. unit_indices lists the absolute indices n with |a_n| = 1;
 * those terms are coprime to everything and carry no prime.
 */
struct CoprimeSeq {
  CoprimeRule rule;
  IntPoly poly;
  Int start;
  std::size_t start_index = 0;
  std::vector<Int> terms;
  std::vector<std::size_t> unit_indices;

  // Divisor data actually used by the rule:
  Int ell = 0;        // Preperiodic
  unsigned r = 0;     // Period1/Period2: exponent in the x^r split
  IntPoly cofactor;   // Period1: g. Period2: G with f^2 = x^r G
  Int divisor = 0;    // Period1: g(0). Period2: G(0) * f(0)
};

// ell(f) = lcm(|f(0)|, |f^2(0)|). Requires both nonzero
// (DomainError(ZeroAtOrigin) otherwise).
Int ell(const IntPoly& poly);

// Requires a strictly preperiodic zero orbit and a wandering start.
// Produces a_0 .. a_{count-1}.
CoprimeSeq coprime_preperiodic(const IntPoly& poly, const Int& start,
                               std::size_t count);

// Splits poly = x^r g with g(0) != 0. Requires poly(0) = 0 and poly
// nonzero; throws DomainError(NonzeroConstantTerm) otherwise.
std::pair<unsigned, IntPoly> decompose_xr(const IntPoly& poly);

// Requires f(0) = 0 (fixed origin), nonconstant cofactor g, and a
// wandering start. Produces a_1 .. a_count.
CoprimeSeq coprime_period1(const IntPoly& poly, const Int& start,
                           std::size_t count);

// Requires f(0) != 0, f^2(0) = 0 (origin on a genuine 2-cycle), f not of
// the involution form a - x, and a wandering start.
// Produces a_2 .. a_{count+1}.
CoprimeSeq coprime_period2(const IntPoly& poly, const Int& start,
                           std::size_t count);

/**
 * A wandering orbit segment x_n -> x_{n+1} surviving the divisibility
 * constraints that eventually-unit normalized sequences must satisfy
 * for maps with zero orbit 0 -> a -> a:
 *
 *   x_n (a - x_n)       | x_{n+1} - a
 *   x_{n+1} (a - x_{n+1}) | a - d        for some divisor d of a
 *   x_n - x_{n+1}       | x_{n+1} - d
 *
 * with a, x_n, x_{n+1}, d nonzero and pairwise distinct.
 */
struct ExceptionalOrbit {
  long long a = 0;
  long long x0 = 0;  // x_n
  long long x1 = 0;  // x_{n+1}
  long long d = 0;

  bool operator==(const ExceptionalOrbit&) const = default;
  auto operator<=>(const ExceptionalOrbit&) const = default;
};

// Exhausts 1 <= a <= a_bound, |x| <= x_bound, d | a (either sign).
// Results are sorted by (a, x0, x1, d).
std::vector<ExceptionalOrbit> search_exceptional_orbits(long long a_bound,
                                                        long long x_bound);

}  // namespace orbitprimes

#endif
