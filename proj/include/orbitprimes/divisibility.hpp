#ifndef ORBITPRIMES_DIVISIBILITY_HPP
#define ORBITPRIMES_DIVISIBILITY_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "orbitprimes/growth.hpp"
#include "orbitprimes/intpoly.hpp"

namespace orbitprimes {

struct DivViolation {
  std::size_t m = 0, n = 0;
  Int gcd_value;  // gcd(x_m, x_n)
  Int expected;   // x_{gcd(m,n)}
};

enum class BoundStatus { Pass, Fail, Unchecked };

const char* bound_status_name(BoundStatus s);

struct BoundCheck {
  std::size_t m = 0, n = 0;
  Int gcd_value;
  std::optional<Rat> bound;  // rational upper estimate; empty when unchecked
  BoundStatus status = BoundStatus::Unchecked;
};

struct DivSeqReport {
  std::size_t checked_pairs = 0;
  std::size_t unchecked_pairs = 0;
  std::vector<DivViolation> violations;
  std::vector<BoundCheck> bound_checks;
};

// gcd(x_m, x_n) = |x_{gcd(m,n)}| for the orbit of 0, over all pairs
// 1 <= m < n <= upto. Index 0 is excluded: gcd against x_0 = 0
// degenerates.
DivSeqReport check_strong_divisibility(const IntPoly& poly, std::size_t upto);

// Same check against an externally supplied sequence; terms[k] plays
// x_k, so the vector must reach index upto. terms[0] is ignored.
DivSeqReport check_strong_divisibility(const std::vector<Int>& terms,
                                       std::size_t upto);

struct GcdStep {
  std::size_t a = 0, b = 0;
  Int value;  // gcd(x_a, x_b), constant along the chain
};

struct GcdReduceTrace {
  std::vector<GcdStep> chain;  // first entry is the input pair, larger index first
  std::size_t steps = 0;       // reductions performed = Euclid's step count on (m, n)
  std::size_t final_index = 0;
  Int final_term;  // x_{final_index}
};

// Euclid on indices: each step replaces the larger index by its
// remainder modulo the smaller, with gcd(x_a, x_b) unchanged, ending at
// index gcd(m, n).
GcdReduceTrace gcd_reduce(const IntPoly& poly, std::size_t m, std::size_t n);

/**
 * For the orbit of start, asserts gcd(x_m, x_n) <= 2 tau_*^{d^{n/2}}
 * over pairs 0 <= m < n <= upto, where tau_* = max of the two
 * estimates' upper ends. Pairs with n below the larger of the two
 * validity horizons are recorded as Unchecked, never as passes.
 * tau must estimate this very orbit; tau0 is normally the zero orbit's
 * estimate (pass tau again when the zero orbit is preperiodic, since a
 * bounded f^k(0) only slackens the bound). HorizonTooSmall when no pair
 * is checkable.
 */
DivSeqReport check_gcd_bound(const IntPoly& poly, const Int& start,
                             std::size_t upto, const TauEstimate& tau,
                             const TauEstimate& tau0);

}  // namespace orbitprimes

#endif
