#ifndef ORBITPRIMES_ORBIT_HPP
#define ORBITPRIMES_ORBIT_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "orbitprimes/intpoly.hpp"

namespace orbitprimes {

// Orbit terms grow doubly exponentially; the bit cap keeps a runaway
// extend() from allocating without bound. 2^20 bits is ~315k digits.
inline constexpr std::size_t kDefaultMaxBits = 1048576;

/**
 * Forward orbit x_0, x_1, ... with x_{n+1} = f(x_n).
 *
 * Terms are computed by pointwise evaluation, never by materializing
 * f^n. Computed terms are cached; extend() is idempotent.
 */
class Orbit {
 public:
  Orbit(IntPoly poly, Int start, std::size_t max_bits = kDefaultMaxBits);

  // Ensures terms 0..upto exist and returns a view of them.
  // Throws DomainError(CapExceeded, index) naming the first term whose
  // size would exceed max_bits. The view is invalidated by the next
  // extend() call.
  std::span<const Int> extend(std::size_t upto);

  const Int& term(std::size_t n);  // extend(n) then return terms()[n]

  const IntPoly& poly() const { return poly_; }
  const Int& start() const { return start_; }
  std::size_t max_bits() const { return max_bits_; }
  std::span<const Int> terms() const { return terms_; }

 private:
  IntPoly poly_;
  Int start_;
  std::size_t max_bits_;
  std::vector<Int> terms_;
};

struct CycleInfo {
  std::size_t preperiod = 0;       // index of the first on-cycle term
  std::size_t period = 0;
  std::vector<Int> cycle;          // terms preperiod .. preperiod+period-1

  bool operator==(const CycleInfo&) const = default;
};

// True iff the orbit of 0 is eventually periodic without 0 itself lying
// on the cycle. Decidable from f^2(0) and f^4(0) alone: integer orbits
// that repeat do so with preperiod <= 2 and period <= 2.
bool is_zero_strictly_preperiodic(const IntPoly& poly);

// True iff the orbit of start never repeats. Degree 0 is rejected
// (DomainError(DegreeZero)). Degree 1 is decided in closed form; for
// degree >= 2 the x_2 != x_4 criterion is exact.
bool is_wandering(const IntPoly& poly, const Int& start);

// Scans the orbit for a repeat. Returns the cycle structure, or nullopt
// if the orbit is wandering. Any repeat of an integer orbit occurs by
// index 4, so the scan stops well before `horizon` terms materialize;
// horizon (>= 5) only caps how far a hypothetical scan may look.
std::optional<CycleInfo> detect_cycle(const IntPoly& poly, const Int& start,
                                      std::size_t horizon = 64,
                                      std::size_t max_bits = kDefaultMaxBits);

}  // namespace orbitprimes

#endif
