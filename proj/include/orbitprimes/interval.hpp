#ifndef ORBITPRIMES_INTERVAL_HPP
#define ORBITPRIMES_INTERVAL_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include "orbitprimes/intpoly.hpp"

namespace orbitprimes {

/**
 * Closed interval [lo, hi] of MPFR floats with outward rounding.
 *
 * Every operation rounds the lower endpoint down and the upper endpoint
 * up, so the true real result of the corresponding exact operation is
 * always contained. Endpoints convert to exact dyadic rationals, which
 * is how certified bounds leave this class.
 */
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = 128);  // [0, 0]
  Interval(const Interval&);
  Interval(Interval&&) noexcept;
  Interval& operator=(const Interval&);
  Interval& operator=(Interval&&) noexcept;
  ~Interval();

  static Interval from_int(const Int& v, mpfr_prec_t prec);
  static Interval from_rat(const Rat& v, mpfr_prec_t prec);
  // [lo, hi] from exact rational endpoints; requires lo <= hi.
  static Interval from_endpoints(const Rat& lo, const Rat& hi, mpfr_prec_t prec);

  mpfr_prec_t precision() const { return prec_; }
  Rat lo() const;  // exact dyadic value of the lower endpoint
  Rat hi() const;

  bool contains(const Rat& v) const;
  bool contains_zero() const;
  bool is_positive() const;  // lo > 0
  // Certified strict comparison: every point of *this is below every
  // point of rhs.
  bool certainly_less(const Interval& rhs) const;

  Interval operator+(const Interval& rhs) const;
  Interval operator-(const Interval& rhs) const;
  Interval operator*(const Interval& rhs) const;
  Interval operator/(const Interval& rhs) const;  // rhs must not contain 0

  Interval neg() const;
  Interval abs() const;
  // Integer power; negative exponents require a sign-definite interval
  // excluding zero.
  Interval pow(const Int& e) const;
  // n-th root, n >= 1; requires lo >= 0.
  Interval root(unsigned long n) const;

 private:
  Interval(mpfr_prec_t prec, bool);  // uninitialized-endpoint helper

  mpfr_t lo_;
  mpfr_t hi_;
  mpfr_prec_t prec_;
};

}  // namespace orbitprimes

#endif
