#include "orbitprimes/interval.hpp"

#include <algorithm>
#include <utility>

#include "orbitprimes/errors.hpp"

namespace orbitprimes {

Interval::Interval(mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(mpfr_prec_t prec, bool) : prec_(prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
}

Interval::Interval(const Interval& other) : prec_(other.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : prec_(other.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
  if (this != &other) {
    mpfr_set_prec(lo_, other.prec_);
    mpfr_set_prec(hi_, other.prec_);
    prec_ = other.prec_;
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
  if (this != &other) {
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
    std::swap(prec_, other.prec_);
  }
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::from_int(const Int& v, mpfr_prec_t prec) {
  Interval out(prec, true);
  mpfr_set_z(out.lo_, v.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(out.hi_, v.get_mpz_t(), MPFR_RNDU);
  return out;
}

Interval Interval::from_rat(const Rat& v, mpfr_prec_t prec) {
  Interval out(prec, true);
  mpfr_set_q(out.lo_, v.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(out.hi_, v.get_mpq_t(), MPFR_RNDU);
  return out;
}

Interval Interval::from_endpoints(const Rat& lo, const Rat& hi, mpfr_prec_t prec) {
  if (lo > hi)
    throw DomainError(Errc::inadmissible_parameters, "interval endpoints out of order");
  Interval out(prec, true);
  mpfr_set_q(out.lo_, lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(out.hi_, hi.get_mpq_t(), MPFR_RNDU);
  return out;
}

Rat Interval::lo() const {
  Rat out;
  mpfr_get_q(out.get_mpq_t(), lo_);
  return out;
}

Rat Interval::hi() const {
  Rat out;
  mpfr_get_q(out.get_mpq_t(), hi_);
  return out;
}

bool Interval::contains(const Rat& v) const {
  return mpfr_cmp_q(lo_, v.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, v.get_mpq_t()) >= 0;
}

bool Interval::contains_zero() const {
  return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

bool Interval::is_positive() const { return mpfr_sgn(lo_) > 0; }

bool Interval::certainly_less(const Interval& rhs) const {
  return mpfr_cmp(hi_, rhs.lo_) < 0;
}

Interval Interval::operator+(const Interval& rhs) const {
  Interval out(std::max(prec_, rhs.prec_), true);
  mpfr_add(out.lo_, lo_, rhs.lo_, MPFR_RNDD);
  mpfr_add(out.hi_, hi_, rhs.hi_, MPFR_RNDU);
  return out;
}

Interval Interval::operator-(const Interval& rhs) const {
  Interval out(std::max(prec_, rhs.prec_), true);
  mpfr_sub(out.lo_, lo_, rhs.hi_, MPFR_RNDD);
  mpfr_sub(out.hi_, hi_, rhs.lo_, MPFR_RNDU);
  return out;
}

Interval Interval::operator*(const Interval& rhs) const {
  Interval out(std::max(prec_, rhs.prec_), true);
  const mpfr_srcptr a[2] = {lo_, hi_};
  const mpfr_srcptr b[2] = {rhs.lo_, rhs.hi_};
  mpfr_t cand;
  mpfr_init2(cand, out.prec_);
  bool first = true;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      mpfr_mul(cand, a[i], b[j], MPFR_RNDD);
      if (first || mpfr_cmp(cand, out.lo_) < 0) mpfr_set(out.lo_, cand, MPFR_RNDD);
      mpfr_mul(cand, a[i], b[j], MPFR_RNDU);
      if (first || mpfr_cmp(cand, out.hi_) > 0) mpfr_set(out.hi_, cand, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(cand);
  return out;
}

Interval Interval::operator/(const Interval& rhs) const {
  if (rhs.contains_zero())
    throw DomainError(Errc::inadmissible_parameters, "interval division by zero");
  Interval out(std::max(prec_, rhs.prec_), true);
  const mpfr_srcptr a[2] = {lo_, hi_};
  const mpfr_srcptr b[2] = {rhs.lo_, rhs.hi_};
  mpfr_t cand;
  mpfr_init2(cand, out.prec_);
  bool first = true;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      mpfr_div(cand, a[i], b[j], MPFR_RNDD);
      if (first || mpfr_cmp(cand, out.lo_) < 0) mpfr_set(out.lo_, cand, MPFR_RNDD);
      mpfr_div(cand, a[i], b[j], MPFR_RNDU);
      if (first || mpfr_cmp(cand, out.hi_) > 0) mpfr_set(out.hi_, cand, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(cand);
  return out;
}

Interval Interval::neg() const {
  Interval out(prec_, true);
  mpfr_neg(out.lo_, hi_, MPFR_RNDD);
  mpfr_neg(out.hi_, lo_, MPFR_RNDU);
  return out;
}

Interval Interval::abs() const {
  if (mpfr_sgn(lo_) >= 0) return *this;
  if (mpfr_sgn(hi_) <= 0) return neg();
  Interval out(prec_, true);
  mpfr_set_zero(out.lo_, 1);
  mpfr_t na;
  mpfr_init2(na, prec_);
  mpfr_neg(na, lo_, MPFR_RNDU);
  if (mpfr_cmp(na, hi_) > 0)
    mpfr_set(out.hi_, na, MPFR_RNDU);
  else
    mpfr_set(out.hi_, hi_, MPFR_RNDU);
  mpfr_clear(na);
  return out;
}

Interval Interval::pow(const Int& e) const {
  Interval out(prec_, true);
  if (e == 0) {
    mpfr_set_ui(out.lo_, 1, MPFR_RNDD);
    mpfr_set_ui(out.hi_, 1, MPFR_RNDU);
    return out;
  }
  if (e < 0) {
    if (contains_zero())
      throw DomainError(Errc::inadmissible_parameters,
                        "negative power of an interval containing zero");
    Interval inv = Interval::from_int(1, prec_) / *this;
    return inv.pow(-e);
  }
  bool even = mpz_even_p(e.get_mpz_t());
  if (!even || mpfr_sgn(lo_) >= 0) {
    // monotone on the whole line (odd) or on [0, inf) (even, lo >= 0)
    mpfr_pow_z(out.lo_, lo_, e.get_mpz_t(), MPFR_RNDD);
    mpfr_pow_z(out.hi_, hi_, e.get_mpz_t(), MPFR_RNDU);
    return out;
  }
  if (mpfr_sgn(hi_) <= 0) {
    // even power of a nonpositive interval: decreasing
    mpfr_pow_z(out.lo_, hi_, e.get_mpz_t(), MPFR_RNDD);
    mpfr_pow_z(out.hi_, lo_, e.get_mpz_t(), MPFR_RNDU);
    return out;
  }
  // even power straddling zero: [0, max(|lo|, |hi|)^e]
  Interval a = abs();
  mpfr_set_zero(out.lo_, 1);
  mpfr_pow_z(out.hi_, a.hi_, e.get_mpz_t(), MPFR_RNDU);
  return out;
}

Interval Interval::root(unsigned long n) const {
  if (n == 0)
    throw DomainError(Errc::inadmissible_parameters, "0th root");
  if (mpfr_sgn(lo_) < 0)
    throw DomainError(Errc::inadmissible_parameters, "root of a negative interval");
  Interval out(prec_, true);
  mpfr_rootn_ui(out.lo_, lo_, n, MPFR_RNDD);
  mpfr_rootn_ui(out.hi_, hi_, n, MPFR_RNDU);
  return out;
}

}  // namespace orbitprimes
