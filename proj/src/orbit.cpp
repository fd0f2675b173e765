#include "orbitprimes/orbit.hpp"

#include <utility>

#include "orbitprimes/errors.hpp"

namespace orbitprimes {

Orbit::Orbit(IntPoly poly, Int start, std::size_t max_bits)
    : poly_(std::move(poly)), start_(std::move(start)), max_bits_(max_bits) {
  terms_.push_back(start_);
}

std::span<const Int> Orbit::extend(std::size_t upto) {
  while (terms_.size() <= upto) {
    Int next = poly_.eval(terms_.back());
    if (mpz_sizeinbase(next.get_mpz_t(), 2) > max_bits_)
      throw DomainError(Errc::cap_exceeded,
                        "orbit term " + std::to_string(terms_.size()) +
                            " exceeds " + std::to_string(max_bits_) + " bits",
                        static_cast<long long>(terms_.size()));
    terms_.push_back(std::move(next));
  }
  return std::span<const Int>(terms_.data(), upto + 1);
}

const Int& Orbit::term(std::size_t n) {
  extend(n);
  return terms_[n];
}

bool is_zero_strictly_preperiodic(const IntPoly& poly) {
  Int x1 = poly.eval(Int(0));
  Int x2 = poly.eval(x1);
  Int x3 = poly.eval(x2);
  Int x4 = poly.eval(x3);
  return x2 == x4 && x2 != 0;
}

bool is_wandering(const IntPoly& poly, const Int& start) {
  int d = poly.degree();
  if (d < 1)
    throw DomainError(Errc::degree_zero, "constant maps have no wandering orbits");
  if (d == 1) {
    const Int& a = poly.coeff(1);
    const Int& b = poly.coeff(0);
    if (a == 1) return b != 0;
    if (a == -1) return false;  // x -> -x+b is an involution
    // |a| >= 2: the only recurrent point is the fixed point b/(1-a).
    return start * (1 - a) != b;
  }
  Orbit orb(poly, start);
  orb.extend(4);
  return orb.terms()[2] != orb.terms()[4];
}

std::optional<CycleInfo> detect_cycle(const IntPoly& poly, const Int& start,
                                      std::size_t horizon, std::size_t max_bits) {
  if (poly.degree() < 1)
    throw DomainError(Errc::degree_zero, "constant maps have no orbit dynamics");
  if (horizon < 5)
    throw DomainError(Errc::inadmissible_parameters, "detect_cycle horizon must be >= 5");
  // Integer orbits repeat with preperiod <= 2 and period <= 2, so any
  // repeat shows by index 4. Scanning two terms past that keeps the
  // bound independently checkable without risking a blowup of terms.
  std::size_t scan = std::min<std::size_t>(horizon, 7);
  Orbit orb(poly, start, max_bits);
  orb.extend(scan - 1);
  std::span<const Int> t = orb.terms();
  for (std::size_t j = 1; j < scan; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (t[i] == t[j]) {
        CycleInfo info;
        info.preperiod = i;
        info.period = j - i;
        info.cycle.assign(t.begin() + static_cast<std::ptrdiff_t>(i),
                          t.begin() + static_cast<std::ptrdiff_t>(j));
        return info;
      }
    }
  }
  return std::nullopt;
}

}  // namespace orbitprimes
