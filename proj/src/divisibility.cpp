#include "orbitprimes/divisibility.hpp"

#include <algorithm>
#include <numeric>

#include "orbitprimes/errors.hpp"
#include "orbitprimes/interval.hpp"
#include "orbitprimes/orbit.hpp"

namespace orbitprimes {

namespace {

Int int_gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

DivSeqReport strong_divisibility_on(const std::vector<Int>& x, std::size_t upto) {
  DivSeqReport report;
  for (std::size_t m = 1; m < upto; ++m) {
    for (std::size_t n = m + 1; n <= upto; ++n) {
      Int g = int_gcd(x[m], x[n]);
      const Int& expected = x[std::gcd(m, n)];
      ++report.checked_pairs;
      if (g != abs(expected))
        report.violations.push_back({m, n, g, expected});
    }
  }
  return report;
}

}  // namespace

const char* bound_status_name(BoundStatus s) {
  switch (s) {
    case BoundStatus::Pass: return "pass";
    case BoundStatus::Fail: return "fail";
    case BoundStatus::Unchecked: return "unchecked";
  }
  return "?";
}

DivSeqReport check_strong_divisibility(const IntPoly& poly, std::size_t upto) {
  if (upto < 1)
    throw DomainError(Errc::inadmissible_parameters, "upto must be >= 1");
  if (!is_wandering(poly, 0))
    throw DomainError(Errc::not_wandering, "orbit of 0 is not wandering");
  Orbit orb(poly, 0);
  std::span<const Int> x = orb.extend(upto);
  return strong_divisibility_on(std::vector<Int>(x.begin(), x.end()), upto);
}

DivSeqReport check_strong_divisibility(const std::vector<Int>& terms,
                                       std::size_t upto) {
  if (upto < 1 || terms.size() <= upto)
    throw DomainError(Errc::inadmissible_parameters,
                      "need terms through index upto >= 1");
  return strong_divisibility_on(terms, upto);
}

GcdReduceTrace gcd_reduce(const IntPoly& poly, std::size_t m, std::size_t n) {
  if (m < 1 || n < 1)
    throw DomainError(Errc::inadmissible_parameters, "indices must be >= 1");
  if (!is_wandering(poly, 0))
    throw DomainError(Errc::not_wandering, "orbit of 0 is not wandering");

  Orbit orb(poly, 0);
  std::span<const Int> x = orb.extend(std::max(m, n));

  GcdReduceTrace trace;
  std::size_t a = std::max(m, n), b = std::min(m, n);
  trace.chain.push_back({a, b, int_gcd(x[a], x[b])});
  while (a != 0 && b != 0) {
    if (a >= b)
      a %= b;
    else
      b %= a;
    ++trace.steps;
    trace.chain.push_back({a, b, int_gcd(x[a], x[b])});
  }
  trace.final_index = std::max(a, b);
  trace.final_term = x[trace.final_index];
  return trace;
}

DivSeqReport check_gcd_bound(const IntPoly& poly, const Int& start,
                             std::size_t upto, const TauEstimate& tau,
                             const TauEstimate& tau0) {
  if (poly.degree() < 2)
    throw DomainError(Errc::degree_too_small,
                      "the gcd bound is stated for degree >= 2 only");
  if (upto < 1)
    throw DomainError(Errc::inadmissible_parameters, "upto must be >= 1");
  if (!(tau.poly == poly) || tau.start != start || !(tau0.poly == poly))
    throw DomainError(Errc::inadmissible_parameters,
                      "estimates do not match this map and start");

  std::size_t horizon = std::max(tau.horizon, tau0.horizon);
  if (horizon > upto)
    throw DomainError(Errc::horizon_too_small,
                      "validity horizon " + std::to_string(horizon) +
                          " exceeds upto = " + std::to_string(upto));

  Orbit orb(poly, start);
  std::span<const Int> x = orb.extend(upto);

  Rat tau_star = std::max(tau.hi, tau0.hi);
  mpfr_prec_t prec = std::max(tau.precision_bits, tau0.precision_bits);
  Int d(poly.degree());

  DivSeqReport report;
  for (std::size_t m = 0; m < upto; ++m) {
    for (std::size_t n = m + 1; n <= upto; ++n) {
      BoundCheck row;
      row.m = m;
      row.n = n;
      row.gcd_value = int_gcd(x[m], x[n]);
      if (n < horizon) {
        ++report.unchecked_pairs;
        row.status = BoundStatus::Unchecked;
      } else {
        // tau_*^{d^{n/2}} = (tau_*^{d^n})^{1/2}, rounded up throughout
        Int e;
        mpz_pow_ui(e.get_mpz_t(), d.get_mpz_t(), n);
        Rat bound =
            2 * Interval::from_rat(tau_star, prec).pow(e).root(2).hi();
        row.bound = bound;
        ++report.checked_pairs;
        row.status =
            Rat(row.gcd_value) <= bound ? BoundStatus::Pass : BoundStatus::Fail;
      }
      report.bound_checks.push_back(row);
    }
  }
  return report;
}

}  // namespace orbitprimes
